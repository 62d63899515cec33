"""Instance checks for the identities and inequalities behind the bound
families, plus deterministic grid sweeps that aggregate them.

Every check compares exact integers or exact rationals; a failing check
returns a verdict carrying a complete witness (all inputs and both sides
of the comparison). Sweeps iterate a coprime-filtered parameter grid and
report rows in canonical lexicographic order regardless of how many
worker processes ran them.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Any

from .bounds import BoundFamily, BoundParams, BoundReport, check_bound, hypothesis_threshold, required_params
from .engine import IncrementalState, LcmRecord, lcm_prefix, record
from .numeric import max_power_dividing, max_power_dividing_factorial
from .progression import PrefixWindow, Progression


class CheckId(str, Enum):
    """Instance checks, with their CLI tokens as values."""

    L2_1 = "l21"            # scaled product divides the prefix LCM
    L2_2 = "l22"            # prefix_lcm >= suffix_lcm >= scaled_product >= u0*(r+1)**n
    L2_3 = "l23"            # n - k_n > e*r (strict)
    INEQ_2_3 = "ineq23"     # n - k_n >= (n-1)*r/(r+1)
    INEQ_2_5 = "ineq25"     # (l*alpha*r - 1)/(r+1) > e
    DIV_FACTORIAL = "divfact"  # r**e divides (n - k_n)!
    DIV_COFACTOR = "divcof"    # r**e divides the anchored cofactor


# Checks that take the exponent parameters (a, l, alpha).
PARAM_CHECKS = frozenset({CheckId.L2_3, CheckId.INEQ_2_5, CheckId.DIV_FACTORIAL, CheckId.DIV_COFACTOR})


@dataclass(frozen=True)
class LemmaVerdict:
    """One instance check outcome.

    Filtered verdicts (hypothesis not satisfied) are vacuous: ok is True
    and no comparison was made. Failing verdicts carry a reproducible
    witness string with the exact values of both sides.
    """

    check: CheckId
    instance: dict[str, Any]
    ok: bool
    filtered: bool = False
    witness: str | None = None


def _ok(check: CheckId, instance: dict[str, Any]) -> LemmaVerdict:
    return LemmaVerdict(check, instance, ok=True)


def _fail(check: CheckId, instance: dict[str, Any], witness: str) -> LemmaVerdict:
    return LemmaVerdict(check, instance, ok=False, witness=witness)


def _filtered(check: CheckId, instance: dict[str, Any]) -> LemmaVerdict:
    return LemmaVerdict(check, instance, ok=True, filtered=True)


def _margin_hypothesis(prog: Progression, a: int, l: int, alpha: int, n: int) -> bool:
    # Side conditions shared by the margin/divisibility checks (and the
    # `new` bound family): a, l >= 2, alpha >= a, r >= max(a, l-1), n >= l*alpha*r.
    return (
        a >= 2
        and l >= 2
        and alpha >= a
        and prog.r >= max(a, l - 1)
        and n >= l * alpha * prog.r
    )


def _step_exp(a: int, l: int, alpha: int) -> int:
    return (l - 1) * alpha + a - l


def verify_integrality(prog: Progression, n: int, prefix_lcm_value: int | None = None) -> LemmaVerdict:
    """Check that the full-window scaled product divides the prefix LCM."""
    inst = {"u0": prog.u0, "r": prog.r, "n": n}
    lp = lcm_prefix(prog, n) if prefix_lcm_value is None else prefix_lcm_value
    c = PrefixWindow(prog, n, 0).scaled_product()
    q = Fraction(lp) / c
    if q.denominator == 1 and q.numerator >= 1:
        return _ok(CheckId.L2_1, inst)
    return _fail(CheckId.L2_1, inst, f"prefix_lcm={lp} over scaled_product={c} gives {q}, not a positive integer")


def verify_chain(prog: Progression, n: int, rec: LcmRecord | None = None) -> LemmaVerdict:
    """Check prefix_lcm >= suffix_lcm >= scaled_product >= u0*(r+1)**n, all exact."""
    inst = {"u0": prog.u0, "r": prog.r, "n": n}
    if rec is None:
        rec = record(prog, n)
    if not rec.prefix_lcm >= rec.suffix_lcm:
        return _fail(CheckId.L2_2, inst, f"prefix_lcm={rec.prefix_lcm} < suffix_lcm={rec.suffix_lcm}")
    if not rec.suffix_lcm >= rec.scaled_product:
        return _fail(CheckId.L2_2, inst, f"suffix_lcm={rec.suffix_lcm} < scaled_product={rec.scaled_product}")
    floor_val = prog.u0 * (prog.r + 1) ** n
    if not rec.scaled_product >= floor_val:
        return _fail(CheckId.L2_2, inst, f"scaled_product={rec.scaled_product} < u0*(r+1)^n={floor_val}")
    return _ok(CheckId.L2_2, inst)


def verify_window_margin(prog: Progression, a: int, l: int, alpha: int, n: int) -> LemmaVerdict:
    """Check n - k_n > e*r strictly, where e = (l-1)*alpha + a - l."""
    inst = {"u0": prog.u0, "r": prog.r, "n": n, "a": a, "l": l, "alpha": alpha}
    if not _margin_hypothesis(prog, a, l, alpha, n):
        return _filtered(CheckId.L2_3, inst)
    lhs = n - prog.shift_index(n)
    rhs = _step_exp(a, l, alpha) * prog.r
    if lhs > rhs:
        return _ok(CheckId.L2_3, inst)
    return _fail(CheckId.L2_3, inst, f"n - k_n = {lhs} is not > e*r = {rhs}")


def verify_shift_floor(prog: Progression, n: int) -> LemmaVerdict:
    """Check n - k_n >= (n-1)*r/(r+1) as an exact rational comparison."""
    inst = {"u0": prog.u0, "r": prog.r, "n": n}
    lhs = n - prog.shift_index(n)
    rhs = Fraction((n - 1) * prog.r, prog.r + 1)
    if lhs >= rhs:
        return _ok(CheckId.INEQ_2_3, inst)
    return _fail(CheckId.INEQ_2_3, inst, f"n - k_n = {lhs} is not >= (n-1)r/(r+1) = {rhs}")


def verify_margin_fraction(a: int, l: int, alpha: int, r: int) -> LemmaVerdict:
    """Check (l*alpha*r - 1)/(r+1) > e in cross-multiplied integer form."""
    inst = {"r": r, "a": a, "l": l, "alpha": alpha}
    if not (a >= 2 and l >= 2 and alpha >= a and r >= max(a, l - 1)):
        return _filtered(CheckId.INEQ_2_5, inst)
    lhs = l * alpha * r - 1
    rhs = _step_exp(a, l, alpha) * (r + 1)
    if lhs > rhs:
        return _ok(CheckId.INEQ_2_5, inst)
    return _fail(CheckId.INEQ_2_5, inst, f"l*alpha*r - 1 = {lhs} is not > e*(r+1) = {rhs}")


def verify_factorial_divisibility(prog: Progression, a: int, l: int, alpha: int, n: int) -> LemmaVerdict:
    """Check that (n - k_n)! absorbs r**e, via factorial valuations."""
    inst = {"u0": prog.u0, "r": prog.r, "n": n, "a": a, "l": l, "alpha": alpha}
    if prog.r == 1:
        return _ok(CheckId.DIV_FACTORIAL, inst)  # 1**e divides everything
    if not _margin_hypothesis(prog, a, l, alpha, n):
        return _filtered(CheckId.DIV_FACTORIAL, inst)
    e = _step_exp(a, l, alpha)
    v = max_power_dividing_factorial(prog.r, n - prog.shift_index(n))
    if v >= e:
        return _ok(CheckId.DIV_FACTORIAL, inst)
    return _fail(CheckId.DIV_FACTORIAL, inst, f"max power of r={prog.r} in (n-k_n)! is {v}, below e={e}")


def verify_cofactor_divisibility(
    prog: Progression, a: int, l: int, alpha: int, n: int, rec: LcmRecord | None = None
) -> LemmaVerdict:
    """Check that the anchored cofactor absorbs r**e.

    Propagates IntegralityError from the cofactor computation (that would
    itself be a counterexample and must abort the run).
    """
    inst = {"u0": prog.u0, "r": prog.r, "n": n, "a": a, "l": l, "alpha": alpha}
    if prog.r == 1:
        return _ok(CheckId.DIV_COFACTOR, inst)
    if not _margin_hypothesis(prog, a, l, alpha, n):
        return _filtered(CheckId.DIV_COFACTOR, inst)
    if rec is None:
        rec = record(prog, n)
    e = _step_exp(a, l, alpha)
    v = max_power_dividing(prog.r, rec.cofactor)
    if v >= e:
        return _ok(CheckId.DIV_COFACTOR, inst)
    return _fail(CheckId.DIV_COFACTOR, inst, f"max power of r={prog.r} in cofactor={rec.cofactor} is {v}, below e={e}")


# ---------------------------------------------------------------------------
# Grid sweeps
# ---------------------------------------------------------------------------

Range = tuple[int, int]


class SweepConfigError(ValueError):
    """Malformed sweep configuration."""


_RANGE_MINS = {"u0": 1, "r": 1, "n": 1, "a": 2, "l": 2, "alpha": 1}


@dataclass(frozen=True)
class SweepConfig:
    """Inclusive integer ranges plus the families and checks to run.

    Exactly one of n_range / n_window must be set. With n_window = W,
    each (family-or-check, params, progression) combination covers n from
    its smallest hypothesis-satisfying value T to T + W; combinations
    whose hypothesis no n can satisfy contribute no cells. Checks without
    exponent parameters use T = 1.

    Non-coprime (u0, r) pairs are skipped and counted separately; they
    violate the standing coprimality assumption, not a hypothesis.
    """

    u0_range: Range
    r_range: Range
    n_range: Range | None = None
    n_window: int | None = None
    a_range: Range | None = None
    l_range: Range | None = None
    alpha_range: Range | None = None
    families: tuple[BoundFamily, ...] = ()
    checks: tuple[CheckId, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "families", tuple(self.families))
        object.__setattr__(self, "checks", tuple(self.checks))
        for name in ("u0", "r", "n", "a", "l", "alpha"):
            rng = getattr(self, f"{name}_range")
            if rng is None:
                continue
            object.__setattr__(self, f"{name}_range", (int(rng[0]), int(rng[1])))
            lo, hi = getattr(self, f"{name}_range")
            if lo > hi:
                raise SweepConfigError(f"{name}_range is empty: {lo}..{hi}")
            if lo < _RANGE_MINS[name]:
                raise SweepConfigError(f"{name}_range must start at {_RANGE_MINS[name]} or above, got {lo}")
        if (self.n_range is None) == (self.n_window is None):
            raise SweepConfigError("exactly one of n_range and n_window is required")
        if self.n_window is not None and self.n_window < 0:
            raise SweepConfigError(f"n_window must be >= 0, got {self.n_window}")
        needed: set[str] = set()
        for fam in self.families:
            needed |= required_params(fam)
        if any(c in PARAM_CHECKS for c in self.checks):
            needed |= {"a", "l", "alpha"}
        for name in sorted(needed):
            if getattr(self, f"{name}_range") is None:
                raise SweepConfigError(f"{name}_range is required by the requested families/checks")


@dataclass(frozen=True)
class SweepRow:
    """One output row: a cell, its kind (family or check token), and its outcome."""

    u0: int
    r: int
    n: int
    kind: str
    a: int | None
    l: int | None
    alpha: int | None
    hypothesis_ok: bool
    holds: bool | None
    bound: int | None
    lcm: int | None
    gap_log: float | None
    witness: str | None = None

    def sort_key(self) -> tuple:
        return (self.u0, self.r, self.n, self.kind, self.a or 0, self.l or 0, self.alpha or 0)


@dataclass
class SweepOutcome:
    """Aggregated sweep results, rows in canonical sorted order.

    total_cells == hypothesis_filtered + verified + failed on every run;
    min_gap is the verified bound report with the smallest gap_log (ties
    resolved by canonical cell order), or None when no bound was verified.
    """

    total_cells: int
    hypothesis_filtered: int
    verified: int
    failed: int
    coprime_skipped: int
    rows: list[SweepRow] = field(repr=False)
    reports: list[BoundReport] = field(repr=False)
    verdicts: list[LemmaVerdict] = field(repr=False)
    min_gap: BoundReport | None = None


@dataclass(frozen=True)
class _Combo:
    kind: str
    params: BoundParams | None  # set for bound-family combos
    check: CheckId | None       # set for check combos
    a: int | None
    l: int | None
    alpha: int | None


def _span(rng: Range) -> range:
    return range(rng[0], rng[1] + 1)


def _combos(config: SweepConfig) -> list[_Combo]:
    out: list[_Combo] = []
    for fam in config.families:
        need = required_params(fam)
        for a in _span(config.a_range) if "a" in need else (None,):
            for l in _span(config.l_range) if "l" in need else (None,):
                for alpha in _span(config.alpha_range) if "alpha" in need else (None,):
                    params = BoundParams(fam, alpha=alpha, a=a, l=l)
                    out.append(_Combo(fam.value, params, None, a, l, alpha))
    for check in config.checks:
        if check in PARAM_CHECKS:
            for a in _span(config.a_range):
                for l in _span(config.l_range):
                    for alpha in _span(config.alpha_range):
                        out.append(_Combo(check.value, None, check, a, l, alpha))
        else:
            out.append(_Combo(check.value, None, check, None, None, None))
    return out


def _n_values(combo: _Combo, prog: Progression, config: SweepConfig) -> range:
    if config.n_range is not None:
        return _span(config.n_range)
    if combo.params is not None:
        start = hypothesis_threshold(combo.params, prog)
    elif combo.check in PARAM_CHECKS:
        # Same satisfiability conditions as the margin hypothesis, minus n.
        if combo.alpha >= combo.a and prog.r >= max(combo.a, combo.l - 1):
            start = combo.l * combo.alpha * prog.r
        else:
            start = None
    else:
        start = 1
    if start is None:
        return range(0)
    return range(start, start + config.n_window + 1)


def _cell(u0: int, r: int, n: int, combo: _Combo) -> dict[str, Any]:
    cell: dict[str, Any] = {"u0": u0, "r": r, "n": n}
    for name in ("a", "l", "alpha"):
        val = getattr(combo, name)
        if val is not None:
            cell[name] = val
    return cell


def _run_unit(config: SweepConfig, u0: int, r: int) -> tuple[list[SweepRow], list[BoundReport], list[LemmaVerdict]]:
    """All rows for one (u0, r) progression; one incremental LCM chain."""
    prog = Progression(u0, r)
    plan = [(combo, _n_values(combo, prog, config)) for combo in _combos(config)]
    needed = {n for _, ns in plan for n in ns}
    rows: list[SweepRow] = []
    reports: list[BoundReport] = []
    verdicts: list[LemmaVerdict] = []
    if not needed:
        return rows, reports, verdicts

    lcms: dict[int, int] = {}
    state = IncrementalState.start(prog)
    if 0 in needed:
        lcms[0] = state.value
    for n in range(1, max(needed) + 1):
        state = state.extend()
        if n in needed:
            lcms[n] = state.value

    records: dict[int, LcmRecord] = {}

    def _rec(n: int) -> LcmRecord:
        if n not in records:
            records[n] = record(prog, n, prefix_lcm_value=lcms[n])
        return records[n]

    for combo, ns in plan:
        for n in ns:
            if combo.params is not None:
                rep = check_bound(combo.params, prog, n, lcms[n])
                reports.append(rep)
                rows.append(
                    SweepRow(
                        u0, r, n, combo.kind, combo.a, combo.l, combo.alpha,
                        rep.hypothesis_ok, rep.holds, rep.bound, lcms[n], rep.gap_log,
                    )
                )
                continue
            check = combo.check
            if check is CheckId.L2_1:
                v = verify_integrality(prog, n, prefix_lcm_value=lcms[n])
            elif check is CheckId.L2_2:
                v = verify_chain(prog, n, rec=_rec(n))
            elif check is CheckId.INEQ_2_3:
                v = verify_shift_floor(prog, n)
            elif check is CheckId.L2_3:
                v = verify_window_margin(prog, combo.a, combo.l, combo.alpha, n)
            elif check is CheckId.INEQ_2_5:
                v = verify_margin_fraction(combo.a, combo.l, combo.alpha, r)
            elif check is CheckId.DIV_FACTORIAL:
                v = verify_factorial_divisibility(prog, combo.a, combo.l, combo.alpha, n)
            else:
                # Hand over the cached record only on cells that will use it.
                if r != 1 and _margin_hypothesis(prog, combo.a, combo.l, combo.alpha, n):
                    v = verify_cofactor_divisibility(prog, combo.a, combo.l, combo.alpha, n, rec=_rec(n))
                else:
                    v = verify_cofactor_divisibility(prog, combo.a, combo.l, combo.alpha, n)
            v = replace(v, instance=_cell(u0, r, n, combo))
            verdicts.append(v)
            rows.append(
                SweepRow(
                    u0, r, n, combo.kind, combo.a, combo.l, combo.alpha,
                    hypothesis_ok=not v.filtered,
                    holds=None if v.filtered else v.ok,
                    bound=None, lcm=lcms[n], gap_log=None, witness=v.witness,
                )
            )
    return rows, reports, verdicts


def _report_key(rep: BoundReport) -> tuple:
    p = rep.params
    return (rep.prog.u0, rep.prog.r, rep.n, p.family.value, p.a or 0, p.l or 0, p.alpha or 0)


def _verdict_key(v: LemmaVerdict) -> tuple:
    inst = v.instance
    return (inst["u0"], inst["r"], inst["n"], v.check.value, inst.get("a") or 0, inst.get("l") or 0, inst.get("alpha") or 0)


def sweep(config: SweepConfig, jobs: int = 1) -> SweepOutcome:
    """Run the configured grid; output order is canonical regardless of jobs.

    Units are (u0, r) progressions; with jobs > 1 they run in separate
    processes and their results are merged and re-sorted, so two sweeps of
    one config serialize identically whatever the parallelism.
    """
    pairs = [(u0, r) for u0 in _span(config.u0_range) for r in _span(config.r_range)]
    units = [(u0, r) for u0, r in pairs if math.gcd(u0, r) == 1]
    coprime_skipped = len(pairs) - len(units)

    if jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(units))) as ex:
            futures = [ex.submit(_run_unit, config, u0, r) for u0, r in units]
            results = [f.result() for f in futures]
    else:
        results = [_run_unit(config, u0, r) for u0, r in units]

    rows = sorted((row for res in results for row in res[0]), key=SweepRow.sort_key)
    reports = sorted((rep for res in results for rep in res[1]), key=_report_key)
    verdicts = sorted((v for res in results for v in res[2]), key=_verdict_key)

    filtered = sum(1 for row in rows if not row.hypothesis_ok)
    verified = sum(1 for row in rows if row.hypothesis_ok and row.holds)
    failed = sum(1 for row in rows if row.hypothesis_ok and not row.holds)

    min_gap: BoundReport | None = None
    for rep in reports:
        if rep.holds and rep.gap_log is not None:
            if min_gap is None or rep.gap_log < min_gap.gap_log:
                min_gap = rep
    return SweepOutcome(
        total_cells=len(rows),
        hypothesis_filtered=filtered,
        verified=verified,
        failed=failed,
        coprime_skipped=coprime_skipped,
        rows=rows,
        reports=reports,
        verdicts=verdicts,
        min_gap=min_gap,
    )
