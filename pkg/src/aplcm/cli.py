"""Command-line front end: single-instance computations, bound checks,
and grid sweeps with CSV or JSON-lines reporting.

Exit codes: 0 = everything verified or hypothesis-filtered, 1 = at least
one failed bound or check (or an integrality abort), 2 = usage error.
Exact integers are serialized as decimal strings; fractions as "num/den";
gap_log with 9 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from typing import Any, TextIO

from .bounds import BoundFamily, BoundParams, check_bound
from .engine import IntegralityError, cofactor, lcm_prefix, lcm_suffix, record
from .progression import PrefixWindow, Progression
from .verify import CheckId, SweepConfig, SweepConfigError, SweepOutcome, SweepRow, sweep

SWEEP_COLUMNS = [
    "u0", "r", "n", "family", "a", "l", "alpha",
    "hypothesis_ok", "holds", "bound", "L_n", "gap_log",
]

_FAMILY_TOKENS = {f.value: f for f in BoundFamily}
_CHECK_TOKENS = {c.value: c for c in CheckId}
_CONFIG_KEYS = {
    "u0_range", "r_range", "n_range", "n_window",
    "a_range", "l_range", "alpha_range", "families", "checks",
}


class UsageError(ValueError):
    """Invalid command-line input; maps to exit code 2."""


def _fmt_gap(g: float) -> str:
    return format(g, ".9g")


def _fmt_frac(q: Fraction) -> str:
    # Always "num/den", even when den == 1, so the column type is stable.
    return f"{q.numerator}/{q.denominator}"


def _csv_value(v: Any) -> str:
    if v is None:
        return ""
    if v is True:
        return "true"
    if v is False:
        return "false"
    return str(v)


def _emit(rows: list[dict[str, Any]], columns: list[str], fmt: str, stream: TextIO) -> None:
    if fmt == "json":
        for row in rows:
            stream.write(json.dumps({c: row.get(c) for c in columns}, separators=(",", ":")) + "\n")
    else:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow(_csv_value(row.get(c)) for c in columns)


def _parse_range(text: str, name: str) -> tuple[int, int]:
    s = str(text).strip()
    try:
        if ".." in s:
            lo, _, hi = s.partition("..")
            return (int(lo), int(hi))
        v = int(s)
        return (v, v)
    except ValueError:
        raise UsageError(f"bad {name} range {text!r}: expected LO..HI or a single integer") from None


def _coerce_range(val: Any, name: str) -> tuple[int, int]:
    if isinstance(val, str):
        return _parse_range(val, name)
    if isinstance(val, bool):
        raise UsageError(f"bad {name} range {val!r}")
    if isinstance(val, int):
        return (val, val)
    if isinstance(val, (list, tuple)) and len(val) == 2:
        return (int(val[0]), int(val[1]))
    raise UsageError(f"bad {name} range {val!r}: expected LO..HI, [lo, hi] or a single integer")


def _parse_families(text: str) -> tuple[BoundFamily, ...]:
    out = []
    for token in str(text).replace(",", " ").split():
        if token == "t14":
            raise UsageError("family alias t14 is check-only; sweep with --families new --l 3")
        if token not in _FAMILY_TOKENS:
            raise UsageError(f"unknown family {token!r}; choose from {sorted(_FAMILY_TOKENS)}")
        out.append(_FAMILY_TOKENS[token])
    return tuple(out)


def _parse_checks(text: str) -> tuple[CheckId, ...]:
    out = []
    for token in str(text).replace(",", " ").split():
        if token not in _CHECK_TOKENS:
            raise UsageError(f"unknown check {token!r}; choose from {sorted(_CHECK_TOKENS)}")
        out.append(_CHECK_TOKENS[token])
    return tuple(out)


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------

def _cmd_compute(args: argparse.Namespace) -> int:
    prog = Progression(args.u0, args.r)
    if args.n < 0:
        raise UsageError(f"n must be >= 0, got {args.n}")
    columns = ["u0", "r", "n", "u_n", "L_n"]
    row: dict[str, Any] = {
        "u0": args.u0,
        "r": args.r,
        "n": args.n,
        "u_n": str(prog.term(args.n)),
        "L_n": str(lcm_prefix(prog, args.n)),
    }
    if args.n >= 1:
        rec = record(prog, args.n)
        row["k_n"] = rec.k_n
        row["L_n_kn"] = str(rec.suffix_lcm)
        row["C_n_kn"] = _fmt_frac(rec.scaled_product)
        row["A_n_kn"] = str(rec.cofactor)
        columns += ["k_n", "L_n_kn", "C_n_kn", "A_n_kn"]
    if args.k is not None:
        if not 0 <= args.k <= args.n:
            raise UsageError(f"k must satisfy 0 <= k <= n, got k={args.k}, n={args.n}")
        row["k"] = args.k
        row["L_n_k"] = str(lcm_suffix(prog, args.n, args.k))
        row["C_n_k"] = _fmt_frac(PrefixWindow(prog, args.n, args.k).scaled_product())
        row["A_n_k"] = str(cofactor(prog, args.n, args.k))
        columns += ["k", "L_n_k", "C_n_k", "A_n_k"]
    _emit([row], columns, args.format, sys.stdout)
    return 0


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def _family_params(args: argparse.Namespace) -> BoundParams:
    token, l = args.family, args.l
    if token == "t14":
        # Alias: the sharpest family pinned at l = 3.
        if l not in (None, 3):
            raise UsageError(f"family t14 pins l = 3, got --l {l}")
        token, l = "new", 3
    if token not in _FAMILY_TOKENS:
        raise UsageError(f"unknown family {args.family!r}; choose from {sorted(_FAMILY_TOKENS) + ['t14']}")
    try:
        return BoundParams(_FAMILY_TOKENS[token], alpha=args.alpha, a=args.a, l=l)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _cmd_check(args: argparse.Namespace) -> int:
    prog = Progression(args.u0, args.r)
    if args.n < 1:
        raise UsageError(f"n must be >= 1, got {args.n}")
    params = _family_params(args)
    lcm_value = lcm_prefix(prog, args.n)
    rep = check_bound(params, prog, args.n, lcm_value)
    row = {
        "u0": args.u0,
        "r": args.r,
        "n": args.n,
        "family": params.family.value,
        "a": params.a,
        "l": params.l,
        "alpha": params.alpha,
        "hypothesis_ok": rep.hypothesis_ok,
        "holds": rep.holds,
        "bound": str(rep.bound) if rep.bound is not None else None,
        "L_n": str(lcm_value),
        "gap_log": _fmt_gap(rep.gap_log) if rep.gap_log is not None else None,
    }
    _emit([row], SWEEP_COLUMNS, args.format, sys.stdout)
    return 1 if rep.holds is False else 0


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def _sweep_row_dict(row: SweepRow) -> dict[str, Any]:
    return {
        "u0": row.u0,
        "r": row.r,
        "n": row.n,
        "family": row.kind,
        "a": row.a,
        "l": row.l,
        "alpha": row.alpha,
        "hypothesis_ok": row.hypothesis_ok,
        "holds": row.holds,
        "bound": str(row.bound) if row.bound is not None else None,
        "L_n": str(row.lcm) if row.lcm is not None else None,
        "gap_log": _fmt_gap(row.gap_log) if row.gap_log is not None else None,
    }


def _build_config(args: argparse.Namespace) -> SweepConfig:
    cfg: dict[str, Any] = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as e:
            raise UsageError(f"cannot read config {args.config!r}: {e}") from None
        except json.JSONDecodeError as e:
            raise UsageError(f"config {args.config!r} is not valid JSON: {e}") from None
        if not isinstance(data, dict):
            raise UsageError("config must be a JSON object")
        for key, val in data.items():
            if key not in _CONFIG_KEYS:
                raise UsageError(f"unknown config key {key!r}")
            if key.endswith("_range"):
                cfg[key] = _coerce_range(val, key.removesuffix("_range"))
            elif key == "n_window":
                cfg[key] = int(val)
            elif key == "families":
                tokens = " ".join(str(t) for t in val) if isinstance(val, list) else val
                cfg[key] = _parse_families(tokens)
            else:
                tokens = " ".join(str(t) for t in val) if isinstance(val, list) else val
                cfg[key] = _parse_checks(tokens)

    # Flags override the config file.
    for flag, key in (("u0", "u0_range"), ("r", "r_range"), ("n", "n_range"),
                      ("a", "a_range"), ("l", "l_range"), ("alpha", "alpha_range")):
        val = getattr(args, flag)
        if val is not None:
            cfg[key] = _parse_range(val, flag)
    if args.n is not None and args.n_window is None:
        cfg.pop("n_window", None)
    if args.n_window is not None:
        cfg["n_window"] = args.n_window
        if args.n is None:
            cfg.pop("n_range", None)
    if args.alpha_max is not None:
        if args.alpha is not None:
            raise UsageError("--alpha and --alpha-max are mutually exclusive")
        lo = cfg.get("a_range", (1, 1))[0]
        cfg["alpha_range"] = (max(1, lo), args.alpha_max)
    if args.families is not None:
        cfg["families"] = _parse_families(args.families)
    if args.checks is not None:
        cfg["checks"] = _parse_checks(args.checks)

    if "u0_range" not in cfg or "r_range" not in cfg:
        raise UsageError("sweep requires --u0 and --r ranges (flags or config file)")
    return SweepConfig(**cfg)


def _print_summary(outcome: SweepOutcome, stream: TextIO) -> None:
    print(
        f"cells={outcome.total_cells} filtered={outcome.hypothesis_filtered} "
        f"verified={outcome.verified} failed={outcome.failed} "
        f"noncoprime_skipped={outcome.coprime_skipped}",
        file=stream,
    )
    if outcome.min_gap is not None:
        rep = outcome.min_gap
        p = rep.params
        extra = "".join(
            f" {name}={getattr(p, name)}" for name in ("a", "l", "alpha") if getattr(p, name) is not None
        )
        print(
            f"min_gap={_fmt_gap(rep.gap_log)} at u0={rep.prog.u0} r={rep.prog.r} "
            f"n={rep.n} family={p.family.value}{extra}",
            file=stream,
        )


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = _build_config(args)
    outcome = sweep(config, jobs=args.jobs)
    rows = [_sweep_row_dict(r) for r in outcome.rows]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            _emit(rows, SWEEP_COLUMNS, args.format, fh)
        if args.verbose:
            _emit(rows, SWEEP_COLUMNS, args.format, sys.stdout)
    else:
        _emit(rows, SWEEP_COLUMNS, args.format, sys.stdout)
    for row in outcome.rows:
        if row.hypothesis_ok and row.holds is False:
            detail = row.witness or f"L_n={row.lcm} < bound={row.bound}"
            print(f"FAIL {row.kind} u0={row.u0} r={row.r} n={row.n}: {detail}", file=sys.stderr)
    _print_summary(outcome, sys.stderr)
    return 0 if outcome.failed == 0 else 1


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="aplcm",
        description="Exact LCMs of arithmetic-progression prefixes, bound checks, and verification sweeps.",
    )
    p.add_argument("--format", choices=("json", "csv"), default="json", help="output format (default: json lines)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps (default: 1)")
    p.add_argument("--verbose", action="store_true", help="echo sweep rows to stdout even when --out is set")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="exact LCM and window quantities for one progression prefix")
    c.add_argument("--u0", type=int, required=True, help="first term (>= 1, coprime to --r)")
    c.add_argument("--r", type=int, required=True, help="common difference (>= 1)")
    c.add_argument("--n", type=int, required=True, help="prefix index (>= 0)")
    c.add_argument("--k", type=int, help="also report the window k..n")
    c.set_defaults(func=_cmd_compute)

    k = sub.add_parser("check", help="evaluate one lower-bound family at one cell")
    k.add_argument("--u0", type=int, required=True)
    k.add_argument("--r", type=int, required=True)
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--family", required=True, help="nair, hy, hk, new, or t14 (= new with l pinned to 3)")
    k.add_argument("--a", type=int, help="exponent parameter a (hk, new)")
    k.add_argument("--l", type=int, help="exponent parameter l (new)")
    k.add_argument("--alpha", type=int, help="exponent parameter alpha (hy, hk, new)")
    k.set_defaults(func=_cmd_check)

    s = sub.add_parser("sweep", help="run families and checks over a parameter grid")
    s.add_argument("--u0", help="range LO..HI (or single value)")
    s.add_argument("--r", help="range LO..HI")
    s.add_argument("--n", help="absolute n range LO..HI")
    s.add_argument("--n-window", type=int, dest="n_window",
                   help="cover n from each combination's hypothesis threshold T to T+W")
    s.add_argument("--a", help="range LO..HI")
    s.add_argument("--l", help="range LO..HI")
    s.add_argument("--alpha", help="range LO..HI")
    s.add_argument("--alpha-max", type=int, dest="alpha_max",
                   help="alpha from the smallest admissible value up to this bound")
    s.add_argument("--families", help="comma-separated family tokens (nair,hy,hk,new)")
    s.add_argument("--checks", help="comma-separated check tokens (l21,l22,l23,ineq23,ineq25,divfact,divcof)")
    s.add_argument("--config", help="JSON config file mirroring the sweep-config fields")
    s.add_argument("--out", help="write rows to this file instead of stdout")
    s.set_defaults(func=_cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except ValueError as e:  # UsageError, coprimality, bad params, bad config
        print(f"error: {e}", file=sys.stderr)
        return 2
    except IntegralityError as e:
        print(f"counterexample: {e}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        # Downstream closed the pipe (e.g. `| head`); suppress the noise.
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
