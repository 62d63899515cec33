"""Exponential lower-bound families for prefix LCMs.

Each family asserts L >= u0 * r**e * (r+1)**n for its own exponent e and
side conditions; `nair` is the consecutive-integer special case with
bound 2**n. Hypothesis failure is data (a filtered report), not an error,
so sweeps can count filtered cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .numeric import log_ratio
from .progression import Progression


class BoundFamily(str, Enum):
    """Bound families, with their CLI tokens as values."""

    NAIR = "nair"
    HY_T11 = "hy"
    HK_T12 = "hk"
    NEW_T13 = "new"


_NEEDS: dict[BoundFamily, frozenset[str]] = {
    BoundFamily.NAIR: frozenset(),
    BoundFamily.HY_T11: frozenset({"alpha"}),
    BoundFamily.HK_T12: frozenset({"alpha", "a"}),
    BoundFamily.NEW_T13: frozenset({"alpha", "a", "l"}),
}


def required_params(family: BoundFamily) -> frozenset[str]:
    """Names of the exponent parameters the family takes."""
    return _NEEDS[family]


class HypothesisError(ValueError):
    """A bound value was requested where the family's side conditions fail."""


@dataclass(frozen=True)
class BoundParams:
    """A family plus its exponent parameters.

    Presence is family-specific: nair takes none, hy takes alpha,
    hk takes (a, alpha), new takes (a, l, alpha). The l == 3 instance
    of `new` is the sharpest built-in family; l == 2 reproduces `hk`.
    """

    family: BoundFamily
    alpha: int | None = None
    a: int | None = None
    l: int | None = None

    def __post_init__(self) -> None:
        need = _NEEDS[self.family]
        for name in ("alpha", "a", "l"):
            val = getattr(self, name)
            if name in need and val is None:
                raise ValueError(f"family {self.family.value} requires {name}")
            if name not in need and val is not None:
                raise ValueError(f"family {self.family.value} does not take {name}")
        if self.alpha is not None and self.alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        if self.a is not None and self.a < 2:
            raise ValueError(f"a must be >= 2, got {self.a}")
        if self.l is not None and self.l < 2:
            raise ValueError(f"l must be >= 2, got {self.l}")


def step_exponent(params: BoundParams) -> int:
    """Exponent of r in the family's bound formula."""
    if params.family is BoundFamily.HY_T11:
        return params.alpha
    if params.family is BoundFamily.HK_T12:
        return params.alpha + params.a - 2
    if params.family is BoundFamily.NEW_T13:
        return (params.l - 1) * params.alpha + params.a - params.l
    raise ValueError("the nair bound has no step exponent (r == 1)")


def hypothesis_holds(params: BoundParams, prog: Progression, n: int) -> bool:
    """Whether every side condition of the family holds for (prog, n).

    Exact integer arithmetic throughout (r**alpha is formed exactly for
    the hy test).
    """
    f = params.family
    if f is BoundFamily.NAIR:
        return prog.u0 == 1 and prog.r == 1 and n >= 1
    if f is BoundFamily.HY_T11:
        return n > prog.r ** params.alpha
    if f is BoundFamily.HK_T12:
        return params.alpha >= params.a and prog.r >= params.a and n >= 2 * params.alpha * prog.r
    return (
        params.alpha >= params.a
        and prog.r >= max(params.a, params.l - 1)
        and n >= params.l * params.alpha * prog.r
    )


def hypothesis_threshold(params: BoundParams, prog: Progression) -> int | None:
    """Smallest n >= 1 satisfying the hypothesis, or None when no n does."""
    f = params.family
    if f is BoundFamily.NAIR:
        return 1 if prog.u0 == 1 and prog.r == 1 else None
    if f is BoundFamily.HY_T11:
        return prog.r ** params.alpha + 1
    if f is BoundFamily.HK_T12:
        if params.alpha >= params.a and prog.r >= params.a:
            return 2 * params.alpha * prog.r
        return None
    if params.alpha >= params.a and prog.r >= max(params.a, params.l - 1):
        return params.l * params.alpha * prog.r
    return None


def bound_value(params: BoundParams, prog: Progression, n: int) -> int:
    """Exact value of the family's bound; the hypothesis must hold."""
    if not hypothesis_holds(params, prog, n):
        raise HypothesisError(
            f"hypothesis of {params.family.value} fails for u0={prog.u0}, r={prog.r}, n={n}"
        )
    if params.family is BoundFamily.NAIR:
        # u0 == r == 1: the prefix is 1..n+1, i.e. n+1 consecutive
        # integers, so the two-power bound at this index is 2**n.
        return 2 ** n
    return prog.u0 * prog.r ** step_exponent(params) * (prog.r + 1) ** n


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one (params, progression, n) bound check.

    holds is decided by exact integer comparison, never floating point;
    gap_log = ln(L / bound) is present only for verified cells.
    """

    params: BoundParams
    prog: Progression
    n: int
    hypothesis_ok: bool
    bound: int | None = None
    holds: bool | None = None
    gap_log: float | None = None


def check_bound(params: BoundParams, prog: Progression, n: int, prefix_lcm_value: int) -> BoundReport:
    """Report for L >= bound, where prefix_lcm_value is the exact prefix LCM."""
    if not hypothesis_holds(params, prog, n):
        return BoundReport(params, prog, n, hypothesis_ok=False)
    b = bound_value(params, prog, n)
    holds = prefix_lcm_value >= b
    gap = log_ratio(prefix_lcm_value, b) if holds else None
    return BoundReport(params, prog, n, hypothesis_ok=True, bound=b, holds=holds, gap_log=gap)
