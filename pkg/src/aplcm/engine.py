"""Exact LCMs of progression prefixes and suffixes, the integer cofactor
relating a suffix LCM to its scaled term product, and an incremental
extension path so sweeps over n stay linear."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .progression import PrefixWindow, Progression


class IntegralityError(ArithmeticError):
    """A quotient that must be a positive integer is not.

    This should never fire; if it does, the message is a complete witness
    (all inputs plus the offending exact value) and the run must abort.
    """


def _exact_positive_int(q: Fraction, context: str) -> int:
    if q.denominator != 1 or q.numerator < 1:
        raise IntegralityError(f"{context}: {q.numerator}/{q.denominator} is not a positive integer")
    return q.numerator


def lcm_prefix(prog: Progression, n: int) -> int:
    """LCM of the n + 1 leading terms u_0..u_n, by direct fold."""
    out = prog.u0
    for j in range(1, n + 1):
        t = prog.term(j)
        out = out * t // math.gcd(out, t)
    return out


def lcm_suffix(prog: Progression, n: int, k: int) -> int:
    """LCM of u_k..u_n; equals lcm_prefix when k == 0."""
    if not 0 <= k <= n:
        raise ValueError(f"lcm_suffix requires 0 <= k <= n, got k={k}, n={n}")
    out = prog.term(k)
    for j in range(k + 1, n + 1):
        t = prog.term(j)
        out = out * t // math.gcd(out, t)
    return out


@dataclass(frozen=True)
class IncrementalState:
    """Running prefix LCM; value == lcm(u_0..u_n) at all times."""

    prog: Progression
    n: int
    value: int

    @classmethod
    def start(cls, prog: Progression) -> IncrementalState:
        return cls(prog, 0, prog.u0)

    def extend(self) -> IncrementalState:
        """State for n + 1; one gcd plus one mul//div per step."""
        t = self.prog.term(self.n + 1)
        return IncrementalState(self.prog, self.n + 1, self.value * t // math.gcd(self.value, t))


@dataclass(frozen=True)
class LcmRecord:
    """Mutually consistent exact quantities for one prefix u_0..u_n.

    suffix_lcm, scaled_product and cofactor are taken at k = k_n, the
    progression's anchor index for this n, and satisfy
    suffix_lcm == cofactor * scaled_product exactly.
    """

    n: int
    k_n: int
    prefix_lcm: int
    suffix_lcm: int
    scaled_product: Fraction
    cofactor: int


def cofactor(prog: Progression, n: int, k: int) -> int:
    """Integer quotient lcm(u_k..u_n) / (u_k...u_n / (n-k)!), always >= 1.

    Integrality is asserted, not assumed: a non-integer quotient raises
    IntegralityError with a full witness.
    """
    win = PrefixWindow(prog, n, k)
    q = Fraction(lcm_suffix(prog, n, k)) / win.scaled_product()
    return _exact_positive_int(q, f"cofactor(u0={prog.u0}, r={prog.r}, n={n}, k={k})")


def record(prog: Progression, n: int, prefix_lcm_value: int | None = None) -> LcmRecord:
    """All anchored quantities for (prog, n), n >= 1.

    prefix_lcm_value, when given, must be the exact prefix LCM (the
    incremental path inside sweeps supplies it to avoid re-folding).
    """
    if n < 1:
        raise ValueError(f"record requires n >= 1, got {n}")
    k_n = prog.shift_index(n)
    lp = lcm_prefix(prog, n) if prefix_lcm_value is None else prefix_lcm_value
    ls = lcm_suffix(prog, n, k_n)
    c = PrefixWindow(prog, n, k_n).scaled_product()
    a = _exact_positive_int(Fraction(ls) / c, f"cofactor(u0={prog.u0}, r={prog.r}, n={n}, k={k_n})")
    return LcmRecord(n, k_n, lp, ls, c, a)
