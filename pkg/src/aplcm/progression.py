"""Arithmetic progressions u0, u0 + r, u0 + 2r, ... with coprime first
term and step, plus the windowed term products the bound checks use."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .numeric import factorial


class CoprimalityError(ValueError):
    """First term and step share a common factor."""


@dataclass(frozen=True)
class Progression:
    """Progression with terms u0 + k*r, requiring u0, r >= 1 and gcd(u0, r) == 1.

    Non-coprime pairs are rejected rather than normalized: dividing out a
    common factor would describe a different progression.
    """

    u0: int
    r: int

    def __post_init__(self) -> None:
        if self.u0 < 1 or self.r < 1:
            raise ValueError(f"u0 and r must be >= 1, got ({self.u0}, {self.r})")
        g = math.gcd(self.u0, self.r)
        if g != 1:
            raise CoprimalityError(f"u0 and r must be coprime, got gcd({self.u0}, {self.r}) = {g}")

    def term(self, k: int) -> int:
        """k-th term u0 + k*r."""
        return self.u0 + k * self.r

    def shift_index(self, n: int) -> int:
        """Anchor index max(0, floor((n - u0) / (r + 1)) + 1), for n >= 1.

        Python's // already rounds toward -inf, which is exactly the
        mathematical floor needed when n < u0. The result is always in
        [0, n].
        """
        return max(0, (n - self.u0) // (self.r + 1) + 1)


@dataclass(frozen=True)
class PrefixWindow:
    """Index window k..n over a progression (0 <= k <= n)."""

    prog: Progression
    n: int
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.n:
            raise ValueError(f"window requires 0 <= k <= n, got k={self.k}, n={self.n}")

    def product(self) -> int:
        """Product of the window terms u_k * ... * u_n (never empty)."""
        prog = self.prog
        out = 1
        for j in range(self.k, self.n + 1):
            out *= prog.term(j)
        return out

    def scaled_product(self) -> Fraction:
        """Window product divided by (n - k)!, as an exact reduced fraction.

        Always positive; integral when r == 1, but not in general.
        """
        return Fraction(self.product(), factorial(self.n - self.k))
