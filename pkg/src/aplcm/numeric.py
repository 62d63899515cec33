"""Exact integer helpers: gcd/lcm, factorials, trial-division
factorization, and p-adic valuations of integers and factorials.

Everything here works on Python's unbounded ints; no value is ever
rounded through a float except in the log helpers at the bottom.
"""

from __future__ import annotations

import math

# Prime factorization as (prime, exponent) pairs, primes strictly increasing.
Factorization = list[tuple[int, int]]

_LN2 = math.log(2)


def gcd(x: int, y: int) -> int:
    """Greatest common divisor of non-negative integers; gcd(0, 0) == 0."""
    return math.gcd(x, y)


def lcm(x: int, y: int) -> int:
    """Least common multiple of two positive integers."""
    if x < 1 or y < 1:
        raise ValueError(f"lcm requires positive integers, got ({x}, {y})")
    return x * y // math.gcd(x, y)


def factorial(m: int) -> int:
    """m! as an exact integer; 0! == 1."""
    return math.factorial(m)


def factorize(x: int) -> Factorization:
    """Prime factorization of x >= 2 by trial division.

    Meant for small values (bases and step sizes); never apply it to
    LCM-scale integers.
    """
    if x < 2:
        raise ValueError(f"factorize requires x >= 2, got {x}")
    pairs = []
    p = 2
    while p * p <= x:
        if x % p == 0:
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            pairs.append((p, e))
        p += 1 if p == 2 else 2
    if x > 1:
        pairs.append((x, 1))
    return pairs


def _valuation(p: int, x: int) -> int:
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def _factorial_valuation(p: int, m: int) -> int:
    # Legendre's formula: sum over i >= 1 of floor(m / p**i).
    total = 0
    q = m // p
    while q:
        total += q
        q //= p
    return total


def max_power_dividing(base: int, x: int) -> int:
    """Largest e >= 0 with base**e dividing x (base >= 2, x >= 1)."""
    if base < 2:
        raise ValueError(f"max_power_dividing requires base >= 2, got {base}")
    if x < 1:
        raise ValueError(f"max_power_dividing requires x >= 1, got {x}")
    return min(_valuation(p, x) // e for p, e in factorize(base))


def max_power_dividing_factorial(base: int, m: int) -> int:
    """Largest e >= 0 with base**e dividing m!, computed without forming m!."""
    if base < 2:
        raise ValueError(f"max_power_dividing_factorial requires base >= 2, got {base}")
    return min(_factorial_valuation(p, m) // e for p, e in factorize(base))


def log_ratio(num: int, den: int) -> float:
    """Natural log of num/den for positive integers of any size.

    Splits off the power of two so only a mantissa in [1, 2) reaches
    floating point; the result stays accurate to a few ulp even when
    the operands are far beyond float range.
    """
    if num < 1 or den < 1:
        raise ValueError(f"log_ratio requires positive integers, got ({num}, {den})")
    if num == den:
        return 0.0
    shift = num.bit_length() - den.bit_length()
    nn, dd = num, den
    if shift >= 0:
        dd = den << shift
    else:
        nn = num << -shift
    if nn < dd:
        shift -= 1
        nn <<= 1
    # nn/dd is now in [1, 2); int.__truediv__ is correctly rounded.
    return math.log1p((nn - dd) / dd) + shift * _LN2


def log_int(x: int) -> float:
    """Natural log of a positive integer of any size."""
    return log_ratio(x, 1)
