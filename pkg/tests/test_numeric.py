import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aplcm import numeric


@pytest.mark.parametrize("x,y,expected", [(12, 18, 6), (7, 0, 7), (0, 0, 0)])
def test_gcd_cases(x, y, expected):
    assert numeric.gcd(x, y) == expected


@given(st.integers(min_value=0, max_value=10**6))
def test_gcd_unit(n):
    assert numeric.gcd(1, n) == 1


@pytest.mark.parametrize("x,y,expected", [(4, 6, 12), (5, 1, 5), (9, 9, 9)])
def test_lcm_cases(x, y, expected):
    assert numeric.lcm(x, y) == expected


@pytest.mark.parametrize("x,y", [(0, 5), (5, 0), (0, 0)])
def test_lcm_rejects_zero(x, y):
    with pytest.raises(ValueError):
        numeric.lcm(x, y)


@given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=1, max_value=10**6))
def test_gcd_lcm_product_identity(x, y):
    assert numeric.gcd(x, y) * numeric.lcm(x, y) == x * y


def test_lcm_fold_order_invariant():
    rng = random.Random(7)
    values = [rng.randint(1, 500) for _ in range(30)]
    folded = 1
    for v in values:
        folded = numeric.lcm(folded, v)
    for seed in range(5):
        shuffled = values[:]
        random.Random(seed).shuffle(shuffled)
        acc = 1
        for v in shuffled:
            acc = numeric.lcm(acc, v)
        assert acc == folded


@pytest.mark.parametrize("m,expected", [(0, 1), (5, 120), (8, 40320)])
def test_factorial_cases(m, expected):
    assert numeric.factorial(m) == expected


@pytest.mark.parametrize(
    "x,expected",
    [(6, [(2, 1), (3, 1)]), (8, [(2, 3)]), (13, [(13, 1)])],
)
def test_factorize_cases(x, expected):
    assert numeric.factorize(x) == expected


@pytest.mark.parametrize("x", [1, 0, -4])
def test_factorize_rejects_small(x):
    with pytest.raises(ValueError):
        numeric.factorize(x)


@given(st.integers(min_value=2, max_value=10**4))
def test_factorize_reconstructs(x):
    pairs = numeric.factorize(x)
    product = 1
    for p, e in pairs:
        assert e >= 1
        product *= p ** e
    assert product == x
    primes = [p for p, _ in pairs]
    assert primes == sorted(set(primes))
    for p in primes:
        assert all(p % q for q in range(2, p)) or p == 2


@pytest.mark.parametrize("base,x,expected", [(2, 40320, 7), (6, 720, 2), (5, 1, 0)])
def test_max_power_dividing_cases(base, x, expected):
    assert numeric.max_power_dividing(base, x) == expected


@pytest.mark.parametrize("base,x", [(1, 10), (0, 10), (2, 0)])
def test_max_power_dividing_rejects(base, x):
    with pytest.raises(ValueError):
        numeric.max_power_dividing(base, x)


@pytest.mark.parametrize("base,m,expected", [(2, 8, 7), (2, 0, 0), (6, 6, 2)])
def test_max_power_dividing_factorial_cases(base, m, expected):
    assert numeric.max_power_dividing_factorial(base, m) == expected


def test_max_power_dividing_factorial_rejects_base():
    with pytest.raises(ValueError):
        numeric.max_power_dividing_factorial(1, 5)


def test_factorial_valuation_matches_explicit_factorial():
    # Oracle equivalence: the Legendre path against the formed factorial.
    for base in range(2, 13):
        for m in range(0, 51):
            direct = numeric.max_power_dividing(base, numeric.factorial(m)) if m > 1 else 0
            assert numeric.max_power_dividing_factorial(base, m) == direct


@given(st.integers(min_value=2, max_value=60), st.integers(min_value=1, max_value=10**5))
def test_max_power_dividing_is_maximal(base, x):
    e = numeric.max_power_dividing(base, x)
    assert x % base ** e == 0
    assert x % base ** (e + 1) != 0


# Exact rational arithmetic is Fraction's; pin the contract we rely on.

@given(st.integers(min_value=-500, max_value=500), st.integers(min_value=1, max_value=500))
def test_fraction_reduction_idempotent(num, den):
    q = Fraction(num, den)
    assert Fraction(q.numerator, q.denominator) == q
    assert math.gcd(abs(q.numerator), q.denominator) == 1
    assert q.denominator >= 1


@given(
    st.integers(min_value=-200, max_value=200), st.integers(min_value=1, max_value=200),
    st.integers(min_value=-200, max_value=200), st.integers(min_value=1, max_value=200),
)
def test_fraction_addition_cross_multiplied(a, b, c, d):
    q = Fraction(a, b) + Fraction(c, d)
    assert q.numerator * (b * d) == (a * d + c * b) * q.denominator


# Log helpers must stay accurate far beyond float range.

def test_log_ratio_exact_one():
    assert numeric.log_ratio(12, 12) == 0.0


def test_log_ratio_small_values():
    assert numeric.log_ratio(393, 100) == pytest.approx(math.log(3.93), rel=1e-14)
    assert numeric.log_ratio(1, 2) == pytest.approx(-math.log(2), rel=1e-14)


def test_log_ratio_huge_values():
    # 10**500 is far beyond float range; ln(10**500) = 500*ln(10).
    assert numeric.log_int(10 ** 500) == pytest.approx(500 * math.log(10), rel=1e-13)
    got = numeric.log_ratio(7 ** 900, 7 ** 899)
    assert got == pytest.approx(math.log(7), rel=1e-13)


def test_log_ratio_pinned_value():
    # ln(1673196525 / 4251528), reference computed with 30-digit arithmetic.
    assert numeric.log_ratio(1673196525, 4251528) == pytest.approx(5.97521271497429472, rel=1e-12)


def test_log_ratio_rejects_nonpositive():
    with pytest.raises(ValueError):
        numeric.log_ratio(0, 1)
    with pytest.raises(ValueError):
        numeric.log_ratio(1, 0)
