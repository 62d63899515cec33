import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aplcm import CoprimalityError, PrefixWindow, Progression


def coprime_progressions(max_u0=30, max_r=30):
    return (
        st.tuples(st.integers(1, max_u0), st.integers(1, max_r))
        .filter(lambda t: math.gcd(*t) == 1)
        .map(lambda t: Progression(*t))
    )


def test_constructor_accepts_coprime():
    p = Progression(3, 2)
    assert (p.u0, p.r) == (3, 2)


def test_constructor_rejects_common_factor():
    with pytest.raises(CoprimalityError):
        Progression(2, 4)


@pytest.mark.parametrize("u0,r", [(0, 1), (1, 0), (-3, 2)])
def test_constructor_rejects_nonpositive(u0, r):
    with pytest.raises(ValueError):
        Progression(u0, r)


@pytest.mark.parametrize("u0,r,k,expected", [(3, 2, 4, 11), (3, 2, 0, 3), (1, 1, 9, 10)])
def test_term_cases(u0, r, k, expected):
    assert Progression(u0, r).term(k) == expected


@given(coprime_progressions(), st.integers(0, 200))
def test_term_strictly_increasing_with_step_r(prog, k):
    assert prog.term(k + 1) - prog.term(k) == prog.r
    assert prog.term(k) >= 1


@given(coprime_progressions(), st.integers(0, 200))
def test_terms_stay_coprime_to_step(prog, k):
    assert math.gcd(prog.term(k), prog.r) == 1


@pytest.mark.parametrize("u0,r,n,expected", [(1, 2, 10, 4), (5, 2, 3, 0), (5, 2, 5, 1), (1, 2, 12, 4)])
def test_shift_index_cases(u0, r, n, expected):
    assert Progression(u0, r).shift_index(n) == expected


@given(coprime_progressions(), st.integers(1, 300))
def test_shift_index_bounds(prog, n):
    k = prog.shift_index(n)
    assert 0 <= k <= n
    if n <= prog.u0:
        assert k <= 1
    if n > prog.u0:
        assert k == (n - prog.u0) // (prog.r + 1) + 1
        assert Fraction(k) <= Fraction(n + prog.r, prog.r + 1)


@given(coprime_progressions(), st.integers(1, 300))
def test_shift_index_leaves_long_tail(prog, n):
    # n - k_n >= (n-1)r/(r+1), compared exactly.
    k = prog.shift_index(n)
    assert Fraction(n - k) >= Fraction((n - 1) * prog.r, prog.r + 1)


@pytest.mark.parametrize("u0,r,n,k,expected", [(2, 3, 2, 0, 80), (2, 3, 2, 2, 8), (1, 4, 2, 0, 45)])
def test_window_product_cases(u0, r, n, k, expected):
    assert PrefixWindow(Progression(u0, r), n, k).product() == expected


@pytest.mark.parametrize(
    "u0,r,n,k,expected",
    [(2, 3, 2, 0, Fraction(40)), (1, 4, 2, 0, Fraction(45, 2))],
)
def test_scaled_product_cases(u0, r, n, k, expected):
    assert PrefixWindow(Progression(u0, r), n, k).scaled_product() == expected


@given(coprime_progressions(), st.integers(0, 40))
def test_scaled_product_degenerate_window_is_last_term(prog, n):
    assert PrefixWindow(prog, n, n).scaled_product() == prog.term(n)


@given(coprime_progressions(max_u0=12, max_r=6), st.integers(0, 25), st.data())
def test_scaled_product_positive(prog, n, data):
    k = data.draw(st.integers(0, n))
    assert PrefixWindow(prog, n, k).scaled_product() > 0


@given(st.integers(1, 12), st.integers(0, 30), st.data())
def test_scaled_product_integral_for_unit_step(u0, n, data):
    # Consecutive integers: the window quotient is a binomial multiple.
    k = data.draw(st.integers(0, n))
    q = PrefixWindow(Progression(u0, 1), n, k).scaled_product()
    assert q.denominator == 1


@pytest.mark.parametrize("n,k", [(3, 4), (0, 1), (5, -1)])
def test_window_rejects_bad_indices(n, k):
    with pytest.raises(ValueError):
        PrefixWindow(Progression(1, 2), n, k)
