from fractions import Fraction as F
from math import comb

import pytest
from hypothesis import given, strategies as st

from gegenkit.errors import InvalidParameter, InvalidWeight, PoleCrossing
from gegenkit.exactnum import (
    GegenParam,
    as_rational,
    binom_rational,
    format_rational,
    gamma_ratio,
    rising_factorial,
)

from conftest import lambdas, small_fractions


@pytest.mark.parametrize(
    "a, k, expected",
    [(3, 0, 1), (2, 3, 24), (F(1, 2), 2, F(3, 4))],
)
def test_rising_factorial(a, k, expected):
    assert rising_factorial(a, k) == expected


@pytest.mark.parametrize(
    "a, m, expected",
    [(1, 2, 2), (F(3, 2), 2, F(15, 4)), (F(-1, 4), 1, F(-1, 4))],
)
def test_gamma_ratio(a, m, expected):
    assert gamma_ratio(a, m) == expected


def test_gamma_ratio_refuses_to_cross_a_pole():
    with pytest.raises(PoleCrossing):
        gamma_ratio(-2, 4)
    # a pole exactly at the end of the range is not crossed
    assert gamma_ratio(-2, 2) == 2


@pytest.mark.parametrize(
    "a, k, expected",
    [(5, 2, 10), (F(1, 2), 2, F(-1, 8)), (1 + 2 * 1 - 1, 1, 2)],
)
def test_binom_rational(a, k, expected):
    assert binom_rational(a, k) == expected


@given(small_fractions, st.integers(0, 10))
def test_rising_factorial_step(a, k):
    assert rising_factorial(a, k + 1) == rising_factorial(a, k) * (a + k)


@given(small_fractions, st.integers(0, 8))
def test_gamma_ratio_is_rising_factorial(a, m):
    if any(a + j == 0 for j in range(m)):
        with pytest.raises(PoleCrossing):
            gamma_ratio(a, m)
    else:
        assert gamma_ratio(a, m) == rising_factorial(a, m)


@given(st.integers(0, 40), st.integers(0, 40))
def test_binom_matches_integer_binomial(a, k):
    if a >= k:
        assert binom_rational(a, k) == comb(a, k)


@given(lambdas(), st.integers(0, 10))
def test_duplication_in_rational_form(lam, m):
    # Gamma(z) Gamma(z + 1/2) = 2^(1-2z) sqrt(pi) Gamma(2z), restated through Pochhammers
    lhs = rising_factorial(lam, m) * rising_factorial(lam + F(1, 2), m)
    assert lhs / rising_factorial(2 * lam, 2 * m) == F(1, 4**m)


def test_param_validation():
    assert GegenParam("3/2").lam == F(3, 2)
    with pytest.raises(InvalidParameter):
        GegenParam(0)
    with pytest.raises(InvalidWeight):
        GegenParam("-1/2")
    assert GegenParam("-49/100").lam == F(-49, 100)


def test_rational_strings():
    assert format_rational(F(3, 2)) == "3/2"
    assert format_rational(F(4, 2)) == "2"
    assert format_rational(F(-1, 8)) == "-1/8"
    assert as_rational(" -7/3 ") == F(-7, 3)
    with pytest.raises(ValueError):
        as_rational("0.5")
    with pytest.raises(TypeError):
        as_rational(0.5)
