from fractions import Fraction as F
from math import comb

import pytest

from gegenkit.classicpoly import (
    bernoulli_number,
    bernoulli_numbers,
    bernoulli_poly,
    euler_numbers,
    euler_poly,
)
from gegenkit.poly import Poly, X


def test_bernoulli_numbers():
    assert bernoulli_numbers(6) == (1, F(-1, 2), F(1, 6), 0, F(-1, 30), 0, F(1, 42))
    for n in range(1, 30):
        nums = bernoulli_numbers(n)
        assert sum(comb(n + 1, k) * nums[k] for k in range(n + 1)) == 0
        if n % 2 and n > 1:
            assert nums[n] == 0


def test_euler_numbers():
    assert euler_numbers(5) == (1, F(-1, 2), 0, F(1, 4), 0, F(-1, 2))
    for n in range(1, 30):
        nums = euler_numbers(n)
        assert sum(comb(n, k) * nums[k] for k in range(n + 1)) + nums[n] == 0


def test_small_polynomials():
    assert bernoulli_poly(0) == Poly([1])
    assert bernoulli_poly(1) == Poly([F(-1, 2), 1])
    assert bernoulli_poly(2) == Poly([F(1, 6), -1, 1])
    assert euler_poly(1) == Poly([F(-1, 2), 1])
    assert euler_poly(2) == Poly([0, -1, 1])


@pytest.mark.parametrize("n", range(0, 21))
def test_difference_equations(n):
    b, e = bernoulli_poly(n), euler_poly(n)
    shifted = lambda p: p.compose_affine(1, 1)
    expected = (X ** (n - 1)).scale(n) if n else Poly()
    assert shifted(b) - b == expected
    assert shifted(e) + e == (X**n).scale(2)


@pytest.mark.parametrize("n", range(1, 21))
def test_appell_derivatives(n):
    assert bernoulli_poly(n).differentiate() == bernoulli_poly(n - 1).scale(n)
    assert euler_poly(n).differentiate() == euler_poly(n - 1).scale(n)


def test_value_at_zero():
    assert bernoulli_poly(12)(0) == bernoulli_number(12)
