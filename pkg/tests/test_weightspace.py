from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from gegenkit.classicpoly import bernoulli_poly, euler_poly
from gegenkit.errors import InvalidWeight
from gegenkit.gegenbauer import gegen_family, gegenbauer
from gegenkit.poly import Poly, X
from gegenkit.weightspace import (
    gegen_norm_ratio,
    inner_product,
    moment_ratios,
    project,
    prop1_coeffs,
    weighted_mean,
)

from conftest import GRID, lambdas, polys

h = F(1, 2)


def test_moment_ratios():
    assert moment_ratios(h, 0, 3)[1] == F(1, 3)
    assert moment_ratios(F(7, 5), 2, 0)[0] == 1
    assert moment_ratios(1, 0, 2)[1] == F(1, 4)
    # Legendre weight: mu_{2m}/mu_0 = 1/(2m+1)
    assert moment_ratios(h, 0, 5).ratios == tuple(F(1, 2 * m + 1) for m in range(6))


def test_invalid_weight():
    with pytest.raises(InvalidWeight):
        moment_ratios(F(-3, 4), 0, 2)
    assert moment_ratios(F(-3, 4), 1, 2)[0] == 1


def test_inner_product_examples():
    assert inner_product(Poly([1]), Poly([1]), 3) == 1
    assert inner_product(X, Poly([1]), F(2, 3)) == 0
    assert inner_product(gegenbauer(1, 1), gegenbauer(1, 2), 1) == 0


@pytest.mark.parametrize("lam, n, expected", [(1, 1, 1), (F(5, 7), 0, 1), (h, 2, F(1, 5)), (F(7, 3), 1, F(49, 15))])
def test_norm_ratio(lam, n, expected):
    assert gegen_norm_ratio(lam, n) == expected


@pytest.mark.parametrize("lam", GRID)
def test_orthogonality_and_norms(lam):
    basis = gegen_family(lam, 12)
    for m in range(13):
        for n in range(m, 13):
            value = inner_product(basis[m], basis[n], lam).ratio
            assert value == (gegen_norm_ratio(lam, n) if m == n else 0)


@pytest.mark.parametrize(
    "p, lam, expected",
    [
        (gegenbauer(F(3, 2), 3), F(3, 2), (0, 0, 0, 1)),
        (X**2, 1, (F(1, 4), 0, F(1, 4))),
        (X, F(5, 3), (0, F(3, 10))),
        # sympy weighted integrals
        (bernoulli_poly(2), h, (h, -1, F(2, 3))),
        (bernoulli_poly(2), 1, (F(5, 12), -h, F(1, 4))),
        (bernoulli_poly(2), F(3, 2), (F(11, 30), F(-1, 3), F(2, 15))),
        (euler_poly(2), 1, (F(1, 4), -h, F(1, 4))),
        (gegenbauer(2, 2) ** 2, 2, (5, 0, F(16, 5), 0, F(9, 5))),
    ],
)
def test_project_and_prop1(p, lam, expected):
    assert project(p, lam).d == tuple(F(v) for v in expected)
    assert prop1_coeffs(p, lam).d == tuple(F(v) for v in expected)


def test_prop1_constant():
    assert prop1_coeffs(Poly([1]), F(2, 9)).d == (1,)


@given(polys(max_degree=12), lambdas())
@settings(max_examples=40, deadline=None)
def test_projection_equals_prop1(p, lam):
    a = project(p, lam)
    assert a.d == prop1_coeffs(p, lam).d
    assert a.reconstruct() == p


@given(polys(), polys(), polys(), lambdas())
@settings(max_examples=40, deadline=None)
def test_inner_product_bilinear_symmetric(p, q, r, lam):
    assert inner_product(p, q, lam) == inner_product(q, p, lam)
    lhs = inner_product(p.scale(3) + q, r, lam).ratio
    assert lhs == 3 * inner_product(p, r, lam).ratio + inner_product(q, r, lam).ratio


def test_weighted_mean_shift():
    # (1 - x^2)^(lambda + 1/2) at lambda = 1/2 has mean of x^2 equal to 1/5
    assert weighted_mean(X**2, h, 1) == F(1, 5)
