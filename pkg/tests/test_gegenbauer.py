from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from gegenkit.errors import DegreeUnderflow
from gegenkit.exactnum import GegenParam, binom_rational, rising_factorial
from gegenkit.gegenbauer import (
    WeightedForm,
    gegen_derivative,
    gegen_explicit,
    gegen_from_jacobi,
    gegen_recurrence,
    gegen_series_coeff,
    jacobi_explicit,
    leading_coefficient,
    ode_residual,
    ode_residual_poly,
    parity_defect,
    printed_derivative_factor,
    rodrigues_form,
    value_at_one,
)
from gegenkit.poly import ONE, Poly

from conftest import GRID, lambdas

h = F(1, 2)


@pytest.mark.parametrize(
    "build", [gegen_explicit, gegen_recurrence, gegen_from_jacobi, rodrigues_form]
)
@pytest.mark.parametrize(
    "lam, n, expected",
    [
        (1, 0, Poly([1])),
        (1, 1, Poly([0, 2])),
        (1, 2, Poly([-1, 0, 4])),
        (1, 3, Poly([0, -4, 0, 8])),
        (h, 2, Poly([-h, 0, F(3, 2)])),
        (h, 3, Poly([0, F(-3, 2), 0, F(5, 2)])),
        (F(3, 2), 2, Poly([F(-3, 2), 0, F(15, 2)])),
        # sympy gegenbauer(5, 3/2) and gegenbauer(3, 7/3), expanded
        (F(3, 2), 5, Poly([0, F(105, 8), 0, F(-315, 4), 0, F(693, 8)])),
        (F(7, 3), 3, Poly([0, F(-140, 9), 0, F(3640, 81)])),
    ],
)
def test_routes_match_known_polynomials(build, lam, n, expected):
    assert build(GegenParam(lam), n).poly == expected


@pytest.mark.parametrize("lam", GRID)
def test_route_agreement_on_grid(lam):
    for n in range(13):
        ref = gegen_explicit(lam, n).poly
        assert gegen_recurrence(lam, n).poly == ref
        assert gegen_from_jacobi(lam, n).poly == ref
        assert rodrigues_form(lam, n).poly == ref


@given(lambdas(), st.integers(0, 7))
@settings(max_examples=40, deadline=None)
def test_route_agreement_random_lambda(lam, n):
    ref = gegen_recurrence(lam, n).poly
    assert gegen_explicit(lam, n).poly == ref
    assert rodrigues_form(lam, n).poly == ref


def test_jacobi_explicit():
    assert jacobi_explicit(0, 0, 1) == Poly([0, 1])
    assert jacobi_explicit(h, h, 1) == Poly([0, F(3, 2)])
    assert jacobi_explicit(F(2, 7), -h, 0) == ONE
    # Legendre P_2
    assert jacobi_explicit(0, 0, 2) == Poly([-h, 0, F(3, 2)])


def test_series_coefficients():
    assert gegen_series_coeff(1, 1, 2) == [1, 2, 3]
    assert gegen_series_coeff(F(5, 3), 0, 1) == [1, 0]
    assert gegen_series_coeff(h, h, 2) == [1, h, F(-1, 8)]


@given(lambdas(), st.sampled_from([F(0), F(1, 2), F(-1, 2), F(1), F(-1), F(2, 3)]))
@settings(max_examples=30, deadline=None)
def test_series_matches_evaluation(lam, x0):
    series = gegen_series_coeff(lam, x0, 8)
    for n, value in enumerate(series):
        assert value == gegen_recurrence(lam, n)(x0)


def test_derivative_ladder_examples():
    c2 = gegen_recurrence(1, 2)
    first = gegen_derivative(c2, 1)
    assert first.factor == 2 and first.target.lam == 2 and first.poly == Poly([0, 8])
    second = gegen_derivative(c2, 2)
    assert second.factor == 8 and second.poly == Poly([8])
    assert gegen_derivative(c2, 0).poly == c2.poly
    with pytest.raises(DegreeUnderflow):
        gegen_derivative(c2, 3)


def test_literal_power_reading_of_kth_derivative_fails():
    c2 = gegen_recurrence(1, 2)
    assert printed_derivative_factor(1, 2) == 4
    assert c2.poly.differentiate(2) != gegen_recurrence(3, 0).poly.scale(4)


@pytest.mark.parametrize("lam", GRID)
def test_structural_identities(lam):
    param = GegenParam(lam)
    for n in range(13):
        g = gegen_recurrence(param, n)
        assert parity_defect(g).is_zero()
        assert ode_residual(g).is_zero()
        assert g(1) == value_at_one(param, n) == binom_rational(n + 2 * param.lam - 1, n)
        assert g.poly.leading == leading_coefficient(param, n)
        for k in range(n + 1):
            ladder = gegen_derivative(g, k)
            assert ladder.factor == 2**k * rising_factorial(param.lam, k)


def test_ode_negative_control():
    # (1 - x^2) 2 - 3x (2x) + 8 x^2 = 2
    assert ode_residual_poly(Poly([0, 0, 1]), 1, 2) == Poly([2])
    assert ode_residual(gegen_recurrence(F(3, 2), 5)).is_zero()


def test_weighted_form_step():
    # d/dx (1 - x^2)^(3/2) = -3x (1 - x^2)^(1/2) at lambda = 1
    wf = WeightedForm(F(1), ONE, 1).derivative()
    assert wf.offset == 0 and wf.poly == Poly([0, -3])
    with pytest.raises(ValueError):
        wf.derivative()


def test_rodrigues_small_cases():
    assert rodrigues_form(1, 1).poly == Poly([0, 2])
    assert rodrigues_form(F(9, 4), 0).poly == ONE
    assert rodrigues_form(h, 2).poly == Poly([-h, 0, F(3, 2)])
