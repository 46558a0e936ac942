"""Gegenbauer polynomials C_n^(lambda) built by four independent routes.

The routes are the explicit hypergeometric-type sum in powers of (x-1)/2,
the three-term recurrence, a rescaled Jacobi polynomial, and the Rodrigues
formula carried out on a symbolic weighted form.  A fifth, value-only route
expands the generating function (1 - 2 x t + t^2)^(-lambda) as a power
series in t.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .errors import DegenerateRatio, DegreeUnderflow
from .exactnum import (
    HALF,
    GegenParam,
    RationalLike,
    as_param,
    as_rational,
    binom_rational,
    rising_factorial,
)
from .poly import ONE, X, Poly

ONE_MINUS_X2 = Poly([1, 0, -1])


class Route(enum.Enum):
    EXPLICIT_SUM = "explicit_sum"
    RECURRENCE = "recurrence"
    JACOBI_FORM = "jacobi_form"
    RODRIGUES = "rodrigues"


@dataclass(frozen=True)
class GegenPoly:
    param: GegenParam
    n: int
    poly: Poly
    route: Route

    @property
    def lam(self) -> Fraction:
        return self.param.lam

    def __call__(self, x: RationalLike) -> Fraction:
        return self.poly.eval_rational(x)


def value_at_one(param: GegenParam, n: int) -> Fraction:
    """C_n^(lambda)(1) = binom(n + 2 lambda - 1, n)."""
    return binom_rational(n + 2 * as_param(param).lam - 1, n)


def leading_coefficient(param: GegenParam, n: int) -> Fraction:
    """Leading coefficient 2^n binom(lambda + n - 1, n)."""
    return 2**n * binom_rational(as_param(param).lam + n - 1, n)


def gegen_explicit(param: GegenParam | RationalLike, n: int) -> GegenPoly:
    """Finite sum in powers of (x - 1)/2 with Pochhammer weights."""
    param = as_param(param)
    lam = param.lam
    u = Poly([-HALF, HALF])
    total = Poly()
    u_pow = ONE
    for k in range(n + 1):
        c = binom_rational(n, k) * rising_factorial(2 * lam + n, k) / rising_factorial(lam + HALF, k)
        total = total + u_pow.scale(c)
        u_pow = u_pow * u
    poly = total.scale(binom_rational(n + 2 * lam - 1, n))
    return GegenPoly(param, n, poly, Route.EXPLICIT_SUM)


@lru_cache(maxsize=256)
def _recurrence_table(lam: Fraction, n: int) -> tuple[Poly, ...]:
    # lru_cache is safe for concurrent readers; entries are immutable.
    table = [ONE, Poly([0, 2 * lam])]
    for m in range(2, n + 1):
        nxt = (X * table[m - 1]).scale(2 * (m + lam - 1)) - table[m - 2].scale(m + 2 * lam - 2)
        table.append(nxt.scale(Fraction(1, m)))
    return tuple(table[: n + 1])


def gegen_recurrence(param: GegenParam | RationalLike, n: int) -> GegenPoly:
    """C_0 = 1, C_1 = 2 lambda x, n C_n = 2x(n + lambda - 1) C_{n-1} - (n + 2 lambda - 2) C_{n-2}."""
    param = as_param(param)
    return GegenPoly(param, n, _recurrence_table(param.lam, n)[n], Route.RECURRENCE)


def gegen_family(param: GegenParam | RationalLike, n_max: int) -> list[Poly]:
    """[C_0, ..., C_{n_max}] for one order, sharing the recurrence cache."""
    param = as_param(param)
    return list(_recurrence_table(param.lam, n_max))


def gegenbauer(param: GegenParam | RationalLike, n: int) -> Poly:
    """Shortcut returning the polynomial C_n^(lambda) itself."""
    return gegen_recurrence(param, n).poly


def jacobi_explicit(alpha: RationalLike, beta: RationalLike, n: int) -> Poly:
    """Jacobi P_n^(alpha, beta) as a sum of ((x-1)/2)^k ((x+1)/2)^(n-k) terms."""
    alpha, beta = as_rational(alpha), as_rational(beta)
    minus = Poly([-HALF, HALF])
    plus = Poly([HALF, HALF])
    total = Poly()
    for k in range(n + 1):
        c = binom_rational(n + alpha, n - k) * binom_rational(n + beta, k)
        if c:
            total = total + (minus**k * plus ** (n - k)).scale(c)
    return total


def gegen_from_jacobi(param: GegenParam | RationalLike, n: int) -> GegenPoly:
    """C_n = [binom(n + 2 lambda - 1, n) / binom(n + lambda - 1/2, n)] P_n^(lambda-1/2, lambda-1/2)."""
    param = as_param(param)
    lam = param.lam
    den = binom_rational(n + lam - HALF, n)
    if den == 0:
        raise DegenerateRatio(f"binom({n} + {lam} - 1/2, {n}) vanishes")
    ratio = binom_rational(n + 2 * lam - 1, n) / den
    a = lam - HALF
    return GegenPoly(param, n, jacobi_explicit(a, a, n).scale(ratio), Route.JACOBI_FORM)


@dataclass(frozen=True)
class WeightedForm:
    """(1 - x^2)^(lambda - 1/2 + offset) * poly, kept symbolic in the exponent."""

    lam: Fraction
    poly: Poly
    offset: int

    def derivative(self) -> "WeightedForm":
        if self.offset <= 0:
            raise ValueError("derivative would leave the closed family (offset must stay >= 0)")
        expo = self.lam - HALF + self.offset
        new = ONE_MINUS_X2 * self.poly.differentiate() - (X * self.poly).scale(2 * expo)
        return WeightedForm(self.lam, new, self.offset - 1)


def rodrigues_form(param: GegenParam | RationalLike, n: int) -> GegenPoly:
    """Scaled n-th derivative of (1 - x^2)^(n + lambda - 1/2), divided by the weight."""
    param = as_param(param)
    lam = param.lam
    form = WeightedForm(lam, ONE, n)
    for _ in range(n):
        form = form.derivative()
    const = Fraction((-2) ** n) * rising_factorial(lam, n) / (
        rising_factorial(1, n) * rising_factorial(n + 2 * lam, n)
    )
    return GegenPoly(param, n, form.poly.scale(const), Route.RODRIGUES)


def gegen_series_coeff(param: GegenParam | RationalLike, x0: RationalLike, N: int) -> list[Fraction]:
    """Taylor coefficients in t of (1 - 2 x0 t + t^2)^(-lambda), up to t^N.

    Uses (1 - u)^(-lambda) = sum_j (lambda)_j / j! u^j with u = 2 x0 t - t^2;
    only u^j with j <= N can reach degree N.
    """
    lam = as_param(param).lam
    x0 = as_rational(x0)
    u = [Fraction(0), 2 * x0, Fraction(-1)]
    out = [Fraction(0)] * (N + 1)
    u_pow = [Fraction(1)]
    coef = Fraction(1)
    for j in range(N + 1):
        for i, c in enumerate(u_pow[: N + 1]):
            out[i] += coef * c
        coef = coef * (lam + j) / (j + 1)
        nxt = [Fraction(0)] * min(len(u_pow) + 2, N + 1)
        for i, a in enumerate(u_pow):
            if a == 0:
                continue
            for s, b in enumerate(u):
                if b and i + s <= N:
                    nxt[i + s] += a * b
        u_pow = nxt
    return out


class DerivativeLadder(NamedTuple):
    """d^k/dx^k C_n^(lambda) written as ``factor * target``."""

    factor: Fraction
    target: GegenPoly

    @property
    def poly(self) -> Poly:
        return self.target.poly.scale(self.factor)


def derivative_factor(lam: RationalLike, k: int) -> Fraction:
    """2^k (lambda)_k, the constant obtained by iterating d/dx C_n = 2 lambda C_{n-1}^(lambda+1)."""
    return 2**k * rising_factorial(lam, k)


def printed_derivative_factor(lam: RationalLike, k: int) -> Fraction:
    """The literal-power reading 2^k lambda^k of the k-th derivative constant."""
    return Fraction(2) ** k * as_rational(lam) ** k


def gegen_derivative(g: GegenPoly, k: int) -> DerivativeLadder:
    """Express the k-th derivative of ``g`` as 2^k (lambda)_k C_{n-k}^(lambda+k).

    The result is checked against formal differentiation of ``g.poly``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > g.n:
        raise DegreeUnderflow(f"cannot take {k} derivatives of a degree-{g.n} polynomial")
    target = gegen_recurrence(GegenParam(g.lam + k), g.n - k)
    out = DerivativeLadder(derivative_factor(g.lam, k), target)
    if out.poly != g.poly.differentiate(k):
        raise AssertionError("derivative ladder disagrees with formal differentiation")
    return out


def ode_residual_poly(y: Poly, lam: RationalLike, n: int) -> Poly:
    """(1 - x^2) y'' - (2 lambda + 1) x y' + n (n + 2 lambda) y."""
    lam = as_rational(lam)
    d1 = y.differentiate()
    d2 = d1.differentiate()
    return ONE_MINUS_X2 * d2 - (X * d1).scale(2 * lam + 1) + y.scale(n * (n + 2 * lam))


def ode_residual(g: GegenPoly) -> Poly:
    return ode_residual_poly(g.poly, g.lam, g.n)


def parity_defect(g: GegenPoly) -> Poly:
    """C_n(-x) - (-1)^n C_n(x); identically zero for a genuine Gegenbauer polynomial."""
    return g.poly.compose_affine(-1, 0) - g.poly.scale((-1) ** g.n)
