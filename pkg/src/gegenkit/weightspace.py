"""Exact inner products for the weight (1 - x^2)^(lambda - 1/2 + j).

All integrals are reported in units of the base moment
mu_0^(j) = B(1/2, lambda + j + 1/2), which is never evaluated.  Even moments
then satisfy mu_{2m} / mu_0 = (1/2)_m / (lambda + j + 1)_m, so every inner
product of polynomials is an exact rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .coeffs import CoeffVector, Family, Method
from .errors import InvalidWeight
from .exactnum import HALF, GegenParam, RationalLike, as_param, as_rational, rising_factorial
from .gegenbauer import gegen_family
from .poly import Poly


@dataclass(frozen=True)
class MomentTable:
    lam: Fraction
    shift: int
    ratios: tuple

    def __getitem__(self, m: int) -> Fraction:
        return self.ratios[m]


@dataclass(frozen=True)
class InnerProductValue:
    """<p, q> divided by mu_0 for the same shifted weight."""

    ratio: Fraction
    shift: int = 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, InnerProductValue):
            return (self.ratio, self.shift) == (other.ratio, other.shift)
        if isinstance(other, (int, Fraction)):
            return self.ratio == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ratio, self.shift))


def _check_weight(lam: Fraction, shift: int) -> None:
    if shift < 0:
        raise ValueError("shift must be non-negative")
    if lam + shift <= -HALF:
        raise InvalidWeight(f"weight exponent {lam + shift - HALF} is not integrable")


@lru_cache(maxsize=512)
def _ratios(lam: Fraction, shift: int, maxdeg: int) -> tuple:
    out = [Fraction(1)]
    for m in range(1, maxdeg + 1):
        out.append(out[-1] * (m - HALF) / (lam + shift + m))
    return tuple(out)


def moment_ratios(param: GegenParam | RationalLike, shift: int, maxdeg: int) -> MomentTable:
    """Even-moment ratios mu_{2m}/mu_0 for m = 0..maxdeg."""
    lam = param.lam if isinstance(param, GegenParam) else as_rational(param)
    _check_weight(lam, shift)
    return MomentTable(lam, shift, _ratios(lam, shift, maxdeg))


def weighted_mean(p: Poly, lam: Fraction, shift: int = 0) -> Fraction:
    """Integral of p against the shifted weight, in mu_0 units."""
    _check_weight(lam, shift)
    if p.is_zero():
        return Fraction(0)
    ratios = _ratios(lam, shift, p.degree // 2)
    return sum((p.coeffs[2 * m] * ratios[m] for m in range(p.degree // 2 + 1)), Fraction(0))


def inner_product(p: Poly, q: Poly, param: GegenParam | RationalLike, shift: int = 0) -> InnerProductValue:
    lam = param.lam if isinstance(param, GegenParam) else as_rational(param)
    return InnerProductValue(weighted_mean(p * q, lam, shift), shift)


def gegen_norm_ratio(param: GegenParam | RationalLike, n: int) -> Fraction:
    """<C_n, C_n> / mu_0 = lambda (2 lambda)_n / (n! (n + lambda))."""
    lam = as_param(param).lam
    return lam * rising_factorial(2 * lam, n) / (rising_factorial(1, n) * (n + lam))


def project(p: Poly, param: GegenParam | RationalLike, n: int | None = None) -> CoeffVector:
    """Orthogonal projection d_k = <p, C_k> / <C_k, C_k>, with reconstruction check."""
    param = as_param(param)
    n = max(p.degree, 0) if n is None else n
    if p.degree > n:
        raise ValueError(f"degree {p.degree} exceeds requested n = {n}")
    basis = gegen_family(param, n)
    d = tuple(
        weighted_mean(p * basis[k], param.lam) / gegen_norm_ratio(param, k) for k in range(n + 1)
    )
    out = CoeffVector(param, n, d, Method.PROJECTION)
    if out.reconstruct() != p:
        raise AssertionError("projection failed to reconstruct its input")
    return out


def prop1_coeffs(p: Poly, param: GegenParam | RationalLike, n: int | None = None) -> CoeffVector:
    """Coefficients from the Rodrigues-type functional, after k integrations by parts.

    The boundary terms vanish because the weight exponent stays positive, which
    leaves d_k = (k + lambda) / (2^k (lambda)_{k+1}) * <p^(k)>_k, the last factor
    being the mean of the k-th derivative against the k-shifted weight.
    """
    param = as_param(param)
    lam = param.lam
    n = max(p.degree, 0) if n is None else n
    if p.degree > n:
        raise ValueError(f"degree {p.degree} exceeds requested n = {n}")
    d = []
    deriv = p
    for k in range(n + 1):
        const = (k + lam) / (2**k * rising_factorial(lam, k + 1))
        d.append(const * weighted_mean(deriv, lam, k))
        deriv = deriv.differentiate()
    return CoeffVector(param, n, tuple(d), Method.PROP1)
