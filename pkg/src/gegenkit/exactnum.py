"""Exact rational scalars and the rising-factorial combinatorics built on them.

Every scalar in the exact backend is a :class:`fractions.Fraction`.  Gamma
functions are never evaluated at non-integer points; each Gamma quotient is
reduced to a rising factorial with an integer offset first.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

from .errors import InvalidParameter, InvalidWeight, PoleCrossing

Rational = Fraction
RationalLike = Union[Fraction, int, str]

HALF = Fraction(1, 2)


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction without ever going through a float.

    Strings such as ``"3/2"``, ``"-1/4"`` and ``"7"`` are accepted.  Floats are
    rejected because they would silently smuggle rounding into exact code.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    """Serialise as ``"num/den"``, or ``"num"`` when the denominator is 1."""
    return str(Fraction(q))


def rising_factorial(a: RationalLike, k: int) -> Fraction:
    """Pochhammer symbol (a)_k = a (a+1) ... (a+k-1); equals 1 for k = 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    a = as_rational(a)
    out = Fraction(1)
    for j in range(k):
        out *= a + j
    return out


def gamma_ratio(a: RationalLike, m: int) -> Fraction:
    """Gamma(a + m) / Gamma(a) for a non-negative integer offset ``m``.

    Raises :class:`PoleCrossing` if some ``a + j`` with ``0 <= j < m`` is zero,
    i.e. the quotient would be taken across a pole of Gamma.
    """
    a = as_rational(a)
    if m < 0:
        raise ValueError("m must be non-negative")
    for j in range(m):
        if a + j == 0:
            raise PoleCrossing(f"Gamma({a} + {j}) is a pole")
    return rising_factorial(a, m)


def binom_rational(a: RationalLike, k: int) -> Fraction:
    """Generalised binomial a (a-1) ... (a-k+1) / k! for rational ``a``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    a = as_rational(a)
    num = Fraction(1)
    den = 1
    for j in range(k):
        num *= a - j
        den *= j + 1
    return num / den


@dataclass(frozen=True, order=True)
class GegenParam:
    """The Gegenbauer order lambda, exact, with lambda > -1/2 and lambda != 0."""

    lam: Fraction

    def __init__(self, lam: RationalLike) -> None:
        q = as_rational(lam)
        if q <= -HALF:
            raise InvalidWeight(f"lambda must exceed -1/2, got {q}")
        if q == 0:
            raise InvalidParameter("lambda = 0 is excluded")
        object.__setattr__(self, "lam", q)

    def __str__(self) -> str:
        return format_rational(self.lam)

    @property
    def is_integer(self) -> bool:
        return self.lam.denominator == 1

    def shifted(self, j: int) -> "GegenParam":
        return GegenParam(self.lam + j)


def as_param(value: "GegenParam | RationalLike") -> GegenParam:
    return value if isinstance(value, GegenParam) else GegenParam(value)
