"""Bernoulli and Euler numbers and polynomials, computed exactly.

Conventions follow the exponential generating functions t e^{xt} / (e^t - 1)
and 2 e^{xt} / (e^t + 1), so B_1 = -1/2 and the Euler numbers are the
rational values E_n = E_n(0) (E_1 = -1/2), not the integer secant numbers.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .poly import Poly


@lru_cache(maxsize=None)
def _bernoulli_table(N: int) -> tuple:
    nums = [Fraction(1)]
    for n in range(1, N + 1):
        # sum_{k=0}^{n} binom(n+1, k) B_k = 0
        acc = sum((comb(n + 1, k) * nums[k] for k in range(n)), Fraction(0))
        nums.append(-acc / (n + 1))
    return tuple(nums)


@lru_cache(maxsize=None)
def _euler_table(N: int) -> tuple:
    nums = [Fraction(1)]
    for n in range(1, N + 1):
        # (E + 1)^n + E_n = 0 for n >= 1, i.e. 2 E_n + sum_{k<n} binom(n, k) E_k = 0
        acc = sum((comb(n, k) * nums[k] for k in range(n)), Fraction(0))
        nums.append(-acc / 2)
    return tuple(nums)


def bernoulli_numbers(N: int) -> tuple:
    """(B_0, ..., B_N)."""
    return _bernoulli_table(N)


def euler_numbers(N: int) -> tuple:
    """(E_0, ..., E_N) with E_n = E_n(0)."""
    return _euler_table(N)


def bernoulli_number(n: int) -> Fraction:
    return _bernoulli_table(n)[n]


def euler_number(n: int) -> Fraction:
    return _euler_table(n)[n]


def _umbral(nums: tuple, n: int) -> Poly:
    return Poly(comb(n, l) * nums[n - l] for l in range(n + 1))


def bernoulli_poly(n: int) -> Poly:
    """B_n(x) = sum_l binom(n, l) B_{n-l} x^l."""
    return _umbral(_bernoulli_table(n), n)


def euler_poly(n: int) -> Poly:
    """E_n(x) = sum_l binom(n, l) E_{n-l} x^l."""
    return _umbral(_euler_table(n), n)
