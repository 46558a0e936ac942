"""Closed-form Gegenbauer expansion coefficients and their oracle checks.

Families covered: monomials x^n, Bernoulli and Euler polynomials, products
C_{n-k} C_k (linearization), and C_n itself (self-connection).  Every closed
form is compared with :func:`gegenkit.weightspace.project`; disagreements are
returned as :class:`ErrataRecord` data rather than raised.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .classicpoly import bernoulli_numbers, bernoulli_poly, euler_numbers, euler_poly
from .coeffs import CoeffVector, Family, Method, Scalar, format_scalar
from .errors import InvalidPair
from .exactnum import (
    HALF,
    GegenParam,
    RationalLike,
    as_param,
    binom_rational,
    format_rational,
    rising_factorial,
)
from .gegenbauer import (
    derivative_factor,
    gegen_family,
    gegenbauer,
    printed_derivative_factor,
)
from .poly import Poly
from .weightspace import project

FLOAT_RTOL = 1e-10
FLOAT_ATOL = 1e-13

PRODUCT_VARIANTS = ("corrected", "as-printed", "as-printed-literal")
SELF_VARIANTS = ("oracle-delta", "as-printed", "as-printed-rising")
DERIVATIVE_VARIANTS = ("rising", "as-printed")
CLOSED_VARIANTS = ("closed-form",)

VARIANTS = {
    Family.MONOMIAL: CLOSED_VARIANTS,
    Family.BERNOULLI: CLOSED_VARIANTS,
    Family.EULER: CLOSED_VARIANTS,
    Family.PRODUCT: PRODUCT_VARIANTS,
    Family.SELF: SELF_VARIANTS,
    Family.DERIVATIVE: DERIVATIVE_VARIANTS,
}

# Variants that evaluate a formula exactly as typeset; their errata are
# informational and do not fail a verification run.
INFORMATIONAL_VARIANTS = frozenset({"as-printed", "as-printed-literal", "as-printed-rising"})


def _fact(n: int) -> int:
    return math.factorial(n)


def monomial_coeffs(param: GegenParam | RationalLike, n: int) -> CoeffVector:
    """x^n = sum over k = n mod 2 of (k+lambda) n! / (2^n ((n-k)/2)! (lambda)_{(n+k)/2+1}) C_k."""
    param = as_param(param)
    lam = param.lam
    d = []
    for k in range(n + 1):
        if (n - k) % 2:
            d.append(Fraction(0))
            continue
        half = (n - k) // 2
        d.append((k + lam) * _fact(n) / (2**n * _fact(half) * rising_factorial(lam, (n + k) // 2 + 1)))
    return CoeffVector(param, n, tuple(d), Method.CLOSED_FORM, Family.MONOMIAL, variant="closed-form")


def _appell_closed_form(nums: Sequence[Fraction], lam: Fraction, n: int) -> list[Fraction]:
    # Gamma(lambda) / Gamma(k + lambda + l/2 + 1) = 1 / (lambda)_{k + l/2 + 1}
    d = []
    for k in range(n + 1):
        inner = Fraction(0)
        for l in range(0, n - k + 1, 2):
            inner += Fraction(
                math.comb(n - k, l) * _fact(l), 2**l * _fact(l // 2)
            ) * nums[n - k - l] / rising_factorial(lam, k + l // 2 + 1)
        d.append(_fact(n) * (k + lam) / (2**k * _fact(n - k)) * inner)
    return d


def bernoulli_coeffs(param: GegenParam | RationalLike, n: int) -> CoeffVector:
    param = as_param(param)
    d = _appell_closed_form(bernoulli_numbers(n), param.lam, n)
    return CoeffVector(param, n, tuple(d), Method.CLOSED_FORM, Family.BERNOULLI, variant="closed-form")


def euler_coeffs(param: GegenParam | RationalLike, n: int) -> CoeffVector:
    param = as_param(param)
    d = _appell_closed_form(euler_numbers(n), param.lam, n)
    return CoeffVector(param, n, tuple(d), Method.CLOSED_FORM, Family.EULER, variant="closed-form")


def _poch_table(a: Fraction, m_max: int) -> list[Fraction]:
    out = [Fraction(1)]
    for j in range(m_max):
        out.append(out[-1] * (a + j))
    return out


def _product_inner_sums(lam: Fraction, n: int, k: int, literal_power: bool) -> list[Fraction]:
    """(r + lambda) binom(..) binom(..) times the double sum over p and m, for each r."""
    nk = n - k
    h = _poch_table(lam + HALF, n + 1)
    two_lam = _poch_table(2 * lam, 2 * n + 2)
    poch_nk = _poch_table(2 * lam + nk, n + 1)
    if literal_power:
        base = 2 * lam + k
        first = [base**m for m in range(n + 1)]
    else:
        first = _poch_table(2 * lam + k, n + 1)
    # inner m-sum depends only on p
    msum = []
    for p in range(n + 1):
        acc = Fraction(0)
        for m in range(max(0, p - nk), min(k, p) + 1):
            acc += (
                math.comb(nk, p - m) * math.comb(k, m) * first[m] * poch_nk[p - m]
                / (h[m] * h[p - m])
            )
        msum.append(acc)
    lead = binom_rational(nk + 2 * lam - 1, nk) * binom_rational(k + 2 * lam - 1, k)
    out = []
    for r in range(n + 1):
        s = Fraction(0)
        for p in range(r, n + 1):
            if msum[p] == 0:
                continue
            term = msum[p] * _fact(p) * h[p] / (_fact(p - r) * two_lam[r + p + 1])
            s += term if (p + r) % 2 == 0 else -term
        out.append((r + lam) * lead * s)
    return out


def product_coeffs(
    param: GegenParam | RationalLike, n: int, k: int, variant: str = "corrected"
) -> CoeffVector:
    """Linearization C_{n-k} C_k = sum_r d_r C_r.

    ``corrected`` uses the leading constant 2; ``as-printed`` the constant
    2^(lambda+1); ``as-printed-literal`` additionally reads the Pochhammer
    (2 lambda + k)_m as an ordinary power.  A constant 2^(lambda+1) is exact
    only for integer lambda; otherwise those variants return floats.
    """
    if variant not in PRODUCT_VARIANTS:
        raise ValueError(f"unknown product variant {variant!r}")
    if not 0 <= k <= n:
        raise InvalidPair(f"need n >= k >= 0, got n={n}, k={k}")
    param = as_param(param)
    lam = param.lam
    sums = _product_inner_sums(lam, n, k, literal_power=(variant == "as-printed-literal"))
    if variant == "corrected":
        d = tuple(2 * s for s in sums)
    elif param.is_integer:
        const = Fraction(2) ** (int(lam) + 1)
        d = tuple(const * s for s in sums)
    else:
        const = 2.0 ** (float(lam) + 1.0)
        d = tuple(const * float(s) for s in sums)
    return CoeffVector(param, n, d, Method.CLOSED_FORM, Family.PRODUCT, k=k, variant=variant)


def _self_connection_printed(lam: Fraction, n: int, rising: bool) -> list[Fraction]:
    top = n + lam - HALF
    d = []
    for k in range(n + 1):
        lam_pow = rising_factorial(lam, k) if rising else lam**k
        pre = lam_pow * (k + lam) * 2 ** (2 * k + 1) * binom_rational(n + k + 2 * lam - 1, n - k)
        pre /= binom_rational(top, n - k)
        den_common = binom_rational(k + 2 * lam + n - 1, n + k) * math.comb(n + k, k) * _fact(k)
        s = Fraction(0)
        for l in range(n - k + 1):
            num = (
                binom_rational(top, n - k - l)
                * binom_rational(top, l)
                * binom_rational(k + lam + l - HALF, l)
                * binom_rational(lam + n - l - HALF, n - l)
            )
            term = num / (math.comb(n, l) * den_common)
            s += -term if l % 2 else term
        d.append(pre * s)
    return d


def self_connection_coeffs(
    param: GegenParam | RationalLike, n: int, variant: str = "oracle-delta"
) -> CoeffVector:
    """Coefficients of C_n^(lambda) in its own basis.

    ``oracle-delta`` is the unit vector forced by uniqueness of the expansion.
    ``as-printed`` evaluates the typeset closed form with lambda^k, and
    ``as-printed-rising`` the same form with (lambda)_k in place of lambda^k.
    """
    if variant not in SELF_VARIANTS:
        raise ValueError(f"unknown self-connection variant {variant!r}")
    param = as_param(param)
    if variant == "oracle-delta":
        d = [Fraction(0)] * (n + 1)
        d[n] = Fraction(1)
    else:
        d = _self_connection_printed(param.lam, n, rising=(variant == "as-printed-rising"))
    return CoeffVector(param, n, tuple(d), Method.CLOSED_FORM, Family.SELF, variant=variant)


def source_poly(family: Family, param: GegenParam, n: int, k: Optional[int] = None) -> Poly:
    """The polynomial a family expands: x^n, B_n, E_n, C_{n-k} C_k or C_n."""
    if family is Family.MONOMIAL:
        return Poly.monomial(n)
    if family is Family.BERNOULLI:
        return bernoulli_poly(n)
    if family is Family.EULER:
        return euler_poly(n)
    if family is Family.PRODUCT:
        if k is None or not 0 <= k <= n:
            raise InvalidPair(f"need n >= k >= 0, got n={n}, k={k}")
        basis = gegen_family(param, n)
        return basis[n - k] * basis[k]
    if family is Family.SELF:
        return gegenbauer(param, n)
    raise ValueError(f"family {family.value} has no source polynomial")


def closed_form(
    family: Family, param: GegenParam | RationalLike, n: int, k: Optional[int] = None, variant: Optional[str] = None
) -> CoeffVector:
    param = as_param(param)
    if family is Family.MONOMIAL:
        return monomial_coeffs(param, n)
    if family is Family.BERNOULLI:
        return bernoulli_coeffs(param, n)
    if family is Family.EULER:
        return euler_coeffs(param, n)
    if family is Family.PRODUCT:
        return product_coeffs(param, n, 0 if k is None else k, variant or "corrected")
    if family is Family.SELF:
        return self_connection_coeffs(param, n, variant or "oracle-delta")
    raise ValueError(f"family {family.value} has no closed form")


# ---------------------------------------------------------------------------
# errata


LOCATIONS = {
    Family.MONOMIAL: "monomial expansion closed form",
    Family.BERNOULLI: "Bernoulli polynomial expansion closed form",
    Family.EULER: "Euler polynomial expansion closed form",
    Family.PRODUCT: "product linearization closed form",
    Family.SELF: "self-connection closed form",
    Family.DERIVATIVE: "k-th derivative constant",
}


@dataclass(frozen=True)
class ErrataRecord:
    """One exact disagreement between a typeset formula and the oracle.

    ``n`` and ``k`` mirror the formula's own parameters: for products ``k`` is
    the split index and ``r`` the coefficient index; for the other expansion
    families ``k`` is the coefficient index; for derivatives ``k`` is the order.
    """

    identity: str
    variant: str
    location: str
    lam: Fraction
    n: int
    k: int
    r: Optional[int]
    printed_value: Scalar
    oracle_value: Scalar
    ratio_or_diff: Scalar
    comparison: str

    def sort_key(self) -> tuple:
        return (self.identity, self.variant, self.lam, self.n, self.k, -1 if self.r is None else self.r)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["lambda"] = format_rational(out.pop("lam"))
        for key in ("printed_value", "oracle_value", "ratio_or_diff"):
            out[key] = format_scalar(out[key])
        order = ["identity", "variant", "location", "lambda", "n", "k", "r",
                 "printed_value", "oracle_value", "ratio_or_diff", "comparison"]
        return {key: out[key] for key in order}


def _make_record(family: Family, variant: str, lam: Fraction, n: int, k: int, r: Optional[int],
                 printed: Scalar, oracle: Scalar) -> ErrataRecord:
    if oracle != 0:
        if isinstance(printed, float) or isinstance(oracle, float):
            value, kind = float(printed) / float(oracle), "ratio"
        else:
            value, kind = printed / oracle, "ratio"
    else:
        value, kind = printed - oracle, "difference"
    location = LOCATIONS[family]
    if family is Family.PRODUCT and variant != "corrected":
        location += " (leading constant 2^(lambda+1))"
    if family is Family.DERIVATIVE and variant == "as-printed":
        location += " (2^k lambda^k)"
    return ErrataRecord(family.value, variant, location, lam, n, k, r, printed, oracle, value, kind)


def _agree(printed: Scalar, oracle: Fraction) -> bool:
    if isinstance(printed, Fraction):
        return printed == oracle
    o = float(oracle)
    if o == 0:
        return abs(printed) <= FLOAT_ATOL
    return abs(printed - o) <= FLOAT_RTOL * abs(o)


def check_cell(family: Family, variant: str, lam: Fraction, n: int, k: Optional[int] = None) -> list[ErrataRecord]:
    """Compare one (lambda, n[, k]) cell of a family with the projection oracle."""
    param = GegenParam(lam)
    if family is Family.DERIVATIVE:
        return _check_derivative_cell(variant, param, n)
    src = source_poly(family, param, n, k)
    oracle = project(src, param, n).d
    printed = closed_form(family, param, n, k, variant).d
    records = []
    for idx, (pv, ov) in enumerate(zip(printed, oracle)):
        if _agree(pv, ov):
            continue
        if family is Family.PRODUCT:
            records.append(_make_record(family, variant, lam, n, k, idx, pv, ov))
        else:
            records.append(_make_record(family, variant, lam, n, idx, None, pv, ov))
    return records


def derivative_oracle_factor(param: GegenParam, n: int, k: int) -> Fraction:
    """Scalar c with d^k/dx^k C_n^(lambda) = c C_{n-k}^(lambda+k), read off the polynomials."""
    deriv = gegenbauer(param, n).differentiate(k)
    target = gegenbauer(param.shifted(k), n - k)
    c = deriv.leading / target.leading
    if deriv != target.scale(c):
        raise AssertionError("derivative is not proportional to the shifted-order polynomial")
    return c


def _check_derivative_cell(variant: str, param: GegenParam, n: int) -> list[ErrataRecord]:
    records = []
    for k in range(n + 1):
        oracle = derivative_oracle_factor(param, n, k)
        if variant == "as-printed":
            printed = printed_derivative_factor(param.lam, k)
        else:
            printed = derivative_factor(param.lam, k)
        if printed != oracle:
            records.append(_make_record(Family.DERIVATIVE, variant, param.lam, n, k, None, printed, oracle))
    return records


# ---------------------------------------------------------------------------
# grid verification


@dataclass(frozen=True)
class FamilyReport:
    family: str
    variant: str
    cells: int
    passed: int
    failed: int
    errata: tuple

    @property
    def informational(self) -> bool:
        return self.variant in INFORMATIONAL_VARIANTS

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary(self) -> dict:
        return {
            "family": self.family,
            "variant": self.variant,
            "cells": self.cells,
            "passed": self.passed,
            "failed": self.failed,
            "errata": len(self.errata),
            "informational": self.informational,
        }


def default_variant(family: Family) -> str:
    return VARIANTS[family][0]


def grid_cells(family: Family, lambdas: Iterable[RationalLike], n_max: int, n_min: int = 0) -> list[tuple]:
    cells = []
    for lam in sorted(as_param(l).lam for l in lambdas):
        for n in range(n_min, n_max + 1):
            if family is Family.PRODUCT:
                cells.extend((lam, n, k) for k in range(n + 1))
            else:
                cells.append((lam, n, None))
    return cells


def _run_cell(args: tuple) -> list[ErrataRecord]:
    family, variant, lam, n, k = args
    return check_cell(family, variant, lam, n, k)


def worker_count() -> int:
    """Worker processes for grid runs: GEGEN_THREADS if set, else the CPU count."""
    env = os.environ.get("GEGEN_THREADS")
    cpus = os.cpu_count() or 1
    if env:
        try:
            return max(1, min(int(env), cpus))
        except ValueError:
            return 1
    return cpus


def run_family(
    family: Family,
    lambdas: Iterable[RationalLike],
    n_max: int,
    variant: Optional[str] = None,
    workers: Optional[int] = None,
) -> FamilyReport:
    """Check every grid cell of one family; results are ordered deterministically."""
    variant = variant or default_variant(family)
    if variant not in VARIANTS[family]:
        raise ValueError(f"variant {variant!r} not available for {family.value}")
    cells = grid_cells(family, lambdas, n_max)
    jobs = [(family, variant, lam, n, k) for lam, n, k in cells]
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(jobs) > 8:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_cell, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_run_cell(job) for job in jobs]
    failed = sum(1 for res in results if res)
    errata = sorted((rec for res in results for rec in res), key=ErrataRecord.sort_key)
    return FamilyReport(family.value, variant, len(cells), len(cells) - failed, failed, tuple(errata))


def verify_family(
    family: Family,
    lambdas: Iterable[RationalLike],
    n_max: int,
    variant: Optional[str] = None,
    workers: Optional[int] = None,
) -> list[ErrataRecord]:
    """All errata for one family over the grid; empty when the identity holds."""
    return list(run_family(family, lambdas, n_max, variant, workers).errata)
