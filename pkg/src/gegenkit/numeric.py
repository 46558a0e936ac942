"""Floating-point backend: recurrence evaluation and Gauss quadrature.

Quadrature rules for the weight (1 - x^2)^(lambda - 1/2) start from the
Golub-Welsch construction (eigenvalues of the symmetric tridiagonal Jacobi
matrix), then the nodes are polished by Newton steps on C_m and the weights
recomputed as 1 / sum_j phi_j(x_i)^2 with orthonormal phi_j.  Eigenvector
weights are only absolutely accurate, which hurts exactly where C_k is large,
near the endpoints.  The polish runs in numpy's extended ``longdouble``, so the
float64 rule handed out is correctly rounded on platforms with 80-bit long
doubles; elsewhere it degrades gracefully to double accuracy.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .coeffs import CoeffVector, Method
from .errors import InvalidParameter, InvalidWeight
from .exactnum import GegenParam
from .poly import Poly

PolyLike = Union[Poly, Sequence[float], np.ndarray]
LD = np.longdouble


def _check_lambda(lam: float, allow_zero: bool = True) -> float:
    lam = float(lam)
    if not math.isfinite(lam) or lam <= -0.5:
        raise InvalidWeight(f"lambda must exceed -1/2, got {lam}")
    if not allow_zero and lam == 0.0:
        raise InvalidParameter("lambda = 0 is excluded")
    return lam


def base_moment(lam: float) -> float:
    """mu_0 = B(1/2, lambda + 1/2) = sqrt(pi) Gamma(lambda + 1/2) / Gamma(lambda + 1)."""
    lam = _check_lambda(lam)
    return math.sqrt(math.pi) * math.exp(math.lgamma(lam + 0.5) - math.lgamma(lam + 1.0))


def eval_gegen_f64(lam: float, n: int, x):
    """C_n^(lambda)(x) by the forward three-term recurrence; ``x`` may be an array."""
    lam = float(lam)
    x = np.asarray(x, dtype=float) if not np.isscalar(x) else float(x)
    prev = np.ones_like(x) if isinstance(x, np.ndarray) else 1.0
    if n == 0:
        return prev
    cur = 2.0 * lam * x
    for m in range(2, n + 1):
        prev, cur = cur, (2.0 * (m + lam - 1.0) * x * cur - (m + 2.0 * lam - 2.0) * prev) / m
    return cur


def gegen_table_f64(lam, n_max: int, x: np.ndarray) -> np.ndarray:
    """Rows C_0(x) .. C_{n_max}(x); computed in the dtype of ``x`` (float64 or longdouble)."""
    x = np.asarray(x)
    if x.dtype != LD:
        x = x.astype(float)
    lam = x.dtype.type(lam)
    out = np.empty((n_max + 1, x.size), dtype=x.dtype)
    out[0] = 1
    if n_max >= 1:
        out[1] = 2 * lam * x
    for m in range(2, n_max + 1):
        out[m] = (2 * (m + lam - 1) * x * out[m - 1] - (m + 2 * lam - 2) * out[m - 2]) / m
    return out


def _norm_ratio(lam, n: int):
    """<C_n, C_n> / mu_0 = lambda (2 lambda)_n / (n! (n + lambda)), in the type of ``lam``."""
    ratio = lam / (n + lam)
    for j in range(n):
        ratio = ratio * (2 * lam + j) / (j + 1)
    return ratio


def norm_f64(lam: float, n: int) -> float:
    """<C_n, C_n> = mu_0 lambda (2 lambda)_n / (n! (n + lambda))."""
    return base_moment(lam) * float(_norm_ratio(float(lam), n))


@dataclass(frozen=True)
class QuadRule:
    lam: float
    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self) -> int:
        return self.nodes.size

    def integrate(self, f) -> float:
        """Weighted integral of a callable, a Poly, or a coefficient sequence."""
        if isinstance(f, Poly):
            vals = np.array([float(f.eval_rational(Fraction(x))) for x in self.nodes])
        elif callable(f):
            vals = np.asarray(f(self.nodes), dtype=float)
        else:
            vals = np.polynomial.polynomial.polyval(self.nodes, np.asarray(f, dtype=float))
        return math.fsum(self.weights * vals)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["node", "weight"])
        for x, w in zip(self.nodes, self.weights):
            writer.writerow([f"{x:.17g}", f"{w:.17g}"])
        return buf.getvalue()


def _polish_nodes(lam, m: int, nodes: np.ndarray, steps: int = 3) -> np.ndarray:
    """Newton steps on C_m, with C_m' = 2 lambda C_{m-1}^(lambda+1)."""
    for _ in range(steps):
        f = gegen_table_f64(lam, m, nodes)[m]
        df = 2 * lam * gegen_table_f64(lam + 1, m - 1, nodes)[m - 1]
        nodes = nodes - f / df
    return nodes


@lru_cache(maxsize=128)
def _rule_ext(lam: float, m: int) -> tuple:
    """Nodes and weights / mu_0 in extended precision (both symmetric by construction)."""
    beta = np.empty(max(m - 1, 0))
    if m > 1:
        k = np.arange(2, m, dtype=float)
        beta[0] = 1.0 / (2.0 * (1.0 + lam))  # k = 1 term, simplified to avoid 0/0 at lambda = 0
        beta[1:] = k * (k + 2.0 * lam - 1.0) / (4.0 * (k + lam) * (k + lam - 1.0))
    jac = np.diag(np.sqrt(beta), 1) + np.diag(np.sqrt(beta), -1)
    nodes64, vecs = np.linalg.eigh(jac)
    if m > 1 and lam != 0.0:
        lam_ld = LD(lam)
        nodes = _polish_nodes(lam_ld, m, nodes64.astype(LD))
        table = gegen_table_f64(lam_ld, m - 1, nodes)
        inv = np.array([1 / _norm_ratio(lam_ld, j) for j in range(m)], dtype=LD)
        wratio = 1 / np.einsum("ji,j->i", table**2, inv)
    else:
        # C_n^(0) vanishes for n >= 1, so the orthonormal-sum form is unavailable
        nodes = nodes64.astype(LD)
        wratio = (vecs[0, :] ** 2).astype(LD)
    nodes = (nodes - nodes[::-1]) / 2
    wratio = (wratio + wratio[::-1]) / 2
    if m % 2:
        nodes[m // 2] = 0
    nodes.setflags(write=False)
    wratio.setflags(write=False)
    return nodes, wratio


@lru_cache(maxsize=128)
def _rule64(lam: float, m: int) -> tuple:
    nodes, wratio = _rule_ext(lam, m)
    n64 = nodes.astype(float)
    w64 = (wratio * LD(base_moment(lam))).astype(float)
    n64.setflags(write=False)
    w64.setflags(write=False)
    return n64, w64


def gauss_jacobi_rule(lam: float, m: int) -> QuadRule:
    """m-point Gauss rule for (1 - x^2)^(lambda - 1/2); exact to degree 2m - 1."""
    lam = _check_lambda(lam)
    if m < 1:
        raise ValueError("need at least one node")
    nodes, weights = _rule64(lam, int(m))
    return QuadRule(lam, nodes, weights)


def _ld_from_fraction(q: Fraction) -> LD:
    """Round an exact rational to longdouble without passing through float64."""
    if q == 0:
        return LD(0)
    num, den = abs(q.numerator), q.denominator
    shift = den.bit_length() - num.bit_length() + 72
    scaled = (num << shift) // den if shift >= 0 else num // (den << -shift)
    hi, lo = scaled >> 36, scaled & ((1 << 36) - 1)
    val = np.ldexp(LD(hi), 36) + LD(lo)
    val = np.ldexp(val, -shift)
    return -val if q < 0 else val


def _fraction_from_ld(x: LD) -> Fraction:
    return Fraction(*x.as_integer_ratio())


def _as_float_coeffs(p: PolyLike) -> np.ndarray:
    if isinstance(p, Poly):
        return np.array([float(c) for c in p.coeffs], dtype=float)
    arr = np.asarray(p, dtype=float)
    nz = np.nonzero(arr)[0]
    return arr[: nz[-1] + 1] if nz.size else arr[:0]


def _values_at(p: PolyLike, nodes: np.ndarray) -> np.ndarray:
    if isinstance(p, Poly):
        # exact Horner at the nodes avoids monomial-basis cancellation
        return np.array([_ld_from_fraction(p.eval_rational(_fraction_from_ld(x))) for x in nodes], dtype=LD)
    coeffs = _as_float_coeffs(p).astype(LD)
    acc = np.zeros_like(nodes)
    for c in coeffs[::-1]:
        acc = acc * nodes + c
    return acc


def float_project(p: PolyLike, lam: float, n: int | None = None) -> CoeffVector:
    """Quadrature version of the orthogonal projection d_k = <p, C_k> / <C_k, C_k>.

    Accepts an exact :class:`Poly` or float monomial coefficients.  The base
    moment mu_0 cancels between numerator and norm, so it is never formed.
    """
    lam = _check_lambda(lam, allow_zero=False)
    deg = p.degree if isinstance(p, Poly) else _as_float_coeffs(p).size - 1
    n = max(deg, 0) if n is None else n
    nodes, wratio = _rule_ext(lam, (max(deg, 0) + n) // 2 + 1)
    wp = wratio * _values_at(p, nodes)
    table = gegen_table_f64(LD(lam), n, nodes)
    lam_ld = LD(lam)
    d = tuple(float(np.sum(wp * table[k]) / _norm_ratio(lam_ld, k)) for k in range(n + 1))
    return CoeffVector(GegenParam(Fraction(lam)), n, d, Method.FLOAT_PROJECTION, meta={"lambda": lam})


def gram_matrix_f64(lam: float, n_max: int, normalized: bool = True) -> np.ndarray:
    """<C_i, C_j> for i, j <= n_max by quadrature.

    With ``normalized`` the entries are divided by sqrt(h_i h_j) using the
    closed-form norms, so the result should be the identity matrix.
    """
    lam = _check_lambda(lam, allow_zero=False)
    rule = gauss_jacobi_rule(lam, n_max + 1)
    table = gegen_table_f64(lam, n_max, rule.nodes)
    gram = (table * rule.weights) @ table.T
    if normalized:
        h = np.sqrt([norm_f64(lam, k) for k in range(n_max + 1)])
        gram = gram / np.outer(h, h)
    return gram


def gegen_coeffs_f64(lam: float, n: int) -> np.ndarray:
    """Monomial coefficients of C_n^(lambda) in floating point, by recurrence."""
    lam = float(lam)
    prev = np.array([1.0])
    if n == 0:
        return prev
    cur = np.array([0.0, 2.0 * lam])
    for m in range(2, n + 1):
        nxt = np.zeros(m + 1)
        nxt[1:] = 2.0 * (m + lam - 1.0) * cur
        nxt[: prev.size] -= (m + 2.0 * lam - 2.0) * prev
        prev, cur = cur, nxt / m
    return cur
