"""Dense univariate polynomials with exact rational coefficients."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import RationalLike, as_rational, format_rational


class Poly:
    """Immutable dense polynomial; ``coeffs[i]`` is the coefficient of x**i.

    Trailing zeros are trimmed, so the zero polynomial has no coefficients
    and degree ``-1`` (standing in for minus infinity).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()) -> None:
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c: RationalLike) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c: RationalLike = 1) -> "Poly":
        return cls([0] * n + [c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        if i < 0:
            raise IndexError("negative power")
        return self.coeffs[i] if i < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = format_rational(abs(c)) + (f"*{mono}" if mono else "")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # ring operations

    def __add__(self, other: "Poly | RationalLike") -> "Poly":
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly | RationalLike") -> "Poly":
        return self + (-_lift(other))

    def __rsub__(self, other: RationalLike) -> "Poly":
        return _lift(other) - self

    def __mul__(self, other: "Poly | RationalLike") -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        out, base = Poly([1]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, c: RationalLike) -> "Poly":
        c = as_rational(c)
        return Poly(c * a for a in self.coeffs)

    # calculus and evaluation

    def differentiate(self, k: int = 1) -> "Poly":
        if k < 0:
            raise ValueError("k must be non-negative")
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [i * cs[i] for i in range(1, len(cs))]
        return Poly(cs)

    def compose_affine(self, a: RationalLike, b: RationalLike) -> "Poly":
        """Return p(a*x + b) in the monomial basis (Horner on the inner map)."""
        inner = Poly([b, a])
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def __call__(self, x: RationalLike) -> Fraction:
        return self.eval_rational(x)

    def eval_rational(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    # serialisation

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: "Sequence[str] | str") -> "Poly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(as_rational(s) for s in data)


def _lift(p: "Poly | RationalLike") -> Poly:
    return p if isinstance(p, Poly) else Poly([p])


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def sub(p: Poly, q: Poly) -> Poly:
    return p - q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def scale(p: Poly, c: RationalLike) -> Poly:
    return p.scale(c)


def differentiate(p: Poly, k: int = 1) -> Poly:
    return p.differentiate(k)


def compose_affine(p: Poly, a: RationalLike, b: RationalLike) -> Poly:
    return p.compose_affine(a, b)


def eval_rational(p: Poly, x: RationalLike) -> Fraction:
    return p.eval_rational(x)


X = Poly.x()
ONE = Poly([1])
