"""Coefficient vectors in the Gegenbauer basis."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exactnum import GegenParam, format_rational
from .poly import Poly

Scalar = Union[Fraction, float]


class Method(enum.Enum):
    CLOSED_FORM = "closed_form"
    PROJECTION = "projection"
    PROP1 = "prop1"
    FLOAT_PROJECTION = "float_projection"


class Family(enum.Enum):
    MONOMIAL = "monomial"
    BERNOULLI = "bernoulli"
    EULER = "euler"
    PRODUCT = "product"
    SELF = "self"
    DERIVATIVE = "derivative"
    GENERIC = "generic"


@dataclass(frozen=True)
class CoeffVector:
    """d_0..d_n with p = sum_k d_k C_k^(lambda); ``k`` is the product split index."""

    param: GegenParam
    n: int
    d: tuple
    method: Method
    family: Family = Family.GENERIC
    k: Optional[int] = None
    variant: Optional[str] = None
    meta: dict = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.d)

    def __getitem__(self, i: int) -> Scalar:
        return self.d[i]

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.d)

    def reconstruct(self) -> Poly:
        """sum_k d_k C_k^(lambda) as a polynomial (exact coefficients only)."""
        from .gegenbauer import gegen_family

        if not self.is_exact:
            raise TypeError("reconstruction needs exact coefficients")
        basis = gegen_family(self.param, len(self.d) - 1)
        out = Poly()
        for dk, ck in zip(self.d, basis):
            if dk:
                out = out + ck.scale(dk)
        return out

    def as_strings(self) -> list[str]:
        return [format_scalar(v) for v in self.d]


def format_scalar(v: Scalar) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def as_tuple(values: Sequence[Scalar]) -> tuple:
    return tuple(values)


def to_table(cv: CoeffVector) -> dict:
    """JSON-ready table: family, lambda, n, method, coeffs[{k, value}]."""
    lam = cv.meta.get("lambda", cv.param.lam)
    table = {
        "family": cv.family.value,
        "lambda": format_scalar(lam) if not isinstance(lam, str) else lam,
        "n": cv.n,
        "method": cv.method.value,
    }
    if cv.variant is not None:
        table["variant"] = cv.variant
    if cv.k is not None:
        table["split"] = cv.k
    table["coeffs"] = [{"k": i, "value": format_scalar(v)} for i, v in enumerate(cv.d)]
    return table


def parse_scalar(text: str) -> Scalar:
    if any(c in text for c in ".eEn"):  # 'nan'/'inf' included
        return float(text)
    return Fraction(text)


def from_table(table: dict) -> CoeffVector:
    """Inverse of :func:`to_table` for exact tables (and float ones, values as floats)."""
    d = tuple(parse_scalar(entry["value"]) for entry in sorted(table["coeffs"], key=lambda e: e["k"]))
    lam = parse_scalar(table["lambda"])
    param = GegenParam(Fraction(lam))
    meta = {} if isinstance(lam, Fraction) else {"lambda": lam}
    return CoeffVector(
        param,
        int(table["n"]),
        d,
        Method(table["method"]),
        Family(table["family"]),
        k=table.get("split"),
        variant=table.get("variant"),
        meta=meta,
    )
