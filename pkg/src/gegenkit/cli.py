"""Command-line interface: ``expand``, ``verify``, ``quad`` and ``eval``.

Exit codes: 0 success, 1 verification failure, 2 bad arguments or config,
3 non-integrable weight (lambda <= -1/2).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import expansions as ex
from .coeffs import CoeffVector, Family, Method, format_scalar, to_table
from .errors import GegenError, InvalidWeight
from .exactnum import GegenParam, as_rational, format_rational
from .gegenbauer import gegenbauer
from .numeric import eval_gegen_f64, float_project, gauss_jacobi_rule, gegen_coeffs_f64
from .weightspace import prop1_coeffs, project

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_WEIGHT = 3

N_MAX_LIMIT = 64
DEFAULT_LAMBDAS = ("1/2", "1", "3/2", "2", "5/2", "7/3")
DEFAULT_N_MAX = 12
FAMILY_NAMES = ("monomial", "bernoulli", "euler", "product", "self", "derivative")


class ConfigError(ValueError):
    pass


def is_decimal(text: str) -> bool:
    return any(c in text for c in ".eE") or text.strip().lower() in {"nan", "inf", "-inf"}


@dataclass
class RunConfig:
    lambdas: list = field(default_factory=lambda: list(DEFAULT_LAMBDAS))
    n_max: int = DEFAULT_N_MAX
    families: list = field(default_factory=lambda: list(FAMILY_NAMES))
    format: str = "json"
    variants: dict = field(default_factory=dict)

    def validate(self) -> None:
        params = []
        for text in self.lambdas:
            try:
                params.append(GegenParam(as_rational(str(text))))
            except (ValueError, ZeroDivisionError) as exc:
                raise ConfigError(f"bad lambda {text!r}: {exc}") from None
        self.lambdas = [format_rational(p.lam) for p in sorted(set(params))]
        if not 0 <= self.n_max <= N_MAX_LIMIT:
            raise ConfigError(f"n_max must lie in [0, {N_MAX_LIMIT}]")
        for name in self.families:
            if name not in FAMILY_NAMES:
                raise ConfigError(f"unknown family {name!r}")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"unknown format {self.format!r}")
        for name, variant in self.variants.items():
            if name not in FAMILY_NAMES:
                raise ConfigError(f"variant given for unknown family {name!r}")
            if variant not in ex.VARIANTS[Family(name)]:
                raise ConfigError(f"variant {variant!r} not available for {name}")

    def variant_for(self, name: str) -> str:
        return self.variants.get(name, ex.default_variant(Family(name)))

    def apply_variant_flag(self, flag: str) -> None:
        """``FAMILY=VARIANT`` sets one family; a bare ``VARIANT`` sets every family offering it."""
        if "=" in flag:
            name, variant = (s.strip() for s in flag.split("=", 1))
            self.variants[name] = variant
            return
        hit = False
        for name in FAMILY_NAMES:
            if flag in ex.VARIANTS[Family(name)]:
                self.variants[name] = flag
                hit = True
        if not hit:
            raise ConfigError(f"no family offers variant {flag!r}")

    def to_dict(self) -> dict:
        return {
            "lambdas": list(self.lambdas),
            "n_max": self.n_max,
            "families": list(self.families),
            "variants": {name: self.variant_for(name) for name in self.families},
        }


def _split_list(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def load_config(path: str | Path) -> RunConfig:
    """Read a ``key = value`` file (``#`` comments).

    Recognised keys: ``lambdas``, ``n_max``, ``families``, ``format``,
    ``variant`` (same meaning as the --variant flag) and ``variant.FAMILY``.
    """
    cfg = RunConfig()
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ConfigError(str(exc)) from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "lambdas":
            cfg.lambdas = _split_list(value)
        elif key == "n_max":
            try:
                cfg.n_max = int(value)
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: n_max must be an integer") from None
        elif key == "families":
            cfg.families = _split_list(value)
        elif key == "format":
            cfg.format = value
        elif key == "variant":
            for flag in _split_list(value):
                cfg.apply_variant_flag(flag)
        elif key.startswith("variant."):
            cfg.variants[key.split(".", 1)[1]] = value
        else:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    return cfg


# ---------------------------------------------------------------------------
# expand


def _float_source(family: Family, lam: float, n: int, k: Optional[int]) -> np.ndarray:
    if family is Family.PRODUCT:
        if k is None or not 0 <= k <= n:
            raise ex.InvalidPair(f"need n >= k >= 0, got n={n}, k={k}")
        return np.polynomial.polynomial.polymul(gegen_coeffs_f64(lam, n - k), gegen_coeffs_f64(lam, k))
    if family is Family.SELF:
        return gegen_coeffs_f64(lam, n)
    # lambda-independent sources
    exact = ex.source_poly(family, GegenParam(1), n)
    return np.array([float(c) for c in exact.coeffs])


def expand_table(family: str, lam_text: str, n: int, k: Optional[int], method: str, variant: Optional[str]) -> CoeffVector:
    fam = Family(family)
    if is_decimal(lam_text):
        lam = float(lam_text)
        cv = float_project(_float_source(fam, lam, n, k), lam, n)
        return CoeffVector(cv.param, n, cv.d, Method.FLOAT_PROJECTION, fam, k=k, meta={"lambda": lam})
    param = GegenParam(as_rational(lam_text))
    if method == "closed_form":
        return ex.closed_form(fam, param, n, k, variant)
    src = ex.source_poly(fam, param, n, k)
    cv = project(src, param, n) if method == "projection" else prop1_coeffs(src, param, n)
    return CoeffVector(param, n, cv.d, cv.method, fam, k=k if fam is Family.PRODUCT else None)


def render_table(cv: CoeffVector, fmt: str) -> str:
    table = to_table(cv)
    if fmt == "json":
        return json.dumps(table) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "value"])
    for entry in table["coeffs"]:
        writer.writerow([entry["k"], entry["value"]])
    return buf.getvalue()


def cmd_expand(args: argparse.Namespace) -> int:
    if args.n < 0 or args.n > N_MAX_LIMIT:
        return _usage(f"n must lie in [0, {N_MAX_LIMIT}]")
    if args.family == "product" and args.k is None:
        return _usage("--k is required for the product family")
    if args.variant is not None and args.variant not in ex.VARIANTS[Family(args.family)]:
        return _usage(f"variant {args.variant!r} not available for {args.family}")
    try:
        cv = expand_table(args.family, args.lam, args.n, args.k, args.method, args.variant)
    except InvalidWeight as exc:
        return _weight_error(exc)
    except (GegenError, ValueError, ZeroDivisionError) as exc:
        return _usage(str(exc))
    sys.stdout.write(render_table(cv, args.format))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def run_verify(cfg: RunConfig, workers: Optional[int] = None) -> list[ex.FamilyReport]:
    return [
        ex.run_family(Family(name), cfg.lambdas, cfg.n_max, cfg.variant_for(name), workers)
        for name in cfg.families
    ]


def render_report(cfg: RunConfig, reports: Sequence[ex.FamilyReport], fmt: str) -> str:
    ok = all(r.ok or r.informational for r in reports)
    if fmt == "json":
        doc = {
            "config": cfg.to_dict(),
            "families": [r.summary() for r in reports],
            "status": "pass" if ok else "fail",
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = ["family", "variant", "cells", "passed", "failed", "errata", "informational"]
    writer.writerow(cols)
    for r in reports:
        s = r.summary()
        writer.writerow([s[c] for c in cols])
    return buf.getvalue()


def write_errata(path: str | Path, reports: Sequence[ex.FamilyReport]) -> int:
    count = 0
    with open(path, "w") as fh:
        for report in reports:
            for rec in report.errata:
                fh.write(json.dumps(rec.to_dict()) + "\n")
                count += 1
    return count


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        if args.lambdas:
            cfg.lambdas = _split_list(args.lambdas)
        if args.n_max is not None:
            cfg.n_max = args.n_max
        if args.families:
            cfg.families = _split_list(args.families)
        if args.format:
            cfg.format = args.format
        for flag in args.variant or ():
            cfg.apply_variant_flag(flag)
        cfg.validate()
    except ConfigError as exc:
        return _usage(str(exc))
    reports = run_verify(cfg)
    sys.stdout.write(render_report(cfg, reports, cfg.format))
    if args.report_errata:
        write_errata(args.report_errata, reports)
    return EXIT_OK if all(r.ok or r.informational for r in reports) else EXIT_FAIL


# ---------------------------------------------------------------------------
# quad / eval


def cmd_quad(args: argparse.Namespace) -> int:
    try:
        lam = float(args.lam)
    except ValueError:
        try:
            lam = float(as_rational(args.lam))
        except (ValueError, ZeroDivisionError):
            return _usage(f"cannot parse lambda {args.lam!r}")
    if args.m < 1:
        return _usage("m must be positive")
    try:
        rule = gauss_jacobi_rule(lam, args.m)
    except InvalidWeight as exc:
        return _weight_error(exc)
    sys.stdout.write(rule.to_csv())
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    if args.n < 0:
        return _usage("n must be non-negative")
    try:
        if is_decimal(args.lam) or is_decimal(args.x):
            lam = float(args.lam) if is_decimal(args.lam) else float(as_rational(args.lam))
            x = float(args.x) if is_decimal(args.x) else float(as_rational(args.x))
            if lam <= -0.5:
                raise InvalidWeight(f"lambda must exceed -1/2, got {lam}")
            if lam == 0:
                raise ex.InvalidParameter("lambda = 0 is excluded")
            value = format_scalar(float(eval_gegen_f64(lam, args.n, x)))
            lam_s, x_s = format_scalar(lam), format_scalar(x)
        else:
            param = GegenParam(as_rational(args.lam))
            x = as_rational(args.x)
            value = format_rational(gegenbauer(param, args.n).eval_rational(x))
            lam_s, x_s = format_rational(param.lam), format_rational(x)
    except InvalidWeight as exc:
        return _weight_error(exc)
    except (GegenError, ValueError, ZeroDivisionError) as exc:
        return _usage(str(exc))
    sys.stdout.write(json.dumps({"lambda": lam_s, "n": args.n, "x": x_s, "value": value}) + "\n")
    return EXIT_OK


def _usage(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _weight_error(exc: Exception) -> int:
    print(f"error: invalid weight: {exc}", file=sys.stderr)
    return EXIT_WEIGHT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gegenkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="coefficient table of one polynomial in the Gegenbauer basis")
    p.add_argument("--family", required=True, choices=FAMILY_NAMES[:5])
    p.add_argument("--lambda", dest="lam", required=True, help='exact "3/2" or decimal "1.414" (float backend)')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, help="split index for the product family")
    p.add_argument("--method", default="closed_form", choices=("closed_form", "projection", "prop1"))
    p.add_argument("--variant")
    p.add_argument("--format", default="json", choices=("json", "csv"))
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="check closed forms against the projection oracle over a grid")
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--lambdas", help="comma-separated exact rationals")
    p.add_argument("--n-max", type=int)
    p.add_argument("--families", help="comma-separated subset of " + ",".join(FAMILY_NAMES))
    p.add_argument("--variant", action="append", help="VARIANT or FAMILY=VARIANT; repeatable")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--report-errata", metavar="PATH", help="write errata as JSON lines")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("quad", help="dump a Gauss rule for (1 - x^2)^(lambda - 1/2) as CSV")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_quad)

    p = sub.add_parser("eval", help="evaluate C_n^(lambda)(x)")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", required=True)
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
