"""Command-line front end: argument parsing, reports, exit codes.

Exit codes: 0 success, 2 rejected input (bad discriminant, excluded field,
level < 2, precision < 64), 3 evaluation failure (snap or precision).
Reports go to stdout as JSON (default) or text; both carry the same
numbers.  High-precision values are rendered as decimal strings so no
precision is lost to binary floats, and output for a fixed configuration
is byte-identical across runs; the elapsed time, which is not, goes to
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from math import ceil

from .errors import EvaluationError, InputError
from .exactmath import DEFAULT_GUARD, DEFAULT_PRECISION, BigComplex, context
from .normal_basis import (
    ConjugateRecord,
    CriterionReport,
    check_criterion,
    conjugates,
    minimal_polynomial,
    siegel_ramachandra_invariant,
)
from .quadforms import reduced_forms, validate_discriminant

SCHEMA_VERSION = 1
SUBCOMMANDS = ("forms", "conjugates", "normal-basis", "minpoly", "invariant")
MIN_PRECISION = 64


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    disc: int
    level: int | None
    precision: int = DEFAULT_PRECISION
    guard: int = DEFAULT_GUARD
    snap_tolerance: float = 1e-10
    format: str = "json"
    threads: int = 1

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise InputError(f"unknown subcommand {self.subcommand!r}")
        if self.precision < MIN_PRECISION:
            raise InputError(f"precision must be >= {MIN_PRECISION} bits")
        if self.guard < 0:
            raise InputError("guard bits must be >= 0")
        if self.subcommand != "forms" and (self.level is None or self.level < 2):
            raise InputError("level must be an integer >= 2")
        if self.threads < 1:
            raise InputError("threads must be >= 1")
        if self.format not in ("json", "text"):
            raise InputError(f"unknown format {self.format!r}")


@dataclass(frozen=True)
class Report:
    config: RunConfig
    result: dict
    elapsed_ms: float


def significant_digits(precision: int) -> int:
    return ceil(precision * 0.3)


def format_complex(z: BigComplex, digits: int | None = None) -> str:
    """Deterministic 're+imi' / 're-imi' rendering at fixed digit count."""
    digits = digits if digits is not None else significant_digits(z.precision)
    ctx = context(z.precision)
    re = ctx.nstr(z.real, digits)
    sign = "-" if z.imag < 0 else "+"
    im = ctx.nstr(abs(z.imag), digits)
    return f"{re}{sign}{im}i"


def _criterion_payload(report: CriterionReport) -> dict:
    return {
        "passes": report.passes,
        "max_ratio": report.max_ratio,
        "m": report.m,
        "group_order": report.group_order,
        "ratios": list(report.ratios),
    }


def _conjugate_rows(records: list[ConjugateRecord], digits: int) -> list[dict]:
    rows = []
    for rec in records:
        alpha = rec.index.alpha
        rows.append(
            {
                "alpha": {
                    "t": alpha.t,
                    "s": alpha.s,
                    "matrix": [
                        [alpha.matrix.m11, alpha.matrix.m12],
                        [alpha.matrix.m21, alpha.matrix.m22],
                    ],
                },
                "form": list(rec.index.form.as_tuple()),
                "vector": list(rec.vector.as_tuple()),
                "point": {"p": rec.point.p, "q": rec.point.q, "d": rec.point.d},
                "value": format_complex(rec.value, digits),
            }
        )
    return rows


def _compute(config: RunConfig) -> dict:
    digits = significant_digits(config.precision)
    if config.subcommand == "forms":
        d = validate_discriminant(config.disc)
        forms = reduced_forms(d)
        return {
            "discriminant": d.d,
            "class_number": len(forms),
            "forms": [list(q.as_tuple()) for q in forms],
        }

    d = validate_discriminant(config.disc)
    if config.subcommand == "invariant":
        value = siegel_ramachandra_invariant(
            d, config.level, precision=config.precision, guard=config.guard
        )
        return {"value": format_complex(value, digits)}

    records = conjugates(
        d,
        config.level,
        precision=config.precision,
        guard=config.guard,
        threads=config.threads,
    )
    if config.subcommand == "conjugates":
        return {"count": len(records), "conjugates": _conjugate_rows(records, digits)}

    report = check_criterion(records)
    if config.subcommand == "normal-basis":
        return {
            "count": len(records),
            "conjugates": _conjugate_rows(records, digits),
            "criterion": _criterion_payload(report),
        }

    # minpoly
    if not report.passes:
        raise EvaluationError("certificate failed; no polynomial is produced")
    poly = minimal_polynomial(records, snap_tolerance=config.snap_tolerance)
    return {
        "criterion": _criterion_payload(report),
        "degree": poly.degree,
        "coefficients": [str(c) for c in poly.coefficients],
        "max_rounding_residual": poly.max_rounding_residual,
        "max_imag_residual": poly.max_imag_residual,
    }


def render_json(report: Report) -> str:
    config = report.config
    doc = {
        "schema": SCHEMA_VERSION,
        "config": {
            "subcommand": config.subcommand,
            "disc": config.disc,
            "level": config.level,
            "precision": config.precision,
            "guard": config.guard,
            "snap_tolerance": config.snap_tolerance,
            "format": config.format,
            "threads": config.threads,
        },
        "result": report.result,
    }
    return json.dumps(doc, indent=2)


def _text_lines(prefix: str, value, out: list[str]):
    if isinstance(value, dict):
        for k, v in value.items():
            _text_lines(f"{prefix}{k}.", v, out)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        for i, v in enumerate(value):
            _text_lines(f"{prefix}{i}.", v, out)
    elif isinstance(value, list):
        out.append(f"{prefix[:-1]}: {' '.join(str(v) for v in value)}")
    else:
        out.append(f"{prefix[:-1]}: {value}")


def render_text(report: Report) -> str:
    lines = [f"subcommand: {report.config.subcommand}"]
    _text_lines("", report.result, lines)
    return "\n".join(lines)


def run(config: RunConfig, stdout=None, stderr=None) -> int:
    """Execute one configuration; report to stdout, diagnostics to stderr."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    started = time.perf_counter()
    try:
        result = _compute(config)
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except EvaluationError as exc:
        print(f"error: {exc}", file=stderr)
        return 3
    report = Report(
        config=config,
        result=result,
        elapsed_ms=(time.perf_counter() - started) * 1000.0,
    )
    rendered = render_json(report) if config.format == "json" else render_text(report)
    print(rendered, file=stdout)
    print(f"elapsed_ms={report.elapsed_ms:.3f}", file=stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="siegelcm",
        description=(
            "Galois conjugates of singular values of Siegel functions over "
            "imaginary quadratic fields: class-group data, normal-basis "
            "certificates, and integer minimal polynomials."
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, needs_level in (
        ("forms", False),
        ("conjugates", True),
        ("normal-basis", True),
        ("minpoly", True),
        ("invariant", True),
    ):
        p = sub.add_parser(name)
        p.add_argument("--disc", type=int, required=True, help="field discriminant (< 0)")
        p.add_argument(
            "-N", "--level", type=int, required=needs_level, default=None,
            help="level N >= 2 of the ray class field",
        )
        p.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                       help="working precision in bits (default 256)")
        p.add_argument("--guard", type=int, default=DEFAULT_GUARD,
                       help="extra working bits during evaluation (default 64)")
        p.add_argument("--snap-tolerance", type=float, default=1e-10,
                       help="max distance of coefficients from integers (default 1e-10)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--threads", type=int, default=1,
                       help="parallel conjugate evaluations (default 1)")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        subcommand=args.subcommand,
        disc=args.disc,
        level=args.level,
        precision=args.precision,
        guard=args.guard,
        snap_tolerance=args.snap_tolerance,
        format=args.format,
        threads=args.threads,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
