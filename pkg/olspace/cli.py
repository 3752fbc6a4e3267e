"""Command line interface: `olspace classify | norm | table | verify`."""

import argparse
import csv
import io
import logging
import math
import os
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, TextIO

import numpy as np

from olspace.classifier import ClassificationReport, classify
from olspace.config import load_spec
from olspace.domain import Kind
from olspace.exceptions import NumericalFailure, OlspaceError
from olspace.norms import (
    amemiya_norm_lambda,
    fundamental_lambda,
    fundamental_m,
    lambda_norm,
    m_norm,
    orlicz_amemiya_norm,
)
from olspace.rearrangement import StepFunction
from olspace.spaces import Side, SpaceSpec
from olspace.verify import Suite, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

LOG_LEVEL_ENV = "OLSPACE_LOG_LEVEL"


class UsageError(OlspaceError):
    """Raised for option values the parser cannot reject by itself."""


def format_norm(value: float) -> str:
    """`0` for zero, `inf` for infinite norms and twelve decimals otherwise."""
    if value == 0:
        return "0"
    if math.isinf(value):
        return "inf"
    return f"{value:.12f}"


def format_table(report: ClassificationReport) -> str:
    """Aligned plain-text table of a classification report."""
    rows = [("property", "verdict", "rule")] + [
        (entry.property.value, entry.verdict.value, entry.rule) for entry in report.entries
    ]
    widths = [max(len(row[column]) for row in rows) for column in range(2)]
    lines = [report.space]
    for prop, verdict, rule in rows:
        lines.append(f"{prop:<{widths[0]}}  {verdict:<{widths[1]}}  {rule}")
    notes = [f"{entry.property.value}: {entry.note}" for entry in report.entries if entry.note]
    if notes:
        lines.append("")
        lines.extend(notes)
    return "\n".join(lines) + "\n"


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


# -- subcommands ------------------------------------------------------------------------------------------------------


def cmd_classify(args: argparse.Namespace) -> int:
    report = classify(load_spec(args.config))
    text = format_table(report) if args.format == "table" else report.model_dump_json(indent=2) + "\n"
    _write(text, args.out)
    return EXIT_OK


def _norm_function(spec: SpaceSpec, kind: str) -> Callable[[SpaceSpec, StepFunction], float]:
    if spec.side is Side.LAMBDA:
        return lambda_norm if kind == "luxemburg" else amemiya_norm_lambda
    return m_norm if kind == "luxemburg" else orlicz_amemiya_norm


def cmd_norm(args: argparse.Namespace) -> int:
    spec = load_spec(args.config)
    try:
        f = StepFunction.from_csv(args.input, spec.kind)
    except (OSError, ValueError) as error:
        raise UsageError(f"Cannot read step function from {args.input}: {error}") from error
    value = _norm_function(spec, args.norm)(spec, f)
    sys.stdout.write(format_norm(value) + "\n")
    return EXIT_OK


def table_grid(spec: SpaceSpec, t_min: float, t_max: float, points: int) -> np.ndarray:
    """Evaluation times, integers for sequence spaces.

    Raises:
        UsageError: If the range is not inside (0, gamma) or fewer than two points are asked for.
    """
    if points < 2:
        raise UsageError(f"Need at least two points, got {points}")
    if not 0 < t_min < t_max < spec.gamma:
        raise UsageError(f"Expected 0 < tmin < tmax < gamma = {spec.gamma}, got tmin={t_min}, tmax={t_max}")
    grid = np.linspace(t_min, t_max, points)
    if spec.kind is Kind.SEQUENCE:
        grid = np.unique(np.clip(np.round(grid), 1.0, None))
    return grid


def fundamental_table(spec: SpaceSpec, grid: Sequence[float]) -> List[Dict[str, str]]:
    """Rows t, phi_Lambda, phi_M for a space and its Köthe-dual counterpart."""
    if spec.side is Side.LAMBDA:
        lambda_spec, m_spec = spec, spec.dual()
    else:
        try:
            lambda_spec = SpaceSpec(phi=spec.phi.conjugate(), weight=spec.weight)
        except ValueError as error:
            raise UsageError(f"No Λ-side counterpart for {spec.describe()}: {error}") from error
        m_spec = spec
    rows = []
    for t in grid:
        label = str(int(t)) if spec.kind is Kind.SEQUENCE else f"{t:.12g}"
        rows.append(
            {
                "t": label,
                "phi_Lambda": f"{fundamental_lambda(lambda_spec, t):.12g}",
                "phi_M": f"{fundamental_m(m_spec, t):.12g}",
            }
        )
    return rows


def cmd_table(args: argparse.Namespace) -> int:
    spec = load_spec(args.config)
    rows = fundamental_table(spec, table_grid(spec, args.tmin, args.tmax, args.points))
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=["t", "phi_Lambda", "phi_M"], lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _write(buffer.getvalue(), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    spec = load_spec(args.config) if args.config is not None else None
    report = run_suite(
        args.suite, seed=args.seed, budget=args.budget, tol_scale=args.tol_scale, jobs=args.jobs, spec=spec
    )
    _write(report.model_dump_json(indent=2) + "\n", args.out)
    failed = [result.name for result in report.results if not result.passed]
    if failed:
        logger.error("Failed checks: %s", ", ".join(failed))
        return EXIT_FAILED
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------------------------------------


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def _positive_float(value: str) -> float:
    number = float(value)
    if not number > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {value}")
    return number


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="olspace", description="Orlicz–Lorentz space numerics and classification.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="INFO logging, DEBUG with -vv.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    classify_parser = subparsers.add_parser("classify", parents=[common], help="Classify a space.")
    classify_parser.add_argument("--config", type=Path, required=True, help="Space configuration (JSON).")
    classify_parser.add_argument("--format", choices=["json", "table"], default="json")
    classify_parser.add_argument("--out", type=Path, help="Output file instead of standard output.")
    classify_parser.set_defaults(handler=cmd_classify)

    norm_parser = subparsers.add_parser("norm", parents=[common], help="Norm of a step function.")
    norm_parser.add_argument("--config", type=Path, required=True, help="Space configuration (JSON).")
    norm_parser.add_argument("--input", type=Path, required=True, help="CSV with columns length,value.")
    norm_parser.add_argument("--norm", choices=["luxemburg", "orlicz"], default="luxemburg")
    norm_parser.set_defaults(handler=cmd_norm)

    table_parser = subparsers.add_parser("table", parents=[common], help="Fundamental functions as CSV.")
    table_parser.add_argument("--config", type=Path, required=True, help="Space configuration (JSON).")
    table_parser.add_argument("--tmin", type=float, required=True)
    table_parser.add_argument("--tmax", type=float, required=True)
    table_parser.add_argument("--points", type=int, default=50)
    table_parser.add_argument("--out", type=Path, help="Output CSV instead of standard output.")
    table_parser.set_defaults(handler=cmd_table)

    verify_parser = subparsers.add_parser("verify", parents=[common], help="Run verification suites.")
    verify_parser.add_argument("--config", type=Path, help="Additional space to run the applicable checks on.")
    verify_parser.add_argument("--suite", choices=[suite.value for suite in Suite], default=Suite.ALL.value)
    verify_parser.add_argument("--seed", type=int, default=42)
    verify_parser.add_argument("--budget", type=_positive_float, default=1.0, help="Multiplier on case counts.")
    verify_parser.add_argument("--tol-scale", type=_positive_float, default=1.0, help="Multiplier on tolerances.")
    verify_parser.add_argument("--jobs", type=_positive_int, default=1, help="Checks run in parallel.")
    verify_parser.add_argument("--out", type=Path, help="JSON report file instead of standard output.")
    verify_parser.set_defaults(handler=cmd_verify)
    return parser


def configure_logging(verbosity: int, stream: Optional[TextIO] = None) -> None:
    """Level from `-v` flags, falling back to the OLSPACE_LOG_LEVEL environment variable."""
    if verbosity:
        level = logging.DEBUG if verbosity > 1 else logging.INFO
    else:
        level = logging.getLevelName(os.environ.get(LOG_LEVEL_ENV, "WARNING").upper())
        if not isinstance(level, int):
            level = logging.WARNING
    logging.basicConfig(level=level, stream=stream or sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.captureWarnings(True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return EXIT_USAGE if exit_request.code else EXIT_OK
    configure_logging(args.verbose)
    try:
        return int(args.handler(args))
    except NumericalFailure as error:
        sys.stderr.write(f"olspace: {error}\n")
        return EXIT_FAILED
    except OlspaceError as error:
        sys.stderr.write(f"olspace: {error}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
