import argparse
import math
from pathlib import Path
from typing import NoReturn

import bisym


class UsageError(Exception):
    """Raised instead of exiting when the command line is malformed."""

    def __init__(self, message: str, usage: str):
        self.usage = usage
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: error: {message}", self.format_usage())


def finite_float(text: str) -> float:
    """argparse type accepting only finite real numbers."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def positive_float(text: str) -> float:
    value = finite_float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {text!r}")
    return value


def seed_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits: {text!r}")
    return value


def _add_spectrum(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "spectrum",
        nargs=5,
        type=finite_float,
        metavar="λ",
        help="The five candidate eigenvalues, in any order",
    )


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("json", "csv", "plain"),
        default=None,
        help="Report format (default from configuration)",
    )


def _add_tol(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--tol",
        type=positive_float,
        default=None,
        metavar="REAL",
        help="Eigenvalue acceptance tolerance (default from configuration)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=bisym.__name__, description=bisym.__doc__)

    parser.add_argument(
        "-V",
        "--version",
        action="version",
        version=f"%(prog)s {bisym.__version__}",
        help="Show version information and exit",
    )
    parser.add_argument(
        "-c", "--config", type=Path, default=None, help="Path to configuration file", metavar="FILE"
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Write debug diagnostics to stderr")

    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND", parser_class=_Parser)

    check = commands.add_parser("check", help="Decide whether a spectrum is realizable")
    _add_spectrum(check)
    _add_format(check)

    construct = commands.add_parser("construct", help="Build a realizing matrix for a spectrum")
    _add_spectrum(construct)
    _add_format(construct)
    _add_tol(construct)

    verify = commands.add_parser("verify", help="Check a 5×5 matrix against a spectrum")
    _add_spectrum(verify)
    verify.add_argument(
        "--matrix",
        type=Path,
        default=Path("-"),
        metavar="FILE",
        help="Matrix as 5 rows of 5 numbers or a construct JSON report ('-' reads stdin)",
    )
    _add_format(verify)
    _add_tol(verify)

    sample = commands.add_parser("sample", help="Evaluate seeded random spectra")
    sample.add_argument("--n", type=positive_int, default=None, metavar="COUNT", help="Number of spectra")
    sample.add_argument("--seed", type=seed_int, default=None, metavar="SEED", help="Random seed")
    sample.add_argument("--trace", choices=("zero", "positive"), default=None, help="Trace constraint")
    sample.add_argument(
        "--include-example", action="store_true", help="Emit the worked example spectrum as row 0"
    )
    sample.add_argument(
        "--format", choices=("json", "csv", "plain"), default="csv", help="Output format (default: csv)"
    )
    _add_tol(sample)

    example = commands.add_parser("example", help="Reproduce the worked example end to end")
    _add_format(example)

    return parser


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """
    Parse the command line.

    Raises:
        UsageError: On malformed arguments
    """
    return build_parser().parse_args(argv)
