"""Implementation of the bisym subcommands."""

import argparse
import json
import logging
import math
import sys
from enum import IntEnum
from pathlib import Path
from typing import Any, Final, TextIO

from bisym.cli.report import FORMATS, SampleWriter, parse_matrix, render
from bisym.core.config import Configuration
from bisym.core.constructors import BISYM_TOL, construct, intersection_problem, max_eig_error
from bisym.core.errors import NotSymmetricError, VerificationError
from bisym.core.linalg.smallmat import (
    CLAMP_TOL,
    is_bisymmetric,
    is_centrosymmetric,
    is_persymmetric,
    is_symmetric,
    sym_eigenvalues,
)
from bisym.core.sampler import EXAMPLE_SPECTRUM, SampleSummary, TraceMode, run_sample
from bisym.core.solver import solve
from bisym.core.spectrum import CaseTag, Verdict, decide, make_spectrum

_log = logging.getLogger("bisym.cli")


class ExitCode(IntEnum):
    OK = 0
    INFEASIBLE = 1
    UNKNOWN = 2
    USAGE = 64
    PARSE = 65
    SOFTWARE = 70


_VERDICT_EXIT: Final[dict[Verdict, ExitCode]] = {
    Verdict.FEASIBLE: ExitCode.OK,
    Verdict.INFEASIBLE: ExitCode.INFEASIBLE,
    Verdict.UNKNOWN: ExitCode.UNKNOWN,
}

# Closed forms of the worked example's border entries
EXAMPLE_A0: Final[float] = math.sqrt((51 - 3 * math.sqrt(273)) / 200)
EXAMPLE_B0: Final[float] = math.sqrt((59 + 3 * math.sqrt(273)) / 200)

_EXAMPLE_BORDER_TOL: Final[float] = 1e-9
_EXAMPLE_EIG_TOL: Final[float] = 1e-8


def _format(args: argparse.Namespace, config: Configuration) -> str:
    if args.format is not None:
        return args.format
    if config.output_format in FORMATS:
        return config.output_format
    _log.warning("unknown output format %r in configuration, using json", config.output_format)
    return "json"


def _tolerance(args: argparse.Namespace, config: Configuration) -> float:
    return args.tol if getattr(args, "tol", None) is not None else config.tolerance


def cmd_check(args: argparse.Namespace, config: Configuration, out: TextIO) -> ExitCode:
    """Print the feasibility report for a spectrum."""
    report = decide(make_spectrum(args.spectrum))
    assert report.verdict is not None
    out.write(render(report.to_dict(), _format(args, config)))
    return _VERDICT_EXIT[report.verdict]


def cmd_construct(args: argparse.Namespace, config: Configuration, out: TextIO) -> ExitCode:
    """
    Print a realizing matrix for a feasible spectrum.

    Infeasible and unknown spectra produce the feasibility report with the
    reason instead, and the matching exit code.
    """
    spectrum = make_spectrum(args.spectrum)
    report = decide(spectrum)
    assert report.verdict is not None
    fmt = _format(args, config)

    if report.verdict is not Verdict.FEASIBLE:
        doc = report.to_dict()
        doc["reason"] = report.violated.value if report.violated else "no construction applies"
        out.write(render(doc, fmt))
        return _VERDICT_EXIT[report.verdict]

    try:
        result = construct(spectrum, _tolerance(args, config))
    except VerificationError as e:
        print(f"bisym: internal verification failure for {spectrum}: {e}", file=sys.stderr)
        return ExitCode.SOFTWARE

    out.write(render(report.to_dict() | result.to_dict(), fmt))
    return ExitCode.OK


def _read_matrix_text(source: Path) -> str:
    if str(source) == "-":
        return sys.stdin.read()
    return source.read_text(encoding="utf-8")


def cmd_verify(args: argparse.Namespace, config: Configuration, out: TextIO) -> ExitCode:
    """
    Check a matrix for structure, sign and spectrum.

    Raises:
        MatrixParseError: If the matrix input cannot be read
    """
    matrix = parse_matrix(_read_matrix_text(args.matrix))
    target = make_spectrum(args.spectrum)
    tol = _tolerance(args, config)

    try:
        achieved: tuple[float, ...] | None = sym_eigenvalues(matrix)
    except NotSymmetricError as e:
        _log.info("skipping eigenvalues: %s", e)
        achieved = None

    error = max_eig_error(achieved, target) if achieved is not None else None
    min_entry = float(matrix.min())
    bisymmetric = is_bisymmetric(matrix, BISYM_TOL)
    nonnegative = min_entry >= -CLAMP_TOL
    spectrum_ok = error is not None and error <= tol * (1.0 + abs(target.values[0]))
    ok = bisymmetric and nonnegative and spectrum_ok

    doc: dict[str, Any] = {
        "ok": ok,
        "symmetric": is_symmetric(matrix, BISYM_TOL),
        "persymmetric": is_persymmetric(matrix, BISYM_TOL),
        "centrosymmetric": is_centrosymmetric(matrix, BISYM_TOL),
        "bisymmetric": bisymmetric,
        "nonnegative": nonnegative,
        "min_entry": min_entry,
        "spectrum_target": list(target.values),
        "spectrum_achieved": list(achieved) if achieved is not None else None,
        "max_eig_error": error,
        "tolerance": tol,
    }
    out.write(render(doc, _format(args, config)))
    return ExitCode.OK if ok else ExitCode.INFEASIBLE


def cmd_sample(args: argparse.Namespace, config: Configuration, out: TextIO) -> ExitCode:
    """Stream evaluated random spectra; the summary goes to stderr for csv output."""
    n = args.n if args.n is not None else config.sample_count
    seed = args.seed if args.seed is not None else config.sample_seed
    trace = args.trace if args.trace is not None else config.sample_trace
    try:
        mode = TraceMode(trace)
    except ValueError:
        print(f"bisym: unknown trace mode {trace!r}; expected zero or positive", file=sys.stderr)
        return ExitCode.USAGE
    if n < 1:
        print(f"bisym: sample count must be at least 1, got {n}", file=sys.stderr)
        return ExitCode.USAGE
    tol = _tolerance(args, config)

    records = run_sample(n, seed, mode, include_example=args.include_example, tol=tol)
    summary = SampleSummary()

    if args.format == "csv":
        writer = SampleWriter(out)
        for record in records:
            summary.add(record)
            writer.write(record.to_row())
        print(json.dumps(summary.to_dict()), file=sys.stderr)
    else:
        rows = []
        for record in records:
            summary.add(record)
            rows.append(record.to_row())
        if args.format == "json":
            out.write(render({"records": rows, "summary": summary.to_dict()}, "json"))
        else:
            for row in rows:
                out.write(render(row, "plain") + "\n")
            out.write(render(summary.to_dict(), "plain"))

    return ExitCode.SOFTWARE if summary.failures else ExitCode.OK


def cmd_example(args: argparse.Namespace, config: Configuration, out: TextIO) -> ExitCode:
    """Rebuild the worked example and compare the solver against the closed forms."""
    spectrum = make_spectrum(EXAMPLE_SPECTRUM)
    solution = solve(intersection_problem(spectrum, CaseTag.THEOREM2))
    result = construct(spectrum)

    diff_a = abs(solution.a - EXAMPLE_A0)
    diff_b = abs(solution.b - EXAMPLE_B0)
    ok = diff_a <= _EXAMPLE_BORDER_TOL and diff_b <= _EXAMPLE_BORDER_TOL and result.max_eig_error <= _EXAMPLE_EIG_TOL

    doc: dict[str, Any] = {
        "ok": ok,
        "a0": {"closed_form": EXAMPLE_A0, "solver": solution.a, "difference": diff_a},
        "b0": {"closed_form": EXAMPLE_B0, "solver": solution.b, "difference": diff_b},
        "radius_sq": solution.a**2 + solution.b**2,
        "solution": solution.to_dict(),
        "case": result.case.value,
        "matrix": result.matrix.tolist(),
        "spectrum_target": list(spectrum.values),
        "spectrum_achieved": list(result.achieved_spectrum),
        "max_eig_error": result.max_eig_error,
    }
    out.write(render(doc, _format(args, config)))
    return ExitCode.OK if ok else ExitCode.SOFTWARE
