"""Rendering of reports and parsing of matrix input."""

import csv
import io
import json
import math
from collections.abc import Iterable, Mapping
from typing import Any, Final, TextIO

import numpy as np

from bisym.core.errors import MatrixParseError
from bisym.core.linalg.smallmat import Matrix

FORMATS: Final[tuple[str, ...]] = ("json", "csv", "plain")

SAMPLE_COLUMNS: Final[tuple[str, ...]] = (
    "seed_index",
    "l1",
    "l2",
    "l3",
    "l4",
    "l5",
    "verdict",
    "case",
    "cube_sum",
    "max_eig_error",
    "min_entry",
)


def _scalar(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    # repr gives the shortest string that round-trips
    if isinstance(value, float):
        return repr(value)
    return str(value)


def flatten(doc: Mapping[str, Any], prefix: str = "") -> dict[str, Any]:
    """Collapse nested mappings and lists into dotted keys."""
    flat: dict[str, Any] = {}
    for key, value in doc.items():
        name = f"{prefix}{key}"
        if isinstance(value, Mapping):
            flat.update(flatten(value, f"{name}."))
        elif isinstance(value, list | tuple):
            flat.update(flatten({str(i): v for i, v in enumerate(value)}, f"{name}."))
        else:
            flat[name] = value
    return flat


def _plain_lines(doc: Mapping[str, Any]) -> Iterable[str]:
    for key, value in doc.items():
        if key == "matrix" and isinstance(value, list):
            yield "matrix:"
            for row in value:
                yield "  " + " ".join(_scalar(v) for v in row)
        elif isinstance(value, Mapping):
            yield f"{key}:"
            for sub_key, sub_value in value.items():
                yield f"  {sub_key}: {_scalar(sub_value)}"
        elif isinstance(value, list | tuple):
            yield f"{key}: " + " ".join(_scalar(v) for v in value)
        else:
            yield f"{key}: {_scalar(value)}"


def render(doc: Mapping[str, Any], fmt: str) -> str:
    """
    Serialize a report document.

    Args:
        doc: The report, nested mappings and lists of scalars
        fmt: One of json, csv or plain

    Returns:
        The rendered text, newline terminated
    """
    match fmt:
        case "json":
            return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
        case "csv":
            flat = flatten(doc)
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(flat.keys())
            writer.writerow(_scalar(v) for v in flat.values())
            return buffer.getvalue()
        case "plain":
            return "\n".join(_plain_lines(doc)) + "\n"
        case _:
            raise ValueError(f"unknown format {fmt!r}")


class SampleWriter:
    """Streams sample rows as CSV with a header."""

    def __init__(self, stream: TextIO):
        self._writer = csv.DictWriter(stream, fieldnames=SAMPLE_COLUMNS, lineterminator="\n")
        self._writer.writeheader()

    def write(self, row: Mapping[str, Any]) -> None:
        self._writer.writerow({k: _scalar(row[k]) for k in SAMPLE_COLUMNS})


def _finite(token: Any) -> float:
    try:
        value = float(token)
    except (TypeError, ValueError):
        raise MatrixParseError(f"not a number: {token!r}") from None
    if not math.isfinite(value):
        raise MatrixParseError(f"not a finite number: {token!r}")
    return value


def parse_matrix(text: str) -> Matrix:
    """
    Read a 5×5 matrix.

    Accepts five lines of five numbers separated by whitespace or commas, or a
    JSON document with a "matrix" array of rows (as written by construct).

    Raises:
        MatrixParseError: If the input is not 5 rows of 5 finite numbers
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise MatrixParseError(f"invalid JSON: {e}") from None
        rows = doc.get("matrix") if isinstance(doc, dict) else None
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise MatrixParseError('JSON input needs a "matrix" array of rows')
    else:
        rows = [line.replace(",", " ").split() for line in stripped.splitlines() if line.strip()]

    if len(rows) != 5 or any(len(row) != 5 for row in rows):
        shape = [len(row) for row in rows]
        raise MatrixParseError(f"expected 5 rows of 5 numbers, got row lengths {shape}")

    return np.array([[_finite(v) for v in row] for row in rows], dtype=np.float64)
