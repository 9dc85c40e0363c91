"""Seeded exploration of the spectrum region with λ1 = 1 >= λ2 >= ... >= λ5 >= -1."""

import logging
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Final

import numpy as np

from bisym.core.constructors import VERIFY_TOL, construct
from bisym.core.errors import BisymError
from bisym.core.spectrum import CaseTag, Spectrum, Verdict, decide, make_spectrum

_log = logging.getLogger("bisym.sampler")

EXAMPLE_SPECTRUM: Final[tuple[float, ...]] = (1.0, 0.3, 0.2, -0.7, -0.8)

# Draws per requested spectrum before giving up on the rejection step.
_MAX_REJECTIONS: Final[int] = 10_000


class TraceMode(Enum):
    ZERO = "zero"
    POSITIVE = "positive"


def draw_spectrum(rng: np.random.Generator, mode: TraceMode) -> Spectrum:
    """
    Draw one spectrum with λ1 = 1 and the remaining values in [−1, 1].

    Uniform order statistics with rejection; not uniform on the constrained
    region.

    Raises:
        RuntimeError: If no draw is accepted within the rejection budget
    """
    for _ in range(_MAX_REJECTIONS):
        if mode is TraceMode.ZERO:
            l2, l3, l4 = sorted(rng.uniform(-1.0, 1.0, size=3), reverse=True)
            l5 = -(1.0 + l2 + l3 + l4)
            if -1.0 <= l5 <= l4:
                return make_spectrum((1.0, l2, l3, l4, l5))
        else:
            rest = sorted(rng.uniform(-1.0, 1.0, size=4), reverse=True)
            spectrum = make_spectrum((1.0, *rest))
            if spectrum.trace > spectrum.slack():
                return spectrum
    raise RuntimeError(f"no {mode.value}-trace spectrum accepted after {_MAX_REJECTIONS} draws")


@dataclass(frozen=True, slots=True)
class SampleRecord:
    seed_index: int
    values: tuple[float, ...]
    verdict: Verdict
    case: CaseTag
    cube_sum: float
    max_eig_error: float | None = None
    min_entry: float | None = None
    error: str | None = None

    @property
    def verification_failed(self) -> bool:
        return self.error is not None

    def to_row(self) -> dict[str, Any]:
        row: dict[str, Any] = {"seed_index": self.seed_index}
        row.update({f"l{i}": v for i, v in enumerate(self.values, start=1)})
        row.update(
            verdict=self.verdict.value,
            case=self.case.value,
            cube_sum=self.cube_sum,
            max_eig_error=self.max_eig_error,
            min_entry=self.min_entry,
        )
        return row


def evaluate(seed_index: int, s: Spectrum, tol: float = VERIFY_TOL) -> SampleRecord:
    """Decide s and, when feasible, construct and verify a witness."""
    report = decide(s)
    assert report.verdict is not None

    record = SampleRecord(
        seed_index=seed_index,
        values=s.values,
        verdict=report.verdict,
        case=report.case,
        cube_sum=report.cube_sum,
    )
    if report.verdict is not Verdict.FEASIBLE:
        return record

    try:
        result = construct(s, tol)
    except BisymError as e:
        _log.warning("sample %d %s: construction failed: %s", seed_index, s, e)
        return SampleRecord(
            seed_index=seed_index,
            values=s.values,
            verdict=report.verdict,
            case=report.case,
            cube_sum=report.cube_sum,
            error=str(e),
        )

    return SampleRecord(
        seed_index=seed_index,
        values=s.values,
        verdict=report.verdict,
        case=report.case,
        cube_sum=report.cube_sum,
        max_eig_error=result.max_eig_error,
        min_entry=result.min_entry,
    )


def run_sample(
    n: int,
    seed: int,
    mode: TraceMode = TraceMode.ZERO,
    *,
    include_example: bool = False,
    tol: float = VERIFY_TOL,
) -> Iterator[SampleRecord]:
    """
    Evaluated samples in seed_index order.

    Args:
        n: Number of random spectra
        seed: Seed for numpy's default generator
        mode: Trace constraint on the drawn spectra
        include_example: Emit the worked example spectrum as row 0 first
        tol: Eigenvalue acceptance tolerance for constructions

    Raises:
        ValueError: If n is less than 1
    """
    if n < 1:
        raise ValueError(f"sample count must be at least 1, got {n}")
    return _iter_samples(n, seed, mode, include_example, tol)


def _iter_samples(n: int, seed: int, mode: TraceMode, include_example: bool, tol: float) -> Iterator[SampleRecord]:
    if include_example:
        yield evaluate(0, make_spectrum(EXAMPLE_SPECTRUM), tol)

    rng = np.random.default_rng(seed)
    for index in range(1, n + 1):
        yield evaluate(index, draw_spectrum(rng, mode), tol)


@dataclass
class SampleSummary:
    """Running totals over a sample stream."""

    total: int = 0
    verdicts: Counter[str] = field(default_factory=Counter)
    cases: Counter[str] = field(default_factory=Counter)
    max_eig_error: float = 0.0
    failures: int = 0

    def add(self, record: SampleRecord) -> None:
        self.total += 1
        self.verdicts[record.verdict.value] += 1
        self.cases[record.case.value] += 1
        if record.max_eig_error is not None:
            self.max_eig_error = max(self.max_eig_error, record.max_eig_error)
        if record.verification_failed:
            self.failures += 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "total": self.total,
            "verdicts": {v.value: self.verdicts[v.value] for v in Verdict},
            "cases": dict(sorted(self.cases.items())),
            "max_eig_error": self.max_eig_error,
            "verification_failures": self.failures,
        }
