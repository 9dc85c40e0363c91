"""Candidate spectra, the scalar feasibility conditions and the case analysis."""

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Final, NamedTuple

from bisym.core.errors import (
    DegenerateDenominatorError,
    HypothesisError,
    NegativeTraceError,
    NonFiniteError,
    WrongArityError,
)

_log = logging.getLogger("bisym.spectrum")

# Slack for every sign and boundary comparison, relative to the largest |λ|. Boundaries are closed.
EPS_SIGN: Final[float] = 1e-12

ORDER: Final[int] = 5


def _nonneg(x: float, slack: float) -> bool:
    return x >= -slack


def _nonpos(x: float, slack: float) -> bool:
    return x <= slack


def _pos(x: float, slack: float) -> bool:
    return x > slack


def _neg(x: float, slack: float) -> bool:
    return x < -slack


class CaseTag(Enum):
    """Which explicit construction realizes a spectrum."""

    ALL_ZERO = "all_zero"
    L1 = "l1"
    L2 = "l2"
    L3 = "l3"
    L4 = "l4"
    THEOREM2 = "theorem2"
    COROLLARY4 = "corollary4"
    NONE = "none"


class Verdict(Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNKNOWN = "unknown"


class Condition(Enum):
    """Necessary conditions, in the order they are reported."""

    TRACE = "trace"
    PERRON = "perron"
    LOEWY_MCDONALD = "loewy_mcdonald"
    CUBE_SUM = "cube_sum"


@dataclass(frozen=True, slots=True)
class Spectrum:
    """Five eigenvalue targets, stored in non-increasing order."""

    values: tuple[float, float, float, float, float]
    trace: float = field(init=False)

    def __post_init__(self) -> None:
        if len(self.values) != ORDER:
            raise WrongArityError(len(self.values))
        if any(a < b for a, b in zip(self.values, self.values[1:], strict=False)):
            raise ValueError(f"spectrum values must be sorted non-increasing: {self.values!r}")
        object.__setattr__(self, "trace", math.fsum(self.values))

    @property
    def cube_sum(self) -> float:
        return math.fsum(v**3 for v in self.values)

    @property
    def magnitude(self) -> float:
        return max(abs(self.values[0]), abs(self.values[-1]))

    def slack(self, degree: int = 1) -> float:
        """Comparison slack for a quantity homogeneous of the given degree in the eigenvalues."""
        return EPS_SIGN * self.magnitude**degree

    @property
    def is_trace_zero(self) -> bool:
        return abs(self.trace) <= self.slack()

    def scaled(self, factor: float) -> "Spectrum":
        """Multiply every eigenvalue by a positive factor."""
        if not factor > 0:
            raise ValueError(f"scale factor must be positive, got {factor!r}")
        return make_spectrum(factor * v for v in self.values)

    def normalized(self) -> "Spectrum":
        """Rescale so that the Perron root is 1.

        Raises:
            HypothesisError: If the largest eigenvalue is not positive
        """
        if not self.values[0] > 0.0:
            raise HypothesisError("normalize", "λ1 > 0", self.values)
        lead = self.values[0]
        values = (1.0, *(v / lead for v in self.values[1:]))
        return Spectrum(values)  # type: ignore[arg-type]

    def decision_frame(self) -> "Spectrum":
        """The spectrum verdicts and constructions are computed on: λ1 = 1 when λ1 > 0."""
        return self.normalized() if self.values[0] > 0.0 else self

    def __str__(self) -> str:
        return "(" + ", ".join(repr(v) for v in self.values) + ")"


def make_spectrum(raw: Iterable[float], *, nonnegative_trace: bool = False) -> Spectrum:
    """
    Build a Spectrum from five numbers in any order.

    Args:
        raw: The candidate eigenvalues
        nonnegative_trace: Reject spectra whose trace is negative

    Returns:
        The spectrum, sorted non-increasing

    Raises:
        WrongArityError: If there are not exactly five entries
        NonFiniteError: If an entry is NaN or infinite
        NegativeTraceError: If nonnegative_trace is set and the trace is negative
    """
    values = [float(v) for v in raw]
    if len(values) != ORDER:
        raise WrongArityError(len(values))
    for index, value in enumerate(values):
        if not math.isfinite(value):
            raise NonFiniteError(index, value)

    spectrum = Spectrum(tuple(sorted(values, reverse=True)))  # type: ignore[arg-type]
    if nonnegative_trace and _neg(spectrum.trace, spectrum.slack()):
        raise NegativeTraceError(spectrum.trace)
    return spectrum


@dataclass(frozen=True, slots=True)
class FeasibilityReport:
    """Evaluated conditions for a spectrum and, once decided, its verdict."""

    spectrum: Spectrum
    verdict: Verdict | None
    perron_ok: bool
    trace_ok: bool
    loewy_mcdonald_ok: bool
    cube_sum: float
    cube_sum_ok: bool
    case: CaseTag = CaseTag.NONE
    violated: Condition | None = None
    proposition1: frozenset[int] = frozenset()

    @property
    def conditions(self) -> dict[str, bool]:
        return {
            Condition.TRACE.value: self.trace_ok,
            Condition.PERRON.value: self.perron_ok,
            Condition.LOEWY_MCDONALD.value: self.loewy_mcdonald_ok,
            Condition.CUBE_SUM.value: self.cube_sum_ok,
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "spectrum": list(self.spectrum.values),
            "trace": self.spectrum.trace,
            "verdict": self.verdict.value if self.verdict else None,
            "case": self.case.value,
            "violated": self.violated.value if self.violated else None,
            "conditions": self.conditions,
            "cube_sum": self.cube_sum,
            "proposition1": sorted(self.proposition1),
        }


def proposition1_conditions(s: Spectrum) -> frozenset[int]:
    """Which of the three coarse sufficient conditions hold for s."""
    l1, l2, l3, l4, l5 = s.values
    eps = s.slack()
    held: set[int] = set()
    if _nonneg(l4, eps) or _nonpos(l2, eps):
        held.add(1)
    if _nonneg(l2, eps) and _neg(l3, eps) and _nonneg(math.fsum((l1, l3, l4)), eps):
        held.add(2)
    if _nonneg(l3, eps) and _neg(l4, eps) and _nonneg(math.fsum((l1, l2, l4, l5)), eps):
        held.add(3)
    return frozenset(held)


def necessary_conditions(s: Spectrum) -> FeasibilityReport:
    """
    Evaluate the necessary conditions for s.

    The returned report is Infeasible when one of them fails; otherwise its
    verdict is left as None for classify to settle.
    """
    l1, l2, l3, l4, l5 = s.values
    eps = s.slack()
    cube_sum = s.cube_sum

    checks: dict[Condition, bool] = {
        Condition.TRACE: _nonneg(s.trace, eps),
        Condition.PERRON: _nonneg(l1 - abs(l5), eps),
        # λ2 + λ5 <= trace, written without the cancellation
        Condition.LOEWY_MCDONALD: _nonneg(math.fsum((l1, l3, l4)), eps),
        Condition.CUBE_SUM: _nonneg(cube_sum, s.slack(3)),
    }
    violated = next((cond for cond, ok in checks.items() if not ok), None)

    if violated is not None:
        _log.debug("spectrum %s violates %s", s, violated.value)

    return FeasibilityReport(
        spectrum=s,
        verdict=Verdict.INFEASIBLE if violated is not None else None,
        perron_ok=checks[Condition.PERRON],
        trace_ok=checks[Condition.TRACE],
        loewy_mcdonald_ok=checks[Condition.LOEWY_MCDONALD],
        cube_sum=cube_sum,
        cube_sum_ok=checks[Condition.CUBE_SUM],
        violated=violated,
        proposition1=proposition1_conditions(s),
    )


def classify(s: Spectrum) -> CaseTag:
    """
    Pick the construction for a spectrum that passed the necessary conditions.

    Overlapping cases are resolved by the fixed order
    AllZero > L1 > L2 > L3 > L4 > Theorem2 > Corollary4.
    """
    if s.magnitude == 0.0:
        return CaseTag.ALL_ZERO

    l1, l2, l3, l4, l5 = s.values
    eps = s.slack()
    s4 = math.fsum((l1, l2, l4, l5))
    s134 = math.fsum((l1, l3, l4))
    l25 = l2 + l5
    l34 = l3 + l4

    if _nonneg(l4, eps) or (_nonneg(l3, eps) and _neg(l4, eps) and _nonneg(s4, eps) and _nonneg(l25, eps)):
        return CaseTag.L1

    if (
        (_nonpos(l2, eps) and _pos(l1, eps))
        or (_nonneg(l2, eps) and _neg(l3, eps) and _neg(l25, eps) and _nonneg(s134, eps))
        or (_nonneg(l3, eps) and _neg(l4, eps) and _nonneg(s4, eps) and _neg(l25, eps) and _neg(l34, eps))
    ):
        return CaseTag.L2

    if _nonneg(l2, eps) and _neg(l3, eps) and _nonneg(l25, eps) and _nonneg(s134, eps):
        return CaseTag.L3

    if _nonneg(l3, eps) and _neg(l4, eps) and _nonneg(s4, eps) and _neg(l25, eps) and _nonneg(l34, eps):
        return CaseTag.L4

    if _pos(l3, eps) and _neg(l4, eps) and _neg(s4, eps):
        if s.is_trace_zero and _nonneg(s.cube_sum, s.slack(3)):
            return CaseTag.THEOREM2
        if _pos(s.trace, eps):
            try:
                if corollary4_condition(s.normalized()):
                    return CaseTag.COROLLARY4
            except (HypothesisError, DegenerateDenominatorError) as e:
                _log.debug("positive-trace condition not applicable to %s: %s", s, e)

    return CaseTag.NONE


class Lemma1Bounds(NamedTuple):
    r_sq: float
    q: float
    ok: bool


def _require(operation: str, holds: bool, condition: str, s: Spectrum) -> None:
    if not holds:
        raise HypothesisError(operation, condition, s.values)


def _require_normalized_region(op: str, s: Spectrum) -> float:
    """Shared hypotheses of the circle-hyperbola constructions; returns the slack used."""
    l1, l2, l3, l4, l5 = s.values
    eps = s.slack()
    _require(op, abs(l1 - 1.0) <= EPS_SIGN, "λ1 = 1", s)
    _require(op, _pos(l3, eps), "λ3 > 0", s)
    _require(op, _neg(l4, eps), "λ4 < 0", s)
    # written as the Perron condition
    _require(op, _nonneg(l1 - abs(l5), eps), "λ5 >= -1", s)
    _require(op, _neg(math.fsum((l1, l2, l4, l5)), eps), "1 + λ2 + λ4 + λ5 < 0", s)
    return eps


def circle_radius_sq(s: Spectrum) -> float:
    l1, l2, l3, l4, l5 = s.values
    return l2 * l4 - l3 * l5 - l1 * (l3 + l5)


def lemma1_inequalities(s: Spectrum) -> Lemma1Bounds:
    """
    Evaluate the radius bounds behind the trace-zero construction.

    Args:
        s: A spectrum normalized to λ1 = 1 with λ3 > 0 > λ4, zero trace,
           nonnegative cube sum and 1 + λ2 + λ4 + λ5 < 0

    Returns:
        r² = λ2λ4 − λ3λ5 − λ3 − λ5, q = λ3λ5 / (λ2 + λ4), and whether
        r² >= 0 and r² >= q both hold

    Raises:
        HypothesisError: If s lies outside that region
    """
    op = "lemma1_inequalities"
    eps = _require_normalized_region(op, s)
    _require(op, s.is_trace_zero, "trace = 0", s)
    _require(op, _nonneg(s.cube_sum, s.slack(3)), "Σλ³ >= 0", s)

    _, l2, l3, l4, l5 = s.values
    r_sq = circle_radius_sq(s)
    q = l3 * l5 / (l2 + l4)
    return Lemma1Bounds(r_sq, q, _nonneg(r_sq, eps) and _nonneg(r_sq - q, eps))


def corollary4_condition(s: Spectrum) -> bool:
    """
    Whether the positive-trace construction applies to a normalized spectrum.

    The test r² >= −λ3λ5 / (1 + λ3 + λ5) is evaluated with the denominator
    cleared, which is exactly the solvability margin of the circle-hyperbola
    system built from s.

    Raises:
        HypothesisError: If s is not normalized or outside the stated region
        DegenerateDenominatorError: If 1 + λ3 + λ5 is not positive
    """
    op = "corollary4_condition"
    eps = _require_normalized_region(op, s)
    _require(op, _pos(s.trace, eps), "trace > 0", s)

    _, _, l3, _, l5 = s.values
    denominator = 1.0 + l3 + l5
    if denominator <= eps:
        raise DegenerateDenominatorError("1 + λ3 + λ5", denominator)

    return _nonneg(denominator * circle_radius_sq(s) + l3 * l5, eps)


def decide(s: Spectrum) -> FeasibilityReport:
    """
    Settle the verdict for s: necessary conditions first, then the case analysis.

    Both stages run on s.decision_frame(), the frame construct builds in, and
    the report carries s itself.
    """
    frame = s.decision_frame()
    report = replace(necessary_conditions(frame), spectrum=s, cube_sum=s.cube_sum)
    if report.verdict is Verdict.INFEASIBLE:
        return report

    case = classify(frame)
    if case is CaseTag.NONE:
        if frame.is_trace_zero:
            # Only reachable when values sit inside the sign tolerance band.
            _log.warning("trace-zero spectrum %s matched no construction; reporting unknown", s)
        verdict = Verdict.UNKNOWN
    else:
        verdict = Verdict.FEASIBLE

    _log.debug("spectrum %s: %s (%s)", s, verdict.value, case.value)
    return replace(report, verdict=verdict, case=case)
