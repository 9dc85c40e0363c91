"""Explicit nonnegative bisymmetric matrices realizing a feasible spectrum."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any, Final

import numpy as np

from bisym.core.errors import (
    ConditionFailedError,
    DegenerateDenominatorError,
    GuardViolationError,
    NotFeasibleError,
    VerificationError,
)
from bisym.core.linalg.cantoni_butler import CBParts, assemble
from bisym.core.linalg.smallmat import (
    CLAMP_TOL,
    Matrix,
    clamp_nonnegative,
    is_bisymmetric,
    is_nonnegative,
    sym_eigenvalues,
)
from bisym.core.solver import IntersectionProblem, solve
from bisym.core.spectrum import (
    CaseTag,
    Spectrum,
    Verdict,
    circle_radius_sq,
    corollary4_condition,
    decide,
    lemma1_inequalities,
)

_log = logging.getLogger("bisym.constructors")

VERIFY_TOL: Final[float] = 1e-7
BISYM_TOL: Final[float] = 1e-10


@dataclass(frozen=True, eq=False)
class ConstructionResult:
    """A realizing matrix together with the evidence that it realizes the target."""

    matrix: Matrix
    case: CaseTag
    target: Spectrum
    achieved_spectrum: tuple[float, ...]
    max_eig_error: float
    min_entry: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "case": self.case.value,
            "matrix": self.matrix.tolist(),
            "spectrum_target": list(self.target.values),
            "spectrum_achieved": list(self.achieved_spectrum),
            "residuals": {
                "max_eig_error": self.max_eig_error,
                "min_entry": self.min_entry,
            },
        }


def _guard(builder: str, inequality: str, value: float, slack: float) -> None:
    if value < -slack:
        raise GuardViolationError(builder, inequality, value)


def _sqrt_guarded(builder: str, inequality: str, radicand: float, slack: float) -> float:
    _guard(builder, inequality, radicand, slack)
    return math.sqrt(max(radicand, 0.0))


def build_l1(s: Spectrum) -> Matrix:
    """Corner pair (λ1, λ5), middle pair (λ2, λ4) and λ3 in the center."""
    l1, l2, l3, l4, l5 = s.values
    eps = s.slack()
    _guard("L1", "λ1 + λ5 >= 0", l1 + l5, eps)
    _guard("L1", "λ2 + λ4 >= 0", l2 + l4, eps)
    _guard("L1", "λ3 >= 0", l3, eps)

    m = np.zeros((5, 5))
    m[0, 0] = m[4, 4] = (l1 + l5) / 2.0
    m[0, 4] = m[4, 0] = (l1 - l5) / 2.0
    m[1, 1] = m[3, 3] = (l2 + l4) / 2.0
    m[1, 3] = m[3, 1] = (l2 - l4) / 2.0
    m[2, 2] = l3
    return m


def build_l2(s: Spectrum) -> Matrix:
    l1, l2, l3, l4, l5 = s.values
    eps = s.slack()
    _guard("L2", "trace >= 0", s.trace, eps)
    _guard("L2", "-λ4 >= 0", -l4, eps)
    _guard("L2", "-λ5 >= 0", -l5, eps)

    denominator = l1 + l2 - l3 + l5
    if abs(denominator) <= eps:
        raise DegenerateDenominatorError("λ1 + λ2 − λ3 + λ5", denominator)
    s4 = math.fsum((l1, l2, l4, l5))

    a = 0.5 * _sqrt_guarded("L2", "a² >= 0", (l1 + l5) * (l2 + l5) * (l3 + l4) / denominator, s.slack(2))
    b = _sqrt_guarded("L2", "b² >= 0", -(l1 + l5) * (l2 + l5) * s4 / (2.0 * denominator), s.slack(2))
    c = _sqrt_guarded("L2", "c² >= 0", -(l3 + l4) * s4 / 2.0, s.slack(2))

    return np.array(
        [
            [0.0, a, b, a, -l5],
            [a, 0.0, c, -l4, a],
            [b, c, s.trace, c, b],
            [a, -l4, c, 0.0, a],
            [-l5, a, b, a, 0.0],
        ]
    )


def _bordered(
    builder: str, corner: tuple[float, float], inner: float, center: float, border: float, slack: float
) -> Matrix:
    """Outer 2×2 corner block around a bordered 3×3 core, shared by L3 and L4."""
    diag, anti = corner
    _guard(builder, "corner >= 0", diag, slack)
    _guard(builder, "anti-corner >= 0", anti, slack)
    _guard(builder, "inner >= 0", inner, slack)
    _guard(builder, "center >= 0", center, slack)

    m = np.zeros((5, 5))
    m[0, 0] = m[4, 4] = diag
    m[0, 4] = m[4, 0] = anti
    m[1, 3] = m[3, 1] = inner
    m[2, 2] = center
    m[1, 2] = m[2, 1] = m[2, 3] = m[3, 2] = border
    return m


def build_l3(s: Spectrum) -> Matrix:
    l1, l2, l3, l4, l5 = s.values
    eps = s.slack()
    _guard("L3", "λ2 >= 0", l2, eps)
    _guard("L3", "λ2 + λ5 >= 0", l2 + l5, eps)
    _guard("L3", "λ1 + λ3 + λ4 >= 0", math.fsum((l1, l3, l4)), eps)
    d = _sqrt_guarded("L3", "-(λ3 + λ4)(λ1 + λ4) >= 0", -(l3 + l4) * (l1 + l4) / 2.0, s.slack(2))
    return _bordered("L3", ((l2 + l5) / 2.0, (l2 - l5) / 2.0), -l4, math.fsum((l1, l3, l4)), d, eps)


def build_l4(s: Spectrum) -> Matrix:
    l1, l2, l3, l4, l5 = s.values
    eps = s.slack()
    _guard("L4", "λ3 >= 0", l3, eps)
    _guard("L4", "λ1 + λ2 + λ4 + λ5 >= 0", math.fsum((l1, l2, l4, l5)), eps)
    _guard("L4", "λ3 + λ4 >= 0", l3 + l4, eps)
    g = _sqrt_guarded("L4", "-(λ2 + λ5)(λ1 + λ5) >= 0", -(l2 + l5) * (l1 + l5) / 2.0, s.slack(2))
    return _bordered("L4", ((l3 + l4) / 2.0, (l3 - l4) / 2.0), -l5, math.fsum((l1, l2, l5)), g, eps)


def intersection_problem(s: Spectrum, case: CaseTag) -> IntersectionProblem:
    """
    The circle-hyperbola system whose solution supplies the free border entries.

    Args:
        s: A spectrum normalized to λ1 = 1
        case: THEOREM2 or COROLLARY4, selecting the hyperbola coefficient

    Raises:
        HypothesisError: If s lies outside the region of the selected case
        ConditionFailedError: If case is COROLLARY4 and its radius condition fails
    """
    _, l2, l3, l4, l5 = s.values
    r_sq = circle_radius_sq(s)
    match case:
        case CaseTag.THEOREM2:
            bounds = lemma1_inequalities(s)
            if not bounds.ok:
                _log.warning("radius bounds fail for %s: r²=%r q=%r", s, bounds.r_sq, bounds.q)
            beta = -(l2 + l4)
        case CaseTag.COROLLARY4:
            beta = 1.0 + l3 + l5
            if not corollary4_condition(s):
                raise ConditionFailedError(r_sq, -l3 * l5 / beta)
        case _:
            raise ValueError(f"no circle-hyperbola system for case {case.value}")

    return IntersectionProblem(r_sq=r_sq, beta=beta, gamma=math.sqrt(max(-l2 * l4, 0.0)), t=-l3 * l5)


def _from_intersection(s: Spectrum, problem: IntersectionProblem) -> Matrix:
    """Assemble the matrix with A ± JC fixed by s and the border solving problem."""
    _, l2, _, l4, _ = s.values
    solution = solve(problem)
    g = problem.gamma
    parts = CBParts.from_split_blocks(
        plus=[[problem.beta, g], [g, 0.0]],
        minus=[[l2 + l4, g], [g, 0.0]],
        x=[solution.a, solution.b],
        p=0.0,
    )
    return assemble(parts)


def build_theorem2(s: Spectrum) -> Matrix:
    """
    Trace-zero construction for λ3 > 0 > λ4 with 1 + λ2 + λ4 + λ5 < 0.

    Raises:
        HypothesisError: If s is not normalized or outside the region
    """
    return _from_intersection(s, intersection_problem(s, CaseTag.THEOREM2))


def build_corollary4(s: Spectrum) -> Matrix:
    """
    Positive-trace construction for λ3 > 0 > λ4 with 1 + λ2 + λ4 + λ5 < 0.

    Raises:
        HypothesisError: If s is not normalized or outside the region
        ConditionFailedError: If the radius condition fails
    """
    return _from_intersection(s, intersection_problem(s, CaseTag.COROLLARY4))


def _zero(_: Spectrum) -> Matrix:
    return np.zeros((5, 5))


_BUILDERS: Final[dict[CaseTag, Callable[[Spectrum], Matrix]]] = {
    CaseTag.ALL_ZERO: _zero,
    CaseTag.L1: build_l1,
    CaseTag.L2: build_l2,
    CaseTag.L3: build_l3,
    CaseTag.L4: build_l4,
    CaseTag.THEOREM2: build_theorem2,
    CaseTag.COROLLARY4: build_corollary4,
}


def builder_for(case: CaseTag) -> Callable[[Spectrum], Matrix]:
    try:
        return _BUILDERS[case]
    except KeyError:
        raise ValueError(f"no builder for case {case.value}") from None


def max_eig_error(achieved: tuple[float, ...], target: Spectrum) -> float:
    return max(abs(a - t) for a, t in zip(achieved, target.values, strict=True))


def construct(s: Spectrum, tol: float = VERIFY_TOL) -> ConstructionResult:
    """
    Build and verify a nonnegative bisymmetric matrix with spectrum s.

    Args:
        s: The target spectrum
        tol: Eigenvalue acceptance tolerance, relative to 1 + λ1

    Returns:
        The matrix with its case and verification evidence

    Raises:
        NotFeasibleError: If decide(s) is not Feasible
        VerificationError: If the matrix fails a post-check
    """
    report = decide(s)
    if report.verdict is not Verdict.FEASIBLE:
        raise NotFeasibleError(report)

    case = report.case
    build = builder_for(case)
    # builders are homogeneous of degree one; structure and sign are checked before rescaling
    frame = s.decision_frame()
    lead = 1.0 if frame is s else s.values[0]
    built = build(frame)

    unit_min = float(built.min())
    unit = clamp_nonnegative(built, CLAMP_TOL)

    if not is_bisymmetric(unit, BISYM_TOL):
        raise VerificationError("bisymmetric", float(np.max(np.abs(unit - unit.T))), BISYM_TOL)
    if unit_min < -CLAMP_TOL or not is_nonnegative(unit, 0.0):
        raise VerificationError("nonnegative", lead * unit_min, lead * CLAMP_TOL)

    matrix = lead * unit
    achieved = sym_eigenvalues(matrix)
    error = max_eig_error(achieved, s)
    if error > tol * (1.0 + abs(s.values[0])):
        raise VerificationError("eigenvalues", error, tol * (1.0 + abs(s.values[0])))

    _log.debug("constructed %s via %s (max_eig_error=%.3e)", s, case.value, error)
    return ConstructionResult(
        matrix=matrix,
        case=case,
        target=s,
        achieved_spectrum=achieved,
        max_eig_error=error,
        min_entry=lead * unit_min,
    )

