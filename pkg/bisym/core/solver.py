"""
Nonnegative intersection of a circle and a hyperbola.

Finds (a, b) >= 0 with

    a² + b² = r²
    β·b² − 2ab·γ = t

by bisection along the quarter circle a = r·cos θ, b = r·sin θ.
"""

import logging
import math
from dataclasses import dataclass
from functools import cache
from typing import Final

import numpy as np
from numpy.typing import ArrayLike, NDArray

from bisym.core.errors import HypothesisError, NoBracketError

_log = logging.getLogger("bisym.solver")

PROBLEM_TOL: Final[float] = 1e-12

_MAX_BISECTIONS: Final[int] = 200
_WIDTH_TOL: Final[float] = 1e-15

_ORACLE_SAMPLES: Final[int] = 1_000_000
_ORACLE_REFINEMENTS: Final[int] = 100

_HALF_PI: Final[float] = math.pi / 2.0


@dataclass(frozen=True, slots=True)
class IntersectionProblem:
    """Circle of squared radius r_sq and the hyperbola beta·b² − 2ab·gamma = t."""

    r_sq: float
    beta: float
    gamma: float
    t: float

    def __post_init__(self) -> None:
        if not self.beta > 0:
            raise HypothesisError("IntersectionProblem", "beta > 0", self.beta)
        if not self.gamma >= 0:
            raise HypothesisError("IntersectionProblem", "gamma >= 0", self.gamma)
        if not self.t > 0:
            raise HypothesisError("IntersectionProblem", "t > 0", self.t)
        if not self.r_sq >= -PROBLEM_TOL:
            raise HypothesisError("IntersectionProblem", "r_sq >= 0", self.r_sq)
        if self.r_sq < 0:
            object.__setattr__(self, "r_sq", 0.0)

    @property
    def certificate_slack(self) -> float:
        """beta·r² − t; the system has a nonnegative solution iff this is >= 0."""
        return self.beta * self.r_sq - self.t

    def h(self, theta: ArrayLike) -> NDArray[np.float64]:
        """The hyperbola equation evaluated along the quarter circle."""
        th = np.asarray(theta, dtype=np.float64)
        sin, cos = np.sin(th), np.cos(th)
        return self.beta * self.r_sq * sin * sin - 2.0 * self.r_sq * sin * cos * self.gamma - self.t

    def hyperbola_branch(self, a: ArrayLike) -> NDArray[np.float64]:
        """The upper branch b(a) of the hyperbola, increasing in a >= 0."""
        x = np.asarray(a, dtype=np.float64)
        return (x * self.gamma + np.sqrt(x * x * self.gamma**2 + self.beta * self.t)) / self.beta

    def point(self, theta: float) -> "IntersectionSolution":
        r = math.sqrt(self.r_sq)
        a = max(r * math.cos(theta), 0.0)
        b = max(r * math.sin(theta), 0.0)
        return IntersectionSolution(
            a=a,
            b=b,
            theta=theta,
            circle_residual=a * a + b * b - self.r_sq,
            hyperbola_residual=self.beta * b * b - 2.0 * a * b * self.gamma - self.t,
        )


@dataclass(frozen=True, slots=True)
class IntersectionSolution:
    a: float
    b: float
    theta: float
    circle_residual: float
    hyperbola_residual: float

    def to_dict(self) -> dict[str, float]:
        return {
            "a": self.a,
            "b": self.b,
            "theta": self.theta,
            "circle_residual": self.circle_residual,
            "hyperbola_residual": self.hyperbola_residual,
        }


def _h_scalar(problem: IntersectionProblem, theta: float) -> float:
    return float(problem.h(theta))


def _check_bracket(problem: IntersectionProblem) -> float:
    """Value of h at π/2, raising when the system cannot be bracketed."""
    top = _h_scalar(problem, _HALF_PI)
    if top < -PROBLEM_TOL * (1.0 + problem.beta):
        raise NoBracketError(problem.certificate_slack)
    return top


def _bisect(problem: IntersectionProblem, lo: float, hi: float, max_steps: int, width: float = 0.0) -> float:
    """Shrink [lo, hi] with h(lo) < 0 <= h(hi) and return its midpoint."""
    for _ in range(max_steps):
        if hi - lo < width:
            break
        mid = (lo + hi) / 2.0
        if _h_scalar(problem, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def solve(problem: IntersectionProblem) -> IntersectionSolution:
    """
    Find the nonnegative intersection point with the smallest angle θ.

    h(0) = −t < 0 and h(π/2) = beta·r² − t, so a nonnegative certificate
    gives a sign change on [0, π/2]. Along the quarter circle h first
    decreases then increases, hence the root is unique.

    Raises:
        NoBracketError: If beta·r² − t is negative beyond tolerance
    """
    if _check_bracket(problem) <= 0.0:
        # certificate holds with equality: the hyperbola meets the circle on the b-axis
        return problem.point(_HALF_PI)

    theta = _bisect(problem, 0.0, _HALF_PI, _MAX_BISECTIONS, _WIDTH_TOL)
    solution = problem.point(theta)
    _log.debug("solved %s at theta=%r: a=%r b=%r", problem, theta, solution.a, solution.b)
    return solution


@cache
def _oracle_grid() -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    theta = np.linspace(0.0, _HALF_PI, _ORACLE_SAMPLES)
    sin, cos = np.sin(theta), np.cos(theta)
    return theta, sin * sin, sin * cos


def oracle_solve(problem: IntersectionProblem) -> IntersectionSolution:
    """
    Brute-force counterpart of solve, for cross-checking.

    Scans h on a uniform grid of the quarter circle, refines every sign
    change by bisection and returns the root with the smallest θ.

    Raises:
        NoBracketError: If beta·r² − t is negative beyond tolerance
    """
    theta, sin_sq, sin_cos = _oracle_grid()
    values = problem.beta * problem.r_sq * sin_sq - 2.0 * problem.r_sq * sin_cos * problem.gamma - problem.t

    negative = values < 0.0
    crossings = np.flatnonzero(negative[:-1] & ~negative[1:])

    roots = [_bisect(problem, float(theta[i]), float(theta[i + 1]), _ORACLE_REFINEMENTS) for i in crossings]
    if roots:
        return problem.point(min(roots))

    _check_bracket(problem)
    return problem.point(_HALF_PI)
