"""Exception hierarchy for bisym."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from bisym.core.spectrum import FeasibilityReport


class BisymError(Exception):
    """Base class for every error raised by bisym."""


# Input


class SpectrumError(BisymError, ValueError):
    """A candidate spectrum could not be built from the given numbers."""


class WrongArityError(SpectrumError):
    """Raised when a spectrum does not have exactly five entries."""

    def __init__(self, count: int):
        self.count = count
        super().__init__(f"expected 5 eigenvalues, got {count}")


class NonFiniteError(SpectrumError):
    """Raised when a spectrum entry is NaN or infinite."""

    def __init__(self, index: int, value: float):
        self.index = index
        self.value = value
        super().__init__(f"entry {index} is not finite: {value!r}")


class NegativeTraceError(SpectrumError):
    def __init__(self, trace: float):
        self.trace = trace
        super().__init__(f"trace {trace!r} is negative")


# Preconditions of the individual constructions


class HypothesisError(BisymError):
    """Raised when a spectrum falls outside the region an operation is stated for."""

    def __init__(self, operation: str, condition: str, values: Any = None):
        self.operation = operation
        self.condition = condition
        self.values = values
        super().__init__(f"{operation}: hypothesis '{condition}' does not hold")


class GuardViolationError(BisymError):
    """Raised when a constructor's entrywise guard fails."""

    def __init__(self, builder: str, inequality: str, value: float):
        self.builder = builder
        self.inequality = inequality
        self.value = value
        super().__init__(f"{builder}: guard '{inequality}' violated (value {value!r})")


class DegenerateDenominatorError(BisymError):
    def __init__(self, expression: str, value: float):
        self.expression = expression
        self.value = value
        super().__init__(f"denominator {expression} = {value!r} is too close to zero")


class ConditionFailedError(BisymError):
    """Raised when the positive-trace construction is asked for but its condition fails."""

    def __init__(self, lhs: float, rhs: float):
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"positive-trace condition fails: {lhs!r} < {rhs!r}")


# Linear algebra


class NotSymmetricError(BisymError, ValueError):
    def __init__(self, asymmetry: float):
        self.asymmetry = asymmetry
        super().__init__(f"matrix is not symmetric (max asymmetry {asymmetry:.3e})")


class NoConvergenceError(BisymError):
    """Raised when the eigensolver exhausts its rotation budget."""

    def __init__(self, rotations: int, off_norm: float):
        self.rotations = rotations
        self.off_norm = off_norm
        super().__init__(f"eigensolver did not converge after {rotations} rotations (off-diagonal {off_norm:.3e})")


class InvalidPartsError(BisymError, ValueError):
    """Raised when block data does not describe a bisymmetric matrix."""


class NoBracketError(BisymError):
    """Raised when the circle-hyperbola system has no sign change on the quarter circle."""

    def __init__(self, slack: float):
        self.slack = slack
        super().__init__(f"no bracket on the quarter circle: beta*r^2 - t = {slack!r}")


# Dispatch


class NotFeasibleError(BisymError):
    """Raised by construct for spectra whose verdict is not feasible."""

    def __init__(self, report: FeasibilityReport):
        self.report = report
        reason = report.violated.value if report.violated is not None else "no construction applies"
        verdict = report.verdict.value if report.verdict is not None else "undecided"
        super().__init__(f"spectrum is {verdict}: {reason}")


class VerificationError(BisymError):
    """Raised when a constructed matrix fails one of its post-checks."""

    def __init__(self, check: str, value: float, tolerance: float):
        self.check = check
        self.value = value
        self.tolerance = tolerance
        super().__init__(f"verification '{check}' failed: {value!r} (tolerance {tolerance!r})")


class MatrixParseError(BisymError, ValueError):
    """Raised when matrix input is not 5 rows of 5 finite numbers."""
