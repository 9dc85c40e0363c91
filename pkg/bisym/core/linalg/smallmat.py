"""Dense symmetric matrices of order 2, 3 and 5."""

import logging
import math
from typing import Final

import numpy as np
from numpy.typing import ArrayLike, NDArray

from bisym.core.errors import NoConvergenceError, NotSymmetricError

_log = logging.getLogger("bisym.linalg")

SUPPORTED_ORDERS: Final[frozenset[int]] = frozenset({2, 3, 5})

CLAMP_TOL: Final[float] = 1e-12

_SYMMETRY_TOL: Final[float] = 1e-12
_OFF_DIAGONAL_TOL: Final[float] = 1e-13
_MAX_SWEEPS: Final[int] = 100

Matrix = NDArray[np.float64]


def as_matrix(m: ArrayLike) -> Matrix:
    """Coerce to a square float64 array."""
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def reverse_identity(n: int) -> Matrix:
    """The n×n matrix with ones on the anti-diagonal."""
    if n not in SUPPORTED_ORDERS:
        raise ValueError(f"unsupported order {n}; expected one of {sorted(SUPPORTED_ORDERS)}")
    return np.fliplr(np.eye(n))


def _max_abs(m: Matrix) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def is_symmetric(m: ArrayLike, tol: float = 1e-12) -> bool:
    a = as_matrix(m)
    return _max_abs(a - a.T) <= tol


def is_persymmetric(m: ArrayLike, tol: float = 1e-12) -> bool:
    """Symmetric about the anti-diagonal: J mᵀ J = m."""
    a = as_matrix(m)
    j = reverse_identity(a.shape[0])
    return _max_abs(j @ a.T @ j - a) <= tol


def is_centrosymmetric(m: ArrayLike, tol: float = 1e-12) -> bool:
    a = as_matrix(m)
    j = reverse_identity(a.shape[0])
    return _max_abs(a @ j - j @ a) <= tol


def is_bisymmetric(m: ArrayLike, tol: float = 1e-12) -> bool:
    """
    Whether m is both symmetric and centrosymmetric within tol.

    Persymmetry follows from the other two and is cross-checked at 2·tol.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol!r}")

    a = as_matrix(m)
    if not (is_symmetric(a, tol) and is_centrosymmetric(a, tol)):
        return False

    return is_persymmetric(a, 2 * tol)


def is_nonnegative(m: ArrayLike, tol: float = CLAMP_TOL) -> bool:
    if tol < 0:
        raise ValueError(f"tolerance must be nonnegative, got {tol!r}")
    return bool(np.all(np.asarray(m, dtype=np.float64) >= -tol))


def clamp_nonnegative(m: ArrayLike, tol: float = CLAMP_TOL) -> Matrix:
    """Return a copy with entries in (−tol, 0] replaced by +0.0."""
    a = np.array(m, dtype=np.float64)
    a[(a > -tol) & (a <= 0.0)] = 0.0
    return a


def _off_diagonal_norm(a: Matrix) -> float:
    upper = np.triu(a, k=1)
    return math.sqrt(2.0 * float(np.sum(upper * upper)))


def sym_eigenvalues(m: ArrayLike, max_sweeps: int = _MAX_SWEEPS) -> tuple[float, ...]:
    """
    Eigenvalues of a small symmetric matrix, largest first.

    Classical Jacobi iteration: each step rotates away the largest
    off-diagonal entry, until the off-diagonal Frobenius norm drops below
    1e-13·(1 + ‖m‖_F).

    Args:
        m: A symmetric matrix
        max_sweeps: Budget in sweeps of n(n−1)/2 rotations

    Returns:
        The eigenvalues sorted non-increasing

    Raises:
        NotSymmetricError: If m is not symmetric to within 1e-12·(1 + max|m|)
        NoConvergenceError: If the rotation budget runs out
    """
    a = as_matrix(m).copy()
    n = a.shape[0]

    asymmetry = _max_abs(a - a.T)
    if asymmetry > _SYMMETRY_TOL * (1.0 + _max_abs(a)):
        raise NotSymmetricError(asymmetry)
    a = (a + a.T) / 2.0

    threshold = _OFF_DIAGONAL_TOL * (1.0 + float(np.linalg.norm(a)))
    budget = max_sweeps * n * (n - 1) // 2
    rotations = 0

    while (off := _off_diagonal_norm(a)) > threshold:
        if rotations >= budget:
            raise NoConvergenceError(rotations, off)

        upper = np.abs(np.triu(a, k=1))
        p, q = np.unravel_index(int(np.argmax(upper)), upper.shape)
        apq = a[p, q]

        tau = (a[q, q] - a[p, p]) / (2.0 * apq)
        t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
        c = 1.0 / math.sqrt(1.0 + t * t)
        s = t * c

        idx = [p, q]
        rot = np.array([[c, s], [-s, c]])
        a[:, idx] = a[:, idx] @ rot
        a[idx, :] = rot.T @ a[idx, :]
        a[p, q] = a[q, p] = 0.0
        rotations += 1

    _log.debug("order %d converged after %d rotations", n, rotations)
    return tuple(float(v) for v in sorted(np.diag(a), reverse=True))
