"""
Block form of 5×5 bisymmetric matrices.

Every 5×5 bisymmetric matrix can be written as

    [ A       x/√2    J C J ]
    [ xᵀ/√2   p       xᵀJ/√2 ]
    [ C       J x/√2  J A J ]

with A symmetric and J C J = Cᵀ. Its spectrum is the union of the spectra of
A − JC and of the bordered matrix [[p, xᵀ], [x, A + JC]].
"""

import math
from dataclasses import dataclass
from typing import Final

import numpy as np
from numpy.typing import ArrayLike

from bisym.core.errors import InvalidPartsError
from bisym.core.linalg.smallmat import Matrix, reverse_identity

PARTS_TOL: Final[float] = 1e-12

_J2: Final[Matrix] = reverse_identity(2)
_SQRT2: Final[float] = math.sqrt(2.0)


def _block(name: str, value: ArrayLike, shape: tuple[int, ...]) -> Matrix:
    arr = np.array(value, dtype=np.float64)
    if arr.shape != shape:
        raise InvalidPartsError(f"{name} must have shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidPartsError(f"{name} has non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class CBParts:
    """Block data (A, C, x, p) of a 5×5 bisymmetric matrix."""

    a: Matrix
    c: Matrix
    x: Matrix
    p: float

    def __init__(self, a: ArrayLike, c: ArrayLike, x: ArrayLike, p: float):
        a_arr = _block("A", a, (2, 2))
        c_arr = _block("C", c, (2, 2))
        x_arr = _block("x", x, (2,))
        if not math.isfinite(p):
            raise InvalidPartsError(f"p must be finite, got {p!r}")

        if np.max(np.abs(a_arr - a_arr.T)) > PARTS_TOL:
            raise InvalidPartsError("A is not symmetric")
        if np.max(np.abs(_J2 @ c_arr.T @ _J2 - c_arr)) > PARTS_TOL:
            raise InvalidPartsError("J Cᵀ J != C")

        object.__setattr__(self, "a", a_arr)
        object.__setattr__(self, "c", c_arr)
        object.__setattr__(self, "x", x_arr)
        object.__setattr__(self, "p", float(p))

    @classmethod
    def from_split_blocks(cls, plus: ArrayLike, minus: ArrayLike, x: ArrayLike, p: float) -> "CBParts":
        """
        Build the parts from X = A + JC and Y = A − JC.

        Args:
            plus: X, the trailing block of the bordered 3×3 matrix
            minus: Y, the 2×2 matrix carrying the remaining two eigenvalues
            x: Border vector
            p: Center entry
        """
        big = np.asarray(plus, dtype=np.float64)
        small = np.asarray(minus, dtype=np.float64)
        jc = (big - small) / 2.0
        return cls(a=(big + small) / 2.0, c=_J2 @ jc, x=x, p=p)

    @property
    def jc(self) -> Matrix:
        return _J2 @ self.c

    def is_nonnegative(self, tol: float = 0.0) -> bool:
        """Whether the assembled matrix is entrywise nonnegative."""
        return bool(
            self.p >= -tol and np.all(self.x >= -tol) and np.all(self.a >= -tol) and np.all(self.c >= -tol)
        )


@dataclass(frozen=True, eq=False)
class CBSplit:
    small: Matrix
    big: Matrix


def assemble(parts: CBParts) -> Matrix:
    """The 5×5 bisymmetric matrix described by parts."""
    a, c, x, p = parts.a, parts.c, parts.x, parts.p
    border = x / _SQRT2

    q = np.zeros((5, 5))
    q[:2, :2] = a
    q[:2, 2] = border
    q[:2, 3:] = _J2 @ c @ _J2
    q[2, :2] = border
    q[2, 2] = p
    q[2, 3:] = _J2 @ border
    q[3:, :2] = c
    q[3:, 2] = _J2 @ border
    q[3:, 3:] = _J2 @ a @ _J2
    return q


def split(parts: CBParts) -> CBSplit:
    """The two blocks whose spectra make up the spectrum of assemble(parts)."""
    jc = parts.jc
    big = np.zeros((3, 3))
    big[0, 0] = parts.p
    big[0, 1:] = parts.x
    big[1:, 0] = parts.x
    big[1:, 1:] = parts.a + jc
    return CBSplit(small=parts.a - jc, big=big)
