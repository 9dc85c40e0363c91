"""Small dense linear algebra: structural predicates, eigensolver, block form."""

from bisym.core.linalg.cantoni_butler import CBParts, CBSplit, assemble, split
from bisym.core.linalg.smallmat import (
    clamp_nonnegative,
    is_bisymmetric,
    is_centrosymmetric,
    is_nonnegative,
    is_persymmetric,
    is_symmetric,
    reverse_identity,
    sym_eigenvalues,
)

__all__ = [
    # Block form
    "CBParts",
    "CBSplit",
    "assemble",
    "split",
    # Predicates
    "is_bisymmetric",
    "is_centrosymmetric",
    "is_nonnegative",
    "is_persymmetric",
    "is_symmetric",
    # Helpers
    "clamp_nonnegative",
    "reverse_identity",
    "sym_eigenvalues",
]
