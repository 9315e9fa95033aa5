"""Noncommutative polynomial toolkit for matrix polynomial identities.

Builds free polynomials over d letters, certifies polynomial identities of
matrix algebras, assembles a lacunary product series out of them, and
numerically audits where that series is bounded (explicit basic sets) and
where it is not (the row ball, via truncated Fock space witnesses).
"""

__version__ = "0.1.0"

from .errors import (
    CertificationError,
    DimensionMismatchError,
    LevelError,
    SamplingExhaustedError,
    SizeLimitError,
)
from .ncpoly import MatrixTuple, NCPolynomial, PolyMatrix

__all__ = [
    "CertificationError",
    "DimensionMismatchError",
    "LevelError",
    "MatrixTuple",
    "NCPolynomial",
    "PolyMatrix",
    "SamplingExhaustedError",
    "SizeLimitError",
    "__version__",
]
