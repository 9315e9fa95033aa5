"""Dense complex matrix support: operator norms, nullspaces, random samplers.

Random sampling uses the counter-based Philox generator keyed by
``(seed, purpose tag)``, so parallel callers get reproducible streams no
matter how work is scheduled.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .ncpoly import MatrixTuple

_POWER_MAXIT = 20000
_SVD_FALLBACK_DIM = 4096


def _is_sparse(A) -> bool:
    return sp.issparse(A)


def _start_vector(n: int) -> np.ndarray:
    # Deterministic, structure-free start: golden-angle phase ramp.
    k = np.arange(n)
    v = np.exp(1j * 2.39996322972865332 * k) + 0.5
    return v / np.linalg.norm(v)


def operator_norm(A, tol: float = 1e-10) -> float:
    """Largest singular value of a dense or sparse complex matrix.

    Power iteration on A*A with a deterministic start vector, stopping once
    the estimate is stable to relative ``tol``.  Dense inputs that fail to
    converge within the iteration cap fall back to a full decomposition.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if _is_sparse(A):
        data_finite = np.all(np.isfinite(A.data)) if A.nnz else True
        if not data_finite:
            raise ValueError("matrix has non-finite entries")
        A = A.tocsr()
    else:
        A = np.asarray(A, dtype=complex)
        if A.ndim != 2:
            raise ValueError(f"expected a matrix, got shape {A.shape}")
        if not np.all(np.isfinite(A)):
            raise ValueError("matrix has non-finite entries")
    if A.shape[0] == 0 or A.shape[1] == 0:
        return 0.0
    AH = A.conj().T if _is_sparse(A) else None
    v = _start_vector(A.shape[1])
    est_prev = -1.0
    stable = 0
    for _ in range(_POWER_MAXIT):
        w = A @ v
        est = float(np.linalg.norm(w))
        if est == 0.0:
            return 0.0
        u = (AH @ w) if AH is not None else (A.conj().T @ w)
        nu = np.linalg.norm(u)
        if nu == 0.0:
            return est
        v = u / nu
        if abs(est - est_prev) <= 0.25 * tol * max(est, 1e-300):
            stable += 1
            if stable >= 3:
                return est
        else:
            stable = 0
        est_prev = est
    if not _is_sparse(A) and max(A.shape) <= _SVD_FALLBACK_DIM:
        return float(np.linalg.svd(A, compute_uv=False)[0])
    return est_prev


def row_norm(X: MatrixTuple) -> float:
    """Operator norm of the block row [X_1 ... X_d]."""
    return operator_norm(X.row())


@dataclass(frozen=True)
class NullspaceResult:
    """Orthonormal numerical nullspace basis with the diagnostics that chose it."""

    basis: tuple[np.ndarray, ...]
    singular_values: tuple[float, ...]
    tol_used: float

    @property
    def dimension(self) -> int:
        return len(self.basis)


def nullspace(A: np.ndarray, tol: float = 1e-9) -> NullspaceResult:
    """Right singular vectors whose singular values fall below ``tol * sigma_max``.

    Columns of V beyond the row count (exactly annihilated directions) are
    always included.  The absolute cut actually used is reported for audit.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {A.shape}")
    m, n = A.shape
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    sigma_max = float(s[0]) if s.size else 0.0
    cut = tol * sigma_max
    padded = np.concatenate([s, np.zeros(max(0, n - s.size))])
    keep = [i for i in range(n) if padded[i] < cut or padded[i] == 0.0]
    basis = tuple(vh[i].conj() for i in keep)
    return NullspaceResult(
        basis=basis,
        singular_values=tuple(float(x) for x in padded),
        tol_used=float(cut),
    )


def rng_for(seed: int, tag: str) -> np.random.Generator:
    """Counter-based generator deterministically keyed by (seed, tag)."""
    digest = hashlib.blake2s(
        f"{seed}:{tag}".encode(), digest_size=16
    ).digest()
    key = int.from_bytes(digest, "big")
    return np.random.Generator(np.random.Philox(key=key))


def random_tuple(
    n: int, d: int, scale: float = 1.0, seed: int = 0, tag: str = "tuple"
) -> MatrixTuple:
    """d independent Ginibre matrices: complex Gaussian entries, sd scale/sqrt(n)."""
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    if scale <= 0:
        raise ValueError(f"scale must be positive, got {scale}")
    rng = rng_for(seed, tag)
    sd = scale / np.sqrt(2.0 * n)
    mats = sd * (
        rng.standard_normal((d, n, n)) + 1j * rng.standard_normal((d, n, n))
    )
    return MatrixTuple(mats)


def random_row_contraction(
    n: int, d: int, margin: float, seed: int = 0, tag: str = "contraction"
) -> MatrixTuple:
    """Random tuple rescaled so the row norm is exactly ``1 - margin``."""
    if not 0 < margin < 1:
        raise ValueError(f"margin must lie in (0, 1), got {margin}")
    X = random_tuple(n, d, scale=1.0, seed=seed, tag=tag)
    norm = row_norm(X)
    if norm == 0.0:
        raise ValueError("degenerate zero sample; change the seed")
    return MatrixTuple(X.mats * ((1.0 - margin) / norm))
