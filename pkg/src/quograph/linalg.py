"""Small dense linear algebra helpers shared across modules."""

from __future__ import annotations

from typing import Tuple

import numpy as np

__all__ = ["svdvals", "rank", "nullspace", "sigma_extremes"]


def svdvals(M: np.ndarray) -> np.ndarray:
    """Singular values of M in descending order (empty matrix -> empty)."""
    M = np.asarray(M)
    if M.size == 0:
        return np.zeros(0)
    return np.linalg.svd(M, compute_uv=False)


def rank(M: np.ndarray, tol: float = 1e-9) -> int:
    """Numerical rank with cutoff tol * sigma_max."""
    s = svdvals(M)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s >= tol * s[0]))


def nullspace(M: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis of the (right) null space, columns, cutoff tol * sigma_max."""
    M = np.asarray(M, dtype=complex)
    ncols = M.shape[1] if M.ndim == 2 else 0
    if M.size == 0:
        return np.eye(ncols, dtype=complex)
    _, s, vh = np.linalg.svd(M)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return np.eye(ncols, dtype=complex)
    nnz = int(np.sum(s >= tol * smax))
    return vh[nnz:].conj().T


def sigma_extremes(M: np.ndarray) -> Tuple[float, float]:
    """(sigma_min, sigma_max) of M; sigma_min over min(shape) values."""
    s = svdvals(M)
    if s.size == 0:
        return 0.0, 0.0
    return float(s[-1]), float(s[0])
