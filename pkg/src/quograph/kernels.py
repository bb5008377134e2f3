"""Secular-matrix assembly tables and singular-value scan kernels.

The matrix entries of a graph's secular system depend on k only through a
handful of entry kinds (constant, cos, sin, k, k cos, k sin), so a graph is
compiled once into flat coefficient tables and then evaluated at many k
values.  The scan loop is jitted with numba when available; set the
QUOGRAPH_NO_NUMBA environment variable to force the plain numpy path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .graphs import QuantumGraph

__all__ = [
    "HAS_NUMBA",
    "USE_NUMBA",
    "SecularTables",
    "build_tables",
    "secular_dense",
    "zero_mode_matrix",
    "scan_sigma",
    "scan_sigma_numpy",
    "sigma_at",
    "singular_values",
    "warmup",
]

HAS_NUMBA = True
try:
    from numba import njit
except ImportError:
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and not os.environ.get("QUOGRAPH_NO_NUMBA")

K_CONST = 0
K_COS = 1
K_SIN = 2
K_LIN = 3
K_KCOS = 4
K_KSIN = 5


@dataclass(frozen=True)
class SecularTables:
    """Flat entry tables: M[rows[i], cols[i]] += coefs[i] * w(kinds[i], k)."""

    nrows: int
    ncols: int
    rows: np.ndarray
    cols: np.ndarray
    coefs: np.ndarray
    kinds: np.ndarray
    elens: np.ndarray


def build_tables(graph: QuantumGraph) -> SecularTables:
    """Compile a graph into secular entry tables.

    Unknowns are (alpha_e, beta_e) per edge for the ansatz
    f_e(x) = alpha cos(kx) + beta sin(kx) with x from the source endpoint.
    Rows stack each vertex's A (values) and B (outgoing derivatives)
    contributions in edge_order.
    """
    edge_index = {e.id: i for i, e in enumerate(graph.edges)}
    rows, cols, coefs, kinds, elens = [], [], [], [], []

    def put(r: int, c: int, coef: complex, kind: int, l: float) -> None:
        if coef != 0:
            rows.append(r)
            cols.append(c)
            coefs.append(coef)
            kinds.append(kind)
            elens.append(l)

    r0 = 0
    for v in graph.vertices:
        m = v.A.shape[0]
        for t, eid in enumerate(v.edge_order):
            e = graph.edge(eid)
            j = edge_index[eid]
            if e.source == v.id:
                for i in range(m):
                    put(r0 + i, 2 * j, v.A[i, t], K_CONST, e.length)
                    put(r0 + i, 2 * j + 1, v.B[i, t], K_LIN, e.length)
            else:
                for i in range(m):
                    put(r0 + i, 2 * j, v.A[i, t], K_COS, e.length)
                    put(r0 + i, 2 * j + 1, v.A[i, t], K_SIN, e.length)
                    put(r0 + i, 2 * j, v.B[i, t], K_KSIN, e.length)
                    put(r0 + i, 2 * j + 1, -v.B[i, t], K_KCOS, e.length)
        r0 += m
    return SecularTables(
        nrows=r0,
        ncols=2 * len(graph.edges),
        rows=np.asarray(rows, dtype=np.int64),
        cols=np.asarray(cols, dtype=np.int64),
        coefs=np.asarray(coefs, dtype=np.complex128),
        kinds=np.asarray(kinds, dtype=np.int8),
        elens=np.asarray(elens, dtype=np.float64),
    )


def _weights(tables: SecularTables, k: float) -> np.ndarray:
    kinds, elens = tables.kinds, tables.elens
    w = np.ones(kinds.size, dtype=np.complex128)
    m = kinds == K_COS
    w[m] = np.cos(k * elens[m])
    m = kinds == K_SIN
    w[m] = np.sin(k * elens[m])
    m = kinds == K_LIN
    w[m] = k
    m = kinds == K_KCOS
    w[m] = k * np.cos(k * elens[m])
    m = kinds == K_KSIN
    w[m] = k * np.sin(k * elens[m])
    return w


def secular_dense(tables: SecularTables, k: float) -> np.ndarray:
    """The dense secular matrix at a single k (always the numpy path)."""
    M = np.zeros((tables.nrows, tables.ncols), dtype=np.complex128)
    np.add.at(M, (tables.rows, tables.cols), tables.coefs * _weights(tables, k))
    return M


def _normalize_rows(M: np.ndarray) -> np.ndarray:
    """Scale each row to unit norm (in place).

    Row scaling leaves the null space untouched but keeps the singular
    values O(1) at every k; without it the derivative rows grow like k and
    the dips of sigma_min near eigenvalues become too narrow to detect.
    """
    norms = np.sqrt(np.sum(np.abs(M) ** 2, axis=1))
    nz = norms > 0.0
    M[nz] /= norms[nz, None]
    return M


def zero_mode_matrix(graph: QuantumGraph) -> np.ndarray:
    """Constraint matrix for the linear ansatz f_e(x) = alpha + beta x."""
    edge_index = {e.id: i for i, e in enumerate(graph.edges)}
    nrows = sum(v.A.shape[0] for v in graph.vertices)
    M = np.zeros((nrows, 2 * len(graph.edges)), dtype=np.complex128)
    r0 = 0
    for v in graph.vertices:
        m = v.A.shape[0]
        for t, eid in enumerate(v.edge_order):
            e = graph.edge(eid)
            j = edge_index[eid]
            if e.source == v.id:
                M[r0 : r0 + m, 2 * j] += v.A[:, t]
                M[r0 : r0 + m, 2 * j + 1] += v.B[:, t]
            else:
                M[r0 : r0 + m, 2 * j] += v.A[:, t]
                M[r0 : r0 + m, 2 * j + 1] += v.A[:, t] * e.length - v.B[:, t]
        r0 += m
    return M


def scan_sigma_numpy(tables: SecularTables, ks: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Smallest and largest singular value of the secular matrix per k."""
    ks = np.asarray(ks, dtype=np.float64)
    smin = np.empty(ks.size)
    smax = np.empty(ks.size)
    if min(tables.nrows, tables.ncols) == 0:
        smin[:] = 0.0
        smax[:] = 0.0
        return smin, smax
    for i, k in enumerate(ks):
        M = _normalize_rows(secular_dense(tables, float(k)))
        s = np.linalg.svd(M, compute_uv=False)
        smin[i] = s[-1]
        smax[i] = s[0]
    return smin, smax


if USE_NUMBA:

    @njit(cache=True)
    def _fill_nb(M, rows, cols, coefs, kinds, elens, k):  # pragma: no cover
        M[:, :] = 0.0
        for i in range(rows.size):
            kind = kinds[i]
            if kind == 0:
                w = 1.0
            elif kind == 1:
                w = np.cos(k * elens[i])
            elif kind == 2:
                w = np.sin(k * elens[i])
            elif kind == 3:
                w = k
            elif kind == 4:
                w = k * np.cos(k * elens[i])
            else:
                w = k * np.sin(k * elens[i])
            M[rows[i], cols[i]] += coefs[i] * w

    @njit(cache=True)
    def _normalize_rows_nb(M):  # pragma: no cover
        for r in range(M.shape[0]):
            acc = 0.0
            for c in range(M.shape[1]):
                acc += abs(M[r, c]) ** 2
            nrm = np.sqrt(acc)
            if nrm > 0.0:
                for c in range(M.shape[1]):
                    M[r, c] /= nrm

    @njit(cache=True)
    def _scan_nb(rows, cols, coefs, kinds, elens, nrows, ncols, ks):  # pragma: no cover
        smin = np.empty(ks.size)
        smax = np.empty(ks.size)
        M = np.zeros((nrows, ncols), dtype=np.complex128)
        for i in range(ks.size):
            _fill_nb(M, rows, cols, coefs, kinds, elens, ks[i])
            _normalize_rows_nb(M)
            u, s, vh = np.linalg.svd(M)
            smin[i] = s[s.size - 1]
            smax[i] = s[0]
        return smin, smax


def scan_sigma(tables: SecularTables, ks: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """scan_sigma_numpy semantics, jitted when numba is active."""
    ks = np.asarray(ks, dtype=np.float64)
    if not USE_NUMBA or min(tables.nrows, tables.ncols) == 0 or ks.size == 0:
        return scan_sigma_numpy(tables, ks)
    return _scan_nb(
        tables.rows, tables.cols, tables.coefs, tables.kinds, tables.elens,
        tables.nrows, tables.ncols, ks,
    )


def sigma_at(tables: SecularTables, k: float) -> Tuple[float, float]:
    smin, smax = scan_sigma(tables, np.array([k], dtype=np.float64))
    return float(smin[0]), float(smax[0])


def singular_values(tables: SecularTables, k: float) -> np.ndarray:
    """All singular values of the row-normalized matrix at one k, descending."""
    if min(tables.nrows, tables.ncols) == 0:
        return np.zeros(0)
    return np.linalg.svd(_normalize_rows(secular_dense(tables, k)), compute_uv=False)


def warmup() -> None:
    """Compile the jitted kernels on a toy system so timings stay clean."""
    if not USE_NUMBA:
        return
    t = SecularTables(
        nrows=2,
        ncols=2,
        rows=np.array([0, 1], dtype=np.int64),
        cols=np.array([0, 1], dtype=np.int64),
        coefs=np.array([1.0 + 0j, 1.0 + 0j], dtype=np.complex128),
        kinds=np.array([K_COS, K_LIN], dtype=np.int8),
        elens=np.array([1.0, 1.0], dtype=np.float64),
    )
    scan_sigma(t, np.array([0.5, 1.0]))
