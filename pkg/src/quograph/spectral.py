"""Eigenvalue computation for quantum graphs via the secular matrix.

Eigenvalues k (with lambda = k^2) are the points where the secular matrix
drops rank.  The solver scans the smallest singular value over a k grid,
refines each strict local minimum by golden section, and accepts minima
that fall below a relative threshold; multiplicities come from counting
small singular values.  The zero mode is tested separately with a linear
ansatz since the oscillatory one degenerates at k = 0.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .actions import GraphAction
from .graphs import QuantumGraph
from .kernels import (
    _normalize_rows,
    build_tables,
    scan_sigma,
    secular_dense,
    sigma_at,
    singular_values,
    zero_mode_matrix,
)
from .reps import Character, Representation, char_inner_product, character

__all__ = [
    "SolverOptions",
    "Spectrum",
    "SpectrumReport",
    "secular_matrix",
    "find_spectrum",
    "multiplicity_at",
    "compare_spectra",
    "combine_spectra",
    "eigenspace_character",
    "rep_multiplicity",
]


@dataclass(frozen=True)
class SolverOptions:
    scan_step: Optional[float] = None  # default pi / (4 * total_length)
    accept_tol: float = 1e-8
    refine_tol: float = 1e-12
    k_floor: float = 1e-6
    rescan_on_warning: bool = False


@dataclass(frozen=True)
class Spectrum:
    """Sorted positive eigenvalues with multiplicities, plus the zero mode."""

    entries: Tuple[Tuple[float, int], ...]
    has_zero_mode: bool
    zero_mode_multiplicity: int
    k_max: float
    scan_step: float
    options: SolverOptions
    near_misses: Tuple[Tuple[float, float], ...] = ()
    weyl_max_deviation: float = 0.0

    def expanded(self) -> List[float]:
        """Each eigenvalue repeated by its multiplicity."""
        out: List[float] = []
        for k, m in self.entries:
            out.extend([k] * m)
        return out

    def count(self) -> int:
        return sum(m for _, m in self.entries)


@dataclass(frozen=True)
class SpectrumReport:
    matched: Tuple[Tuple[float, float], ...]
    unmatched_a: Tuple[float, ...]
    unmatched_b: Tuple[float, ...]
    max_deviation: float
    tol: float
    zero_mode_mismatch: bool
    passed: bool


def secular_matrix(graph: QuantumGraph, k: float) -> np.ndarray:
    """Dense secular matrix at one positive k."""
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    return secular_dense(build_tables(graph), float(k))


_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def _golden_min(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    best_k, best_f = (c, fc) if fc <= fd else (d, fd)
    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
            if fc < best_f:
                best_k, best_f = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
            if fd < best_f:
                best_k, best_f = d, fd
    mid = 0.5 * (a + b)
    return mid if f(mid) <= best_f else best_k


def _zero_mode_multiplicity(graph: QuantumGraph, accept_tol: float) -> int:
    Z = _normalize_rows(zero_mode_matrix(graph))
    if min(Z.shape) == 0:
        return Z.shape[1]
    s = np.linalg.svd(Z, compute_uv=False)
    if s[0] == 0.0:
        return Z.shape[1]
    return int(Z.shape[1] - np.sum(s >= accept_tol * s[0]))


def find_spectrum(
    graph: QuantumGraph, k_max: float, opts: Optional[SolverOptions] = None
) -> Spectrum:
    """Scan, refine, and threshold the secular singular values up to k_max."""
    if k_max <= 0:
        raise ValueError(f"k_max must be positive, got {k_max}")
    if not graph.edges:
        raise ValueError("graph has no edges")
    opts = opts or SolverOptions()
    tables = build_tables(graph)
    if tables.nrows < tables.ncols:
        raise ValueError(
            "secular system has fewer rows than unknowns; "
            "the rank-drop criterion cannot isolate eigenvalues"
        )
    L = graph.total_length
    step = opts.scan_step if opts.scan_step is not None else np.pi / (4.0 * L)

    def sweep(step: float) -> Tuple[List[Tuple[float, int]], List[Tuple[float, float]]]:
        npts = int(np.ceil((k_max + 2.5 * step - opts.k_floor) / step)) + 1
        ks = opts.k_floor + step * np.arange(npts)
        smin, _ = scan_sigma(tables, ks)
        roots: List[Tuple[float, int]] = []
        near: List[Tuple[float, float]] = []
        for i in range(1, npts - 1):
            if not (smin[i] < smin[i - 1] and smin[i] < smin[i + 1]):
                continue
            kr = _golden_min(
                lambda k: sigma_at(tables, k)[0],
                float(ks[i - 1]),
                float(ks[i + 1]),
                opts.refine_tol,
            )
            s = singular_values(tables, kr)
            thr = opts.accept_tol * s[0]
            if s[-1] < thr:
                mult = int(tables.ncols - np.sum(s >= thr))
                roots.append((kr, mult))
            else:
                near.append((kr, float(s[-1] / s[0])))
        return roots, near

    def collect(roots: List[Tuple[float, int]]) -> List[Tuple[float, int]]:
        merge_tol = max(100.0 * opts.refine_tol, 1e-10)
        roots = sorted(roots)
        merged: List[Tuple[float, int]] = []
        for k, m in roots:
            if merged and k - merged[-1][0] <= merge_tol:
                merged[-1] = (merged[-1][0], max(merged[-1][1], m))
            else:
                merged.append((k, m))
        eps = 1e-9
        return [(min(k, k_max), m) for k, m in merged if k <= k_max + eps]

    def weyl_dev(entries: Sequence[Tuple[float, int]]) -> float:
        worst = 0.0
        cum = 0
        for k, m in entries:
            cum += m
            worst = max(worst, abs(cum - L * k / np.pi))
        worst = max(worst, abs(cum - L * k_max / np.pi))
        return worst

    roots, near = sweep(step)
    entries = collect(roots)
    dev = weyl_dev(entries)
    bound = len(graph.vertices) + 2
    if dev > bound and opts.rescan_on_warning:
        step = step / 2.0
        roots, near = sweep(step)
        entries = collect(roots)
        dev = weyl_dev(entries)
    if dev > bound:
        warnings.warn(
            f"eigenvalue count deviates from the length-based estimate by {dev:.1f} "
            f"(bound {bound}); consider a finer scan_step",
            stacklevel=2,
        )

    zm = _zero_mode_multiplicity(graph, opts.accept_tol)
    return Spectrum(
        entries=tuple(entries),
        has_zero_mode=zm > 0,
        zero_mode_multiplicity=zm,
        k_max=float(k_max),
        scan_step=float(step),
        options=opts,
        near_misses=tuple(near),
        weyl_max_deviation=float(dev),
    )


def multiplicity_at(graph: QuantumGraph, k: float, tol: float = 1e-8) -> int:
    """Nullity of the secular matrix at k; zero when k is not an eigenvalue."""
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    tables = build_tables(graph)
    s = singular_values(tables, float(k))
    if s.size == 0 or s[0] == 0.0:
        return tables.ncols
    return int(tables.ncols - np.sum(s >= tol * s[0]))


def compare_spectra(a: Spectrum, b: Spectrum, tol: float) -> SpectrumReport:
    """Greedy monotone matching of the expanded eigenvalue multisets.

    Zero modes are compared separately and flagged, never failing the
    verdict: folding constructions legitimately move constants around.
    """
    xa, xb = a.expanded(), b.expanded()
    i = j = 0
    matched: List[Tuple[float, float]] = []
    ua: List[float] = []
    ub: List[float] = []
    while i < len(xa) and j < len(xb):
        if abs(xa[i] - xb[j]) <= tol:
            matched.append((xa[i], xb[j]))
            i += 1
            j += 1
        elif xa[i] < xb[j]:
            ua.append(xa[i])
            i += 1
        else:
            ub.append(xb[j])
            j += 1
    ua.extend(xa[i:])
    ub.extend(xb[j:])
    maxdev = max((abs(x - y) for x, y in matched), default=0.0)
    return SpectrumReport(
        matched=tuple(matched),
        unmatched_a=tuple(ua),
        unmatched_b=tuple(ub),
        max_deviation=maxdev,
        tol=tol,
        zero_mode_mismatch=a.zero_mode_multiplicity != b.zero_mode_multiplicity,
        passed=not ua and not ub,
    )


def combine_spectra(
    items: Sequence[Tuple[Spectrum, int]], merge_tol: float = 1e-9
) -> Spectrum:
    """Weighted multiset union: each spectrum's multiplicities times weight."""
    if not items:
        raise ValueError("nothing to combine")
    pairs: List[Tuple[float, int]] = []
    for spec, w in items:
        pairs.extend((k, m * w) for k, m in spec.entries)
    pairs.sort()
    merged: List[Tuple[float, int]] = []
    for k, m in pairs:
        if merged and k - merged[-1][0] <= merge_tol:
            merged[-1] = (merged[-1][0], merged[-1][1] + m)
        else:
            merged.append((k, m))
    zm = sum(s.zero_mode_multiplicity * w for s, w in items)
    return Spectrum(
        entries=tuple(merged),
        has_zero_mode=zm > 0,
        zero_mode_multiplicity=zm,
        k_max=min(s.k_max for s, _ in items),
        scan_step=0.0,
        options=items[0][0].options,
    )


def _transport(action: GraphAction, g: int, k: float) -> np.ndarray:
    graph = action.graph
    idx = {e.id: i for i, e in enumerate(graph.edges)}
    n = 2 * len(graph.edges)
    T = np.zeros((n, n), dtype=complex)
    for e in graph.edges:
        j = idx[e.id]
        img, flip = action.edge_image(g, e.id)
        jj = idx[img]
        if flip:
            c, s = np.cos(k * e.length), np.sin(k * e.length)
            block = np.array([[c, s], [s, -c]], dtype=complex)
        else:
            block = np.eye(2, dtype=complex)
        T[2 * jj : 2 * jj + 2, 2 * j : 2 * j + 2] = block
    return T


def eigenspace_character(
    graph: QuantumGraph,
    action: GraphAction,
    k: float,
    tol: float = 1e-6,
    sv_tol: float = 1e-8,
) -> Character:
    """Traces of the group acting on the eigenspace at k.

    The eigenspace is realized as the nullspace of the secular matrix; the
    action moves edge coefficients between edges (with a reversal block on
    flipped edges).  Raises when k is not an eigenvalue or the nullspace is
    not invariant within tol.
    """
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    tables = build_tables(graph)
    M = _normalize_rows(secular_dense(tables, float(k)))
    _, s, vh = np.linalg.svd(M)
    if s.size == 0 or s[0] == 0.0:
        raise ValueError("degenerate secular matrix")
    rank = int(np.sum(s >= sv_tol * s[0]))
    N = vh[rank:].conj().T
    if N.shape[1] == 0:
        raise ValueError(f"k = {k} is not an eigenvalue at tolerance {sv_tol}")
    values: List[complex] = []
    for g in action.group.elements():
        T = _transport(action, g, float(k))
        TN = T @ N
        resid = np.linalg.norm(TN - N @ (N.conj().T @ TN))
        if resid > tol:
            raise ValueError(
                f"eigenspace at k = {k} is not invariant under element {g} "
                f"(residual {resid:.2e})"
            )
        values.append(complex(np.trace(N.conj().T @ TN)))
    return Character(group=action.group, values=tuple(values))


def rep_multiplicity(
    graph: QuantumGraph,
    action: GraphAction,
    rep: Representation,
    k: float,
    tol: float = 1e-6,
) -> int:
    """How often the representation appears in the eigenspace at k."""
    chi = eigenspace_character(graph, action, k, tol)
    ip = char_inner_product(character(rep), chi)
    nearest = round(ip.real)
    if abs(ip - nearest) > tol:
        raise ValueError(f"non-integral multiplicity {ip} at k = {k}")
    return int(nearest)
