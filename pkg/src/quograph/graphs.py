"""Metric graphs whose vertices carry matrix boundary conditions.

Each vertex stores a pair (A, B) of m x d matrices acting on the vector of
edge-end values and outgoing derivatives, ordered by the vertex's explicit
edge_order list.  m may exceed the degree d; such vertices are called
generalized and are fully supported everywhere except the exactness tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .linalg import rank

__all__ = [
    "EdgeRecord",
    "VertexRecord",
    "QuantumGraph",
    "standard_condition",
    "standard_vertex",
    "ExactnessReport",
    "is_exact",
    "is_self_adjoint",
    "subdivide_edge",
    "normalize_condition",
]


@dataclass(frozen=True)
class EdgeRecord:
    id: str
    source: str
    target: str
    length: float

    def __post_init__(self) -> None:
        if not self.length > 0:
            raise ValueError(f"edge {self.id!r} has non-positive length {self.length}")
        if self.source == self.target:
            raise ValueError(f"edge {self.id!r} is a loop at {self.source!r}")


@dataclass(frozen=True, eq=False)
class VertexRecord:
    """A vertex id, the ordering of its incident edges, and its condition."""

    id: str
    edge_order: Tuple[str, ...]
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "edge_order", tuple(self.edge_order))
        if len(set(self.edge_order)) != len(self.edge_order):
            raise ValueError(f"vertex {self.id!r} repeats an edge in edge_order")
        A = np.atleast_2d(np.asarray(self.A, dtype=complex))
        B = np.atleast_2d(np.asarray(self.B, dtype=complex))
        if A.shape != B.shape:
            raise ValueError(
                f"vertex {self.id!r}: A is {A.shape} but B is {B.shape}"
            )
        if A.shape[1] != len(self.edge_order):
            raise ValueError(
                f"vertex {self.id!r}: condition has {A.shape[1]} columns "
                f"for degree {len(self.edge_order)}"
            )
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def degree(self) -> int:
        return len(self.edge_order)


@dataclass(frozen=True, eq=False)
class QuantumGraph:
    vertices: Tuple[VertexRecord, ...]
    edges: Tuple[EdgeRecord, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        vmap = {v.id: v for v in self.vertices}
        emap = {e.id: e for e in self.edges}
        if len(vmap) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        if len(emap) != len(self.edges):
            raise ValueError("duplicate edge ids")
        incident: Dict[str, list] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            for end in (e.source, e.target):
                if end not in vmap:
                    raise ValueError(f"edge {e.id!r} references unknown vertex {end!r}")
                incident[end].append(e.id)
        for v in self.vertices:
            if sorted(v.edge_order) != sorted(incident[v.id]):
                raise ValueError(
                    f"vertex {v.id!r}: edge_order {list(v.edge_order)} does not match "
                    f"incident edges {sorted(incident[v.id])}"
                )
        object.__setattr__(self, "_vmap", vmap)
        object.__setattr__(self, "_emap", emap)

    def vertex(self, vid: str) -> VertexRecord:
        return self._vmap[vid]

    def edge(self, eid: str) -> EdgeRecord:
        return self._emap[eid]

    @property
    def total_length(self) -> float:
        return float(sum(e.length for e in self.edges))

    def vertex_ids(self) -> Tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    def edge_ids(self) -> Tuple[str, ...]:
        return tuple(e.id for e in self.edges)


def standard_condition(kind: str, degree: int) -> Tuple[np.ndarray, np.ndarray]:
    """Neumann or Dirichlet condition matrices for a vertex of given degree.

    Neumann: continuity rows (1, -1, 0, ...) stacked over a zero row in A,
    and the all-ones derivative-sum row as the last row of B.  Dirichlet:
    A = identity, B = 0 (the 1x1 case reads A=(1), B=(0)).
    """
    if degree < 1:
        raise ValueError(f"degree must be positive, got {degree}")
    if kind == "neumann":
        A = np.zeros((degree, degree), dtype=complex)
        B = np.zeros((degree, degree), dtype=complex)
        for i in range(degree - 1):
            A[i, i] = 1.0
            A[i, i + 1] = -1.0
        B[degree - 1, :] = 1.0
        return A, B
    if kind == "dirichlet":
        return np.eye(degree, dtype=complex), np.zeros((degree, degree), dtype=complex)
    raise ValueError(f"unknown condition kind {kind!r}")


def standard_vertex(vid: str, kind: str, edge_order: Sequence[str]) -> VertexRecord:
    A, B = standard_condition(kind, len(tuple(edge_order)))
    return VertexRecord(id=vid, edge_order=tuple(edge_order), A=A, B=B)


@dataclass(frozen=True)
class ExactnessReport:
    ok: bool
    per_vertex: Dict[str, bool]


def is_exact(graph: QuantumGraph, tol: float = 1e-9) -> ExactnessReport:
    """A vertex passes iff its condition is square with full-rank (A|B)."""
    per: Dict[str, bool] = {}
    for v in graph.vertices:
        square = v.A.shape[0] == v.degree
        per[v.id] = square and rank(np.hstack([v.A, v.B]), tol) == v.degree
    return ExactnessReport(ok=all(per.values()), per_vertex=per)


def is_self_adjoint(graph: QuantumGraph, tol: float = 1e-9) -> bool:
    """Exact everywhere and A B^dagger Hermitian at every vertex."""
    if not is_exact(graph, tol).ok:
        return False
    for v in graph.vertices:
        M = v.A @ v.B.conj().T
        if np.linalg.norm(M - M.conj().T) > tol * (1.0 + np.linalg.norm(M)):
            return False
    return True


def subdivide_edge(
    graph: QuantumGraph,
    eid: str,
    x: float,
    vertex_id: Optional[str] = None,
    edge_ids: Optional[Tuple[str, str]] = None,
) -> QuantumGraph:
    """Split an edge at distance x from its source with a Neumann-2 vertex."""
    e = graph.edge(eid)
    if not 0 < x < e.length:
        raise ValueError(f"cut position {x} outside (0, {e.length}) on edge {eid!r}")
    vid = vertex_id if vertex_id is not None else f"{eid}.cut"
    ids = edge_ids if edge_ids is not None else (f"{eid}.1", f"{eid}.2")
    taken_v = set(graph.vertex_ids())
    taken_e = set(graph.edge_ids()) - {eid}
    if vid in taken_v or ids[0] in taken_e or ids[1] in taken_e or ids[0] == ids[1]:
        raise ValueError(f"subdivision ids {vid!r}, {ids} collide with existing ids")

    first = EdgeRecord(id=ids[0], source=e.source, target=vid, length=x)
    second = EdgeRecord(id=ids[1], source=vid, target=e.target, length=e.length - x)
    edges = []
    for old in graph.edges:
        if old.id == eid:
            edges.extend([first, second])
        else:
            edges.append(old)

    def reroute(v: VertexRecord, replacement: str) -> VertexRecord:
        order = tuple(replacement if x_ == eid else x_ for x_ in v.edge_order)
        return VertexRecord(id=v.id, edge_order=order, A=v.A, B=v.B)

    vertices = []
    for v in graph.vertices:
        if v.id == e.source:
            vertices.append(reroute(v, ids[0]))
        elif v.id == e.target:
            vertices.append(reroute(v, ids[1]))
        else:
            vertices.append(v)
    vertices.append(standard_vertex(vid, "neumann", ids))
    return QuantumGraph(vertices=tuple(vertices), edges=tuple(edges))


def normalize_condition(
    A: np.ndarray, B: np.ndarray, tol: float = 1e-12
) -> Tuple[np.ndarray, np.ndarray]:
    """Rescale each row of (A|B) to unit leading coefficient."""
    A = np.atleast_2d(np.asarray(A, dtype=complex)).copy()
    B = np.atleast_2d(np.asarray(B, dtype=complex)).copy()
    joint = np.hstack([A, B])
    for i in range(joint.shape[0]):
        row = joint[i]
        big = np.abs(row) > tol * max(1.0, float(np.max(np.abs(row))))
        idx = np.nonzero(big)[0]
        if idx.size:
            lead = row[idx[0]]
            A[i] /= lead
            B[i] /= lead
    return A, B
