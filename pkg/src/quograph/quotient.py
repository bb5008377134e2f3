"""Quotients of quantum graphs by a group action and a representation.

Given an action of G on a graph and a d-dimensional representation, this
module assembles one quotient vertex per vertex orbit.  The condition at a
quotient vertex is produced from the representative's (A, B) by tensoring
with the identity, multiplying by the block change-of-basis matrix built
from orbit witnesses, and projecting onto the surviving edge copies via a
0/1 selection matrix, then row-reducing.  Edge orbits contribute as many
parallel copies as the dimension of the stabilizer-fixed subspace; orbits
whose fixed subspace is trivial disappear.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .actions import GraphAction, OrbitData, insert_dummies, orbits, restrict_action
from .graphs import EdgeRecord, QuantumGraph, VertexRecord
from .groups import FiniteGroup, parent_of
from .linalg import svdvals
from .reps import AdaptedBasis, Representation, adapted_basis, matrix_in_bases

__all__ = [
    "LocalData",
    "QuotientRecipe",
    "EdgeProvenance",
    "VertexProvenance",
    "QuotientResult",
    "build_theta",
    "build_gothic",
    "build_vertex_condition",
    "reduce_rows",
    "vertex_local_data",
    "make_recipe",
    "build_quotient",
    "Classification",
    "classify",
    "predicted_degree",
    "split_vertices",
]


@dataclass(frozen=True)
class LocalData:
    """Everything the condition assembly needs to know about one vertex.

    n is the representative's degree, nu lists the edge-orbit index of each
    incident slot in edge_order, mu the distinct orbit indices in order of
    first appearance, d_mu the surviving copy count per mu entry, and
    witnesses the group elements carrying each orbit representative onto
    the incident edge in the same slot order.
    """

    n: int
    d: int
    nu: Tuple[int, ...]
    mu: Tuple[int, ...]
    d_mu: Tuple[int, ...]
    witnesses: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.nu) != self.n or len(self.witnesses) != self.n:
            raise ValueError("nu and witnesses must have one entry per incident slot")
        if len(set(self.mu)) != len(self.mu):
            raise ValueError("mu entries must be distinct")
        if set(self.nu) != set(self.mu):
            raise ValueError("mu must list exactly the orbits appearing in nu")
        if len(self.d_mu) != len(self.mu):
            raise ValueError("d_mu must align with mu")
        if any(not 0 <= x <= self.d for x in self.d_mu):
            raise ValueError("each d_mu entry must lie in [0, d]")


def build_theta(local: LocalData) -> np.ndarray:
    """Selection matrix of shape n*d by sum(d_mu).

    Starts from the 0/1 slot-vs-orbit incidence tensored with the d-dim
    identity, then drops the columns of dead copies.
    """
    n, d = local.n, local.d
    m = len(local.mu)
    theta1 = np.zeros((n, m))
    for t, orb in enumerate(local.nu):
        theta1[t, local.mu.index(orb)] = 1.0
    theta = np.kron(theta1, np.eye(d))
    keep = [i * d + j for i in range(m) for j in range(local.d_mu[i])]
    return theta[:, keep]


def build_gothic(
    local: LocalData,
    rep: Representation,
    global_basis: np.ndarray,
    edge_bases: Mapping[int, AdaptedBasis],
) -> np.ndarray:
    """Block-diagonal change-of-coordinates matrix of shape n*d by n*d.

    Block t transports dual coordinates: it is the transpose of the matrix
    of rep(witness_t^-1) from the global basis to the adapted basis of the
    orbit in slot t.
    """
    n, d = local.n, local.d
    G = rep.group
    out = np.zeros((n * d, n * d), dtype=complex)
    for t in range(n):
        g = local.witnesses[t]
        M = matrix_in_bases(rep, G.inv(g), global_basis, edge_bases[local.nu[t]])
        out[t * d : (t + 1) * d, t * d : (t + 1) * d] = M.T
    return out


def build_vertex_condition(
    local: LocalData,
    A_rep: np.ndarray,
    B_rep: np.ndarray,
    rep: Representation,
    global_basis: np.ndarray,
    edge_bases: Mapping[int, AdaptedBasis],
) -> Tuple[np.ndarray, np.ndarray]:
    """Pre-reduction condition pair, shapes (m*d) by sum(d_mu)."""
    A_rep = np.atleast_2d(np.asarray(A_rep, dtype=complex))
    B_rep = np.atleast_2d(np.asarray(B_rep, dtype=complex))
    if A_rep.shape != B_rep.shape or A_rep.shape[1] != local.n:
        raise ValueError("representative condition shape does not match local data")
    gothic = build_gothic(local, rep, global_basis, edge_bases)
    theta = build_theta(local)
    eye = np.eye(local.d)
    GT = gothic @ theta
    return np.kron(A_rep, eye) @ GT, np.kron(B_rep, eye) @ GT


def reduce_rows(
    A: np.ndarray, B: np.ndarray, tol: float = 1e-10
) -> Tuple[np.ndarray, np.ndarray]:
    """Row-reduce the concatenation (A|B) and drop the zero rows.

    Pivots smaller than tol times the largest singular value of the input
    are treated as zero.
    """
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    B = np.atleast_2d(np.asarray(B, dtype=complex))
    if A.shape != B.shape:
        raise ValueError(f"A is {A.shape} but B is {B.shape}")
    ncol = A.shape[1]
    M = np.hstack([A, B]).astype(complex)
    s = svdvals(M)
    smax = float(s[0]) if s.size else 0.0
    if smax == 0.0:
        return A[:0].copy(), B[:0].copy()
    thr = tol * smax
    rows = M.shape[0]
    r = 0
    for c in range(M.shape[1]):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(M[r:, c])))
        if abs(M[p, c]) <= thr:
            continue
        M[[r, p]] = M[[p, r]]
        for i in range(rows):
            if i != r and M[i, c] != 0:
                M[i] -= (M[i, c] / M[r, c]) * M[r]
        r += 1
    return M[:r, :ncol].copy(), M[:r, ncol:].copy()


@dataclass(frozen=True, eq=False)
class QuotientRecipe:
    """A validated action after dummy insertion, plus all basis choices."""

    action: GraphAction
    rep: Representation
    orbit_data: OrbitData
    global_basis: np.ndarray
    edge_bases: Tuple[AdaptedBasis, ...]  # aligned with orbit_data.edge_orbits
    reduce_tol: float = 1e-10


@dataclass(frozen=True)
class EdgeProvenance:
    orbit: int
    copy: int  # 1-based copy index within the orbit
    representative: str
    length: float


@dataclass(frozen=True, eq=False)
class VertexProvenance:
    orbit: int
    representative: str
    local: LocalData
    A_pre: np.ndarray
    B_pre: np.ndarray


@dataclass(frozen=True, eq=False)
class QuotientResult:
    graph: QuantumGraph
    recipe: QuotientRecipe
    edge_provenance: Dict[str, EdgeProvenance]
    vertex_provenance: Dict[str, VertexProvenance]
    generalized_vertices: Tuple[str, ...]
    dropped_vertex_orbits: Tuple[int, ...]


def _same_elements(a, b) -> bool:
    return tuple(a.elements()) == tuple(b.elements())


def make_recipe(
    action: GraphAction,
    rep: Representation,
    global_basis: Optional[np.ndarray] = None,
    basis_tol: float = 1e-9,
    reduce_tol: float = 1e-10,
) -> QuotientRecipe:
    """Restrict, insert dummies, pick orbits, and choose default bases.

    When rep lives on a proper subgroup of the acting group, the action is
    restricted to that subgroup first.  Default bases: the standard basis
    globally, and per edge orbit the averaging-projector basis of its
    stabilizer (the identity when the stabilizer is trivial).
    """
    H = rep.group
    if not _same_elements(H, action.group):
        if isinstance(H, FiniteGroup):
            raise ValueError("representation group does not match the acting group")
        if H.parent != parent_of(action.group):
            raise ValueError("representation subgroup belongs to a different group")
        action = restrict_action(action, H)
    _, action = insert_dummies(action)
    data = orbits(action)
    d = rep.dim
    gb = np.eye(d, dtype=complex) if global_basis is None else np.asarray(global_basis, dtype=complex)
    bases: List[AdaptedBasis] = []
    for orb in data.edge_orbits:
        if orb.stabilizer.order == 1:
            bases.append(
                AdaptedBasis(rep=rep, subgroup=orb.stabilizer, C=np.eye(d, dtype=complex), fixed_dim=d)
            )
        else:
            bases.append(adapted_basis(rep, orb.stabilizer, basis_tol))
    return QuotientRecipe(
        action=action,
        rep=rep,
        orbit_data=data,
        global_basis=gb,
        edge_bases=tuple(bases),
        reduce_tol=reduce_tol,
    )


def vertex_local_data(
    action: GraphAction,
    data: OrbitData,
    vid: str,
    d: int,
    dims_by_orbit: Sequence[int],
) -> LocalData:
    """Local data for one representative vertex of the (processed) action."""
    v = action.graph.vertex(vid)
    nu: List[int] = []
    wit: List[int] = []
    for eid in v.edge_order:
        i = data.edge_orbit_index(eid)
        nu.append(i)
        wit.append(data.edge_orbits[i].witnesses[eid])
    mu: List[int] = []
    for i in nu:
        if i not in mu:
            mu.append(i)
    return LocalData(
        n=v.degree,
        d=d,
        nu=tuple(nu),
        mu=tuple(mu),
        d_mu=tuple(dims_by_orbit[i] for i in mu),
        witnesses=tuple(wit),
    )


def build_quotient(recipe: QuotientRecipe) -> QuotientResult:
    """Assemble the quotient graph with provenance.

    Edge orbit i contributes copies named "<rep>~1" .. "<rep>~<d_i>", each
    of the representative's length, running between the representatives of
    its endpoint orbits.  Vertex orbits whose incident orbits are all dead
    are dropped.
    """
    action, rep, data = recipe.action, recipe.rep, recipe.orbit_data
    graph = action.graph
    dims = [b.fixed_dim for b in recipe.edge_bases]
    bases = {i: b for i, b in enumerate(recipe.edge_bases)}

    vorbit_rep: Dict[int, str] = {
        k: orb.representative for k, orb in enumerate(data.vertex_orbits)
    }

    edges: List[EdgeRecord] = []
    eprov: Dict[str, EdgeProvenance] = {}
    for i, orb in enumerate(data.edge_orbits):
        e = graph.edge(orb.representative)
        ks = data.vertex_orbit_index(e.source)
        kt = data.vertex_orbit_index(e.target)
        for j in range(1, dims[i] + 1):
            qid = f"{orb.representative}~{j}"
            edges.append(
                EdgeRecord(
                    id=qid,
                    source=vorbit_rep[ks],
                    target=vorbit_rep[kt],
                    length=e.length,
                )
            )
            eprov[qid] = EdgeProvenance(
                orbit=i, copy=j, representative=orb.representative, length=e.length
            )

    vertices: List[VertexRecord] = []
    vprov: Dict[str, VertexProvenance] = {}
    generalized: List[str] = []
    dropped: List[int] = []
    for k, orb in enumerate(data.vertex_orbits):
        vid = orb.representative
        local = vertex_local_data(action, data, vid, rep.dim, dims)
        degree = sum(local.d_mu)
        if degree == 0:
            dropped.append(k)
            continue
        v = graph.vertex(vid)
        A_pre, B_pre = build_vertex_condition(
            local, v.A, v.B, rep, recipe.global_basis, bases
        )
        A_red, B_red = reduce_rows(A_pre, B_pre, recipe.reduce_tol)
        order: List[str] = []
        for i in local.mu:
            rep_eid = data.edge_orbits[i].representative
            order.extend(f"{rep_eid}~{j}" for j in range(1, dims[i] + 1))
        vertices.append(VertexRecord(id=vid, edge_order=tuple(order), A=A_red, B=B_red))
        vprov[vid] = VertexProvenance(
            orbit=k, representative=vid, local=local, A_pre=A_pre, B_pre=B_pre
        )
        if A_red.shape[0] > degree:
            generalized.append(vid)

    out = QuantumGraph(vertices=tuple(vertices), edges=tuple(edges))
    return QuotientResult(
        graph=out,
        recipe=recipe,
        edge_provenance=eprov,
        vertex_provenance=vprov,
        generalized_vertices=tuple(generalized),
        dropped_vertex_orbits=tuple(dropped),
    )


@dataclass(frozen=True)
class Classification:
    verdict: str  # generalized | proper | proper-and-exact
    per_vertex: Dict[str, str]  # exact | proper | generalized


def classify(result: QuotientResult, tol: float = 1e-10) -> Classification:
    """Rank of each reduced condition against its quotient degree."""
    per: Dict[str, str] = {}
    for v in result.graph.vertices:
        r = v.A.shape[0]  # reduce_rows already dropped dependent rows
        if r > v.degree:
            per[v.id] = "generalized"
        elif r == v.degree:
            per[v.id] = "exact"
        else:
            per[v.id] = "proper"
    if any(x == "generalized" for x in per.values()):
        verdict = "generalized"
    elif all(x == "exact" for x in per.values()):
        verdict = "proper-and-exact"
    else:
        verdict = "proper"
    return Classification(verdict=verdict, per_vertex=per)


def predicted_degree(
    action: GraphAction,
    rep: Representation,
    vid: str,
    tol: float = 1e-6,
) -> int:
    """Degree of the quotient vertex, from characters alone.

    Inner product, over the stabilizer of the vertex, of the permutation
    character on incident edges with the representation character.  Must
    come out integral.
    """
    G = action.group
    v = action.graph.vertex(vid)
    stab = [g for g in G.elements() if action.vertex_image(g, vid) == vid]
    total = 0.0 + 0.0j
    for g in stab:
        fixed = sum(1 for eid in v.edge_order if action.edge_image(g, eid)[0] == eid)
        total += fixed * np.trace(rep.mat(g))
    total /= len(stab)
    nearest = round(total.real)
    if abs(total - nearest) > tol:
        raise ValueError(f"degree inner product {total} is not integral at {vid!r}")
    return int(nearest)


def _column_blocks(v: VertexRecord, tol: float) -> List[List[int]]:
    """Finest partition of incident-edge slots preserved by every row."""
    d = v.degree
    parent = list(range(d))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    M = np.hstack([v.A, v.B])
    s = svdvals(M)
    thr = tol * (float(s[0]) if s.size else 0.0)
    for row in M:
        touched = [j % d for j in range(2 * d) if abs(row[j]) > thr]
        for j in touched[1:]:
            union(touched[0], j)
    groups: Dict[int, List[int]] = {}
    for j in range(d):
        groups.setdefault(find(j), []).append(j)
    return sorted(groups.values(), key=lambda b: b[0])


def split_vertices(graph: QuantumGraph, tol: float = 1e-10) -> QuantumGraph:
    """Split vertices whose conditions decouple into column blocks.

    A vertex splits when no row of (A|B) mixes two blocks of incident
    edges; each block becomes its own vertex carrying the rows that touch
    it.  Spectrally neutral by construction.
    """
    new_vertices: List[VertexRecord] = []
    edge_end_rename: Dict[Tuple[str, str], str] = {}  # (vertex, edge) -> new vertex
    for v in graph.vertices:
        blocks = _column_blocks(v, tol)
        if len(blocks) <= 1:
            new_vertices.append(v)
            continue
        M = np.hstack([v.A, v.B])
        s = svdvals(M)
        thr = tol * (float(s[0]) if s.size else 0.0)
        d = v.degree
        for b_idx, block in enumerate(blocks):
            vid = f"{v.id}#{b_idx}"
            cols = block + [d + j for j in block]
            rows = [
                i
                for i in range(M.shape[0])
                if any(abs(M[i, c]) > thr for c in cols)
            ]
            sub = M[np.ix_(rows, cols)] if rows else np.zeros((0, 2 * len(block)), dtype=complex)
            half = len(block)
            order = tuple(v.edge_order[j] for j in block)
            new_vertices.append(
                VertexRecord(id=vid, edge_order=order, A=sub[:, :half], B=sub[:, half:])
            )
            for eid in order:
                edge_end_rename[(v.id, eid)] = vid
    new_edges: List[EdgeRecord] = []
    for e in graph.edges:
        src = edge_end_rename.get((e.source, e.id), e.source)
        tgt = edge_end_rename.get((e.target, e.id), e.target)
        new_edges.append(EdgeRecord(id=e.id, source=src, target=tgt, length=e.length))
    return QuantumGraph(vertices=tuple(new_vertices), edges=tuple(new_edges))
