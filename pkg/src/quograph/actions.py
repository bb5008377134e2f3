"""Group actions on quantum graphs.

An action stores, for every group element, a vertex permutation, an edge
permutation, and per-edge flip flags (flip means the element carries the
source of an edge to the target of the image edge).  Everything is stored
per element and validated exhaustively; the groups involved are small.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .graphs import QuantumGraph, VertexRecord, subdivide_edge
from .groups import GroupLike, SubgroupRef, parent_of
from .linalg import nullspace, rank

__all__ = [
    "ElementMap",
    "GraphAction",
    "ActionReport",
    "Orbit",
    "OrbitData",
    "validate_action",
    "orbits",
    "choose_representatives",
    "insert_dummies",
    "restrict_action",
]


@dataclass(frozen=True, eq=False)
class ElementMap:
    vertex_map: Dict[str, str]
    edge_map: Dict[str, str]
    flips: Dict[str, bool]


@dataclass(frozen=True, eq=False)
class GraphAction:
    group: GroupLike
    graph: QuantumGraph
    elements: Dict[int, ElementMap]

    def __post_init__(self) -> None:
        want = set(self.group.elements())
        if set(self.elements.keys()) != want:
            raise ValueError("action must define a map for every group element")
        vids = set(self.graph.vertex_ids())
        eids = set(self.graph.edge_ids())
        for g, m in self.elements.items():
            if set(m.vertex_map.keys()) != vids:
                raise ValueError(f"element {g}: vertex map keys do not cover the graph")
            if set(m.edge_map.keys()) != eids or set(m.flips.keys()) != eids:
                raise ValueError(f"element {g}: edge map keys do not cover the graph")

    def vertex_image(self, g: int, vid: str) -> str:
        return self.elements[g].vertex_map[vid]

    def edge_image(self, g: int, eid: str) -> Tuple[str, bool]:
        m = self.elements[g]
        return m.edge_map[eid], m.flips[eid]


@dataclass(frozen=True)
class ActionReport:
    ok: bool
    failures: Tuple[str, ...]


def _condition_kernel(v: VertexRecord, tol: float) -> np.ndarray:
    return nullspace(np.hstack([v.A, v.B]), tol)


def validate_action(action: GraphAction, tol: float = 1e-9) -> ActionReport:
    """Check identity, composition, incidence, lengths, and conditions."""
    G, graph = action.group, action.graph
    bad: List[str] = []
    ident = G.identity

    m = action.elements[ident]
    for vid in graph.vertex_ids():
        if m.vertex_map[vid] != vid:
            bad.append(f"identity moves vertex {vid!r}")
    for eid in graph.edge_ids():
        if m.edge_map[eid] != eid or m.flips[eid]:
            bad.append(f"identity moves or flips edge {eid!r}")

    for g in G.elements():
        mg = action.elements[g]
        if sorted(mg.vertex_map.values()) != sorted(graph.vertex_ids()):
            bad.append(f"element {G.name(g)}: vertex map is not a permutation")
        if sorted(mg.edge_map.values()) != sorted(graph.edge_ids()):
            bad.append(f"element {G.name(g)}: edge map is not a permutation")

    for g in G.elements():
        for h in G.elements():
            hg = G.mul(h, g)
            for vid in graph.vertex_ids():
                if action.vertex_image(hg, vid) != action.vertex_image(
                    h, action.vertex_image(g, vid)
                ):
                    bad.append(f"composition fails at vertex {vid!r} for ({G.name(h)}, {G.name(g)})")
                    break
            for eid in graph.edge_ids():
                e1, f1 = action.edge_image(g, eid)
                e2, f2 = action.edge_image(h, e1)
                e3, f3 = action.edge_image(hg, eid)
                if e3 != e2 or f3 != (f1 != f2):
                    bad.append(f"composition fails at edge {eid!r} for ({G.name(h)}, {G.name(g)})")
                    break

    for g in G.elements():
        for e in graph.edges:
            img, flip = action.edge_image(g, e.id)
            ie = graph.edge(img)
            s, t = action.vertex_image(g, e.source), action.vertex_image(g, e.target)
            want = (ie.target, ie.source) if flip else (ie.source, ie.target)
            if (s, t) != want:
                bad.append(f"element {G.name(g)}: endpoints of edge {e.id!r} not respected")
            if abs(ie.length - e.length) > tol * (1.0 + e.length):
                bad.append(f"element {G.name(g)}: edge {e.id!r} changes length")

    for g in G.elements():
        for v in graph.vertices:
            w = graph.vertex(action.vertex_image(g, v.id))
            if w.degree != v.degree:
                bad.append(f"element {G.name(g)}: degree changes at vertex {v.id!r}")
                continue
            d = v.degree
            P = np.zeros((d, d))
            ok = True
            for a, eid in enumerate(v.edge_order):
                img, _ = action.edge_image(g, eid)
                if img not in w.edge_order:
                    ok = False
                    break
                P[w.edge_order.index(img), a] = 1.0
            if not ok:
                bad.append(f"element {G.name(g)}: incidence mismatch at vertex {v.id!r}")
                continue
            PP = np.kron(np.eye(2), P)
            K1 = _condition_kernel(w, tol)
            K2 = PP @ _condition_kernel(v, tol)
            same = K1.shape[1] == K2.shape[1] and (
                K1.shape[1] == 0 or rank(np.hstack([K1, K2]), tol) == K1.shape[1]
            )
            if not same:
                bad.append(
                    f"element {G.name(g)}: condition not preserved at vertex {v.id!r}"
                )

    return ActionReport(ok=not bad, failures=tuple(bad))


@dataclass(frozen=True, eq=False)
class Orbit:
    representative: str
    members: Tuple[str, ...]
    witnesses: Dict[str, int]  # member -> g with g(representative) = member
    stabilizer: SubgroupRef


@dataclass(frozen=True, eq=False)
class OrbitData:
    edge_orbits: Tuple[Orbit, ...]
    vertex_orbits: Tuple[Orbit, ...]

    def edge_orbit_index(self, eid: str) -> int:
        for i, o in enumerate(self.edge_orbits):
            if eid in o.members:
                return i
        raise KeyError(eid)

    def vertex_orbit_index(self, vid: str) -> int:
        for i, o in enumerate(self.vertex_orbits):
            if vid in o.members:
                return i
        raise KeyError(vid)


def _build_orbit(action: GraphAction, rep: str, kind: str) -> Orbit:
    G = action.group
    ident = G.identity
    members: Dict[str, int] = {}
    stab: List[int] = []
    for g in G.elements():
        if kind == "edge":
            img = action.edge_image(g, rep)[0]
        else:
            img = action.vertex_image(g, rep)
        if img == rep:
            stab.append(g)
        if img not in members:
            members[img] = g
    members[rep] = ident
    order = tuple(sorted(members.keys()))
    return Orbit(
        representative=rep,
        members=order,
        witnesses=dict(members),
        stabilizer=SubgroupRef(parent_of(G), tuple(stab)),
    )


def orbits(action: GraphAction) -> OrbitData:
    """Orbit decomposition with smallest-id representatives and witnesses."""
    eorbs: List[Orbit] = []
    seen: set = set()
    for e in action.graph.edges:
        if e.id in seen:
            continue
        reach = {action.edge_image(g, e.id)[0] for g in action.group.elements()}
        rep = min(reach)
        orb = _build_orbit(action, rep, "edge")
        seen |= set(orb.members)
        eorbs.append(orb)
    vorbs: List[Orbit] = []
    seen = set()
    for v in action.graph.vertices:
        if v.id in seen:
            continue
        reach = {action.vertex_image(g, v.id) for g in action.group.elements()}
        rep = min(reach)
        orb = _build_orbit(action, rep, "vertex")
        seen |= set(orb.members)
        vorbs.append(orb)
    return OrbitData(edge_orbits=tuple(eorbs), vertex_orbits=tuple(vorbs))


def choose_representatives(
    action: GraphAction,
    data: OrbitData,
    edge_reps: Optional[Sequence[str]] = None,
    vertex_reps: Optional[Sequence[str]] = None,
) -> OrbitData:
    """Re-root orbits at the requested members and recompute witnesses."""

    def rebuild(orbs: Tuple[Orbit, ...], wanted: Sequence[str], kind: str) -> Tuple[Orbit, ...]:
        out = list(orbs)
        touched: set = set()
        for rep in wanted:
            hits = [i for i, o in enumerate(orbs) if rep in o.members]
            if not hits:
                raise ValueError(f"{rep!r} is not a member of any {kind} orbit")
            if hits[0] in touched:
                raise ValueError(f"two overrides target the same {kind} orbit")
            touched.add(hits[0])
            out[hits[0]] = _build_orbit(action, rep, kind)
        return tuple(out)

    return OrbitData(
        edge_orbits=rebuild(data.edge_orbits, edge_reps or (), "edge"),
        vertex_orbits=rebuild(data.vertex_orbits, vertex_reps or (), "vertex"),
    )


def _offending_edges(action: GraphAction) -> set:
    """Edges whose subdivision removes flips, neighbor-mapping, parallels."""
    graph, G = action.graph, action.group
    marked: set = set()
    for g in G.elements():
        for e in graph.edges:
            img, flip = action.edge_image(g, e.id)
            if img == e.id and flip:
                marked.add(e.id)
    for g in G.elements():
        for e in graph.edges:
            for vid, other in ((e.source, e.target), (e.target, e.source)):
                if action.vertex_image(g, vid) == other:
                    marked.add(e.id)
    by_pair: Dict[Tuple[str, str], List[str]] = {}
    for e in graph.edges:
        key = tuple(sorted((e.source, e.target)))
        by_pair.setdefault(key, []).append(e.id)
    for ids in by_pair.values():
        if len(ids) > 1:
            marked.update(ids)
    closed: set = set()
    for eid in marked:
        for g in G.elements():
            closed.add(action.edge_image(g, eid)[0])
    return closed


def insert_dummies(action: GraphAction) -> Tuple[QuantumGraph, GraphAction]:
    """Equivariantly subdivide until the action is quotient-ready.

    Afterwards no element maps a vertex to a neighbor, no edge maps to
    itself reversed, and there are no parallel edges.  Inserted midpoints
    get Neumann degree-2 conditions, so spectra are unchanged.
    """
    current = action
    for _ in range(3):
        marked = _offending_edges(current)
        if not marked:
            return current.graph, current
        graph = current.graph
        cut = {}  # old edge id -> (mid vertex id, first half id, second half id)
        for e in graph.edges:
            if e.id in marked:
                names = (f"{e.id}.cut", f"{e.id}.1", f"{e.id}.2")
                graph = subdivide_edge(
                    graph, e.id, graph.edge(e.id).length / 2.0,
                    vertex_id=names[0], edge_ids=names[1:],
                )
                cut[e.id] = names
        elements: Dict[int, ElementMap] = {}
        for g in current.group.elements():
            old = current.elements[g]
            vm = dict(old.vertex_map)
            em: Dict[str, str] = {}
            fl: Dict[str, bool] = {}
            for eid, img in old.edge_map.items():
                flip = old.flips[eid]
                if eid not in cut:
                    em[eid] = img
                    fl[eid] = flip
                    continue
                mid, first, second = cut[eid]
                imid, ifirst, isecond = cut[img]
                vm[mid] = imid
                if flip:
                    em[first], fl[first] = isecond, True
                    em[second], fl[second] = ifirst, True
                else:
                    em[first], fl[first] = ifirst, False
                    em[second], fl[second] = isecond, False
            elements[g] = ElementMap(vertex_map=vm, edge_map=em, flips=fl)
        current = GraphAction(group=current.group, graph=graph, elements=elements)
    raise RuntimeError("dummy insertion did not converge in three passes")


def restrict_action(action: GraphAction, H: SubgroupRef) -> GraphAction:
    """The same maps, indexed by the subgroup only."""
    if H.parent != parent_of(action.group):
        raise ValueError("H is not a subgroup of the acting group")
    have = set(action.group.elements())
    if not set(H.elements()) <= have:
        raise ValueError("H contains elements outside the acting group")
    return GraphAction(
        group=H,
        graph=action.graph,
        elements={h: action.elements[h] for h in H.elements()},
    )
