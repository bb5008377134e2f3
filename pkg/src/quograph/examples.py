"""Built-in example graphs, group actions, and representations.

The main example is a graph with the dihedral symmetry of the square: a
ring of 8 edges of length a alternating between corner and side-midpoint
vertices, plus a swapped pair of pendant edges at every corner (length c)
and every midpoint (length b).  Vertices are placed at angles that are
multiples of 15 degrees, so the dihedral action is angle arithmetic.

Also here: the reflected two-edge interval, an over-determined Y-graph,
and the standard family of dihedral representations used by the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from .actions import ElementMap, GraphAction
from .graphs import EdgeRecord, QuantumGraph, VertexRecord, standard_vertex
from .groups import FiniteGroup, SubgroupRef, cyclic_group, dihedral_group, trivial_group
from .reps import (
    Representation,
    character,
    char_inner_product,
    one_dim_rep,
    trivial_rep,
    validate_rep,
)

__all__ = [
    "ExampleBundle",
    "d4_group",
    "z2_group",
    "square_d4",
    "interval_z2",
    "ygraph",
    "d4_irreps",
    "theta_rep",
    "unitary_2d_rep",
    "r1_rep",
    "r2_rep",
    "r3_rep",
    "square_d4_bundle",
    "interval_z2_bundle",
    "ygraph_bundle",
    "bundle",
]


@dataclass(frozen=True, eq=False)
class ExampleBundle:
    name: str
    graph: QuantumGraph
    action: GraphAction
    reps: Dict[str, Representation]
    params: Dict[str, float]


def d4_group() -> FiniteGroup:
    return dihedral_group(4)


def z2_group() -> FiniteGroup:
    return cyclic_group(2)


# ---------------------------------------------------------------------------
# Graphs and actions


def square_d4(a: float = 1.0, b: float = 0.62, c: float = 0.41) -> Tuple[QuantumGraph, GraphAction]:
    """The dihedral-symmetric square graph and the D4 action on it.

    Corners sit at 45+90i degrees, midpoints at 90i; each leaf sits 15
    degrees off its anchor, so every vertex has a unique angle and the
    whole action is determined by angle arithmetic: rotations add 90
    degrees, reflections negate (after rotating).
    """
    if min(a, b, c) <= 0:
        raise ValueError("edge lengths must be positive")
    G = dihedral_group(4)
    vang: Dict[str, int] = {}
    for i in range(4):
        vang[f"M{i}"] = (90 * i) % 360
        vang[f"C{i}"] = (45 + 90 * i) % 360
        vang[f"M{i}p"] = (90 * i + 15) % 360
        vang[f"M{i}m"] = (90 * i - 15) % 360
        vang[f"C{i}p"] = (45 + 90 * i + 15) % 360
        vang[f"C{i}m"] = (45 + 90 * i - 15) % 360
    by_angle = {ang: vid for vid, ang in vang.items()}

    edges = []
    for i in range(4):
        edges.append(EdgeRecord(f"a{2 * i}", f"M{i}", f"C{i}", a))
        edges.append(EdgeRecord(f"a{2 * i + 1}", f"M{(i + 1) % 4}", f"C{i}", a))
        edges.append(EdgeRecord(f"b{2 * i}", f"M{i}", f"M{i}p", b))
        edges.append(EdgeRecord(f"b{2 * i + 1}", f"M{i}", f"M{i}m", b))
        edges.append(EdgeRecord(f"c{2 * i}", f"C{i}", f"C{i}p", c))
        edges.append(EdgeRecord(f"c{2 * i + 1}", f"C{i}", f"C{i}m", c))

    incident: Dict[str, list] = {vid: [] for vid in vang}
    for e in edges:
        incident[e.source].append(e.id)
        incident[e.target].append(e.id)
    vertices = [
        standard_vertex(vid, "neumann", sorted(incident[vid])) for vid in sorted(vang)
    ]
    graph = QuantumGraph(vertices=tuple(vertices), edges=tuple(edges))

    def move(g: int, ang: int) -> int:
        if g < 4:
            return (ang + 90 * g) % 360
        return (-(ang + 90 * (g - 4))) % 360

    pair_to_edge = {frozenset((e.source, e.target)): e for e in edges}
    elements: Dict[int, ElementMap] = {}
    for g in range(8):
        vm = {vid: by_angle[move(g, ang)] for vid, ang in vang.items()}
        em: Dict[str, str] = {}
        fl: Dict[str, bool] = {}
        for e in edges:
            img = pair_to_edge[frozenset((vm[e.source], vm[e.target]))]
            em[e.id] = img.id
            fl[e.id] = vm[e.source] == img.target
        elements[g] = ElementMap(vertex_map=vm, edge_map=em, flips=fl)
    return graph, GraphAction(group=G, graph=graph, elements=elements)


def interval_z2(l: float = 1.0) -> Tuple[QuantumGraph, GraphAction]:
    """Two Neumann edges of length l glued at a center the reflection fixes."""
    if l <= 0:
        raise ValueError("edge length must be positive")
    edges = (
        EdgeRecord("e1", "vL", "vC", l),
        EdgeRecord("e2", "vC", "vR", l),
    )
    vertices = (
        standard_vertex("vL", "neumann", ("e1",)),
        standard_vertex("vC", "neumann", ("e1", "e2")),
        standard_vertex("vR", "neumann", ("e2",)),
    )
    graph = QuantumGraph(vertices=vertices, edges=edges)
    G = cyclic_group(2)
    elements = {
        0: ElementMap(
            vertex_map={"vL": "vL", "vC": "vC", "vR": "vR"},
            edge_map={"e1": "e1", "e2": "e2"},
            flips={"e1": False, "e2": False},
        ),
        1: ElementMap(
            vertex_map={"vL": "vR", "vC": "vC", "vR": "vL"},
            edge_map={"e1": "e2", "e2": "e1"},
            flips={"e1": True, "e2": True},
        ),
    }
    return graph, GraphAction(group=G, graph=graph, elements=elements)


def ygraph(l1: float = 1.0, l2: float = 1.0, l3: float = 0.7) -> QuantumGraph:
    """Star with a Neumann center, two Dirichlet leaves, and one leaf
    pinning both the value and the derivative (over-determined)."""
    if min(l1, l2, l3) <= 0:
        raise ValueError("edge lengths must be positive")
    edges = (
        EdgeRecord("g1", "vc", "u1", l1),
        EdgeRecord("g2", "vc", "u2", l2),
        EdgeRecord("g3", "vc", "u3", l3),
    )
    vertices = (
        standard_vertex("vc", "neumann", ("g1", "g2", "g3")),
        standard_vertex("u1", "dirichlet", ("g1",)),
        standard_vertex("u2", "dirichlet", ("g2",)),
        VertexRecord(id="u3", edge_order=("g3",), A=[[1.0], [0.0]], B=[[0.0], [1.0]]),
    )
    return QuantumGraph(vertices=vertices, edges=edges)


def _identity_action(graph: QuantumGraph) -> GraphAction:
    G = trivial_group()
    m = ElementMap(
        vertex_map={v: v for v in graph.vertex_ids()},
        edge_map={e: e for e in graph.edge_ids()},
        flips={e: False for e in graph.edge_ids()},
    )
    return GraphAction(group=G, graph=graph, elements={0: m})


# ---------------------------------------------------------------------------
# Representations of D4 and its index-2 subgroups
#
# Element indexing from dihedral_group(4): 0..3 are the rotations s^a,
# 4..7 the reflections t s^a.


def _two_dim(G: FiniteGroup, S: np.ndarray, T: np.ndarray) -> Representation:
    mats: Dict[int, np.ndarray] = {}
    P = np.eye(2, dtype=complex)
    for a in range(4):
        mats[a] = P.copy()
        mats[4 + a] = T @ P
        P = S @ P
    return Representation(group=G, dim=2, matrices=mats)


def d4_irreps() -> Dict[str, Representation]:
    """The five irreducibles, checked for the character relations at build."""
    G = dihedral_group(4)
    out: Dict[str, Representation] = {}
    for name, (rs, rt) in {
        "1a": (1, 1),
        "1b": (1, -1),
        "1c": (-1, 1),
        "1d": (-1, -1),
    }.items():
        out[name] = one_dim_rep(G, {a: rs**a for a in range(4)} | {4 + a: rt * rs**a for a in range(4)})
    S = np.array([[0, 1], [-1, 0]], dtype=complex)
    T = np.array([[-1, 0], [0, 1]], dtype=complex)
    out["2d"] = _two_dim(G, S, T)

    if sum(r.dim**2 for r in out.values()) != G.order:
        raise RuntimeError("irreducible dimensions are inconsistent")
    chars = {n: character(r) for n, r in out.items()}
    for n1, c1 in chars.items():
        for n2, c2 in chars.items():
            want = 1.0 if n1 == n2 else 0.0
            if abs(char_inner_product(c1, c2) - want) > 1e-12:
                raise RuntimeError(f"character orthogonality fails for {n1}, {n2}")
    for n, r in out.items():
        if not validate_rep(r, 1e-12).ok:
            raise RuntimeError(f"irreducible {n} is not a homomorphism")
    return out


def theta_rep(theta: float, G: Optional[FiniteGroup] = None) -> Representation:
    """Two-dimensional orthogonal family: the reflection axis turns with theta."""
    if G is None:
        G = dihedral_group(4)
    elif G != dihedral_group(4):
        raise ValueError("the theta family is defined over the order-8 dihedral group")
    cs, sn = np.cos(2 * theta), np.sin(2 * theta)
    S = np.array([[0, 1], [-1, 0]], dtype=complex)
    T = np.array([[-cs, sn], [sn, cs]], dtype=complex)
    return _two_dim(G, S, T)


def unitary_2d_rep(G: Optional[FiniteGroup] = None) -> Representation:
    """Unitary two-dimensional model with diagonal rotation action."""
    if G is None:
        G = dihedral_group(4)
    S = np.array([[1j, 0], [0, -1j]], dtype=complex)
    T = np.array([[0, -1], [-1, 0]], dtype=complex)
    return _two_dim(G, S, T)


def r1_rep(G: Optional[FiniteGroup] = None) -> Representation:
    """Sign character of the subgroup {e, s2, t, ts2}."""
    if G is None:
        G = dihedral_group(4)
    H = SubgroupRef(G, (0, 2, 4, 6))
    return one_dim_rep(H, {0: 1, 2: -1, 4: -1, 6: 1})


def r2_rep(G: Optional[FiniteGroup] = None) -> Representation:
    """Sign character of the subgroup {e, s2, ts, ts3}."""
    if G is None:
        G = dihedral_group(4)
    H = SubgroupRef(G, (0, 2, 5, 7))
    return one_dim_rep(H, {0: 1, 2: -1, 5: 1, 7: -1})


def r3_rep(G: Optional[FiniteGroup] = None) -> Representation:
    """Faithful character of the rotation subgroup, s acting as i."""
    if G is None:
        G = dihedral_group(4)
    H = SubgroupRef(G, (0, 1, 2, 3))
    return one_dim_rep(H, {0: 1, 1: 1j, 2: -1, 3: -1j})


# ---------------------------------------------------------------------------
# Bundles


def square_d4_bundle(
    a: float = 1.0, b: float = 0.62, c: float = 0.41, theta: float = np.pi / 3
) -> ExampleBundle:
    graph, action = square_d4(a, b, c)
    G = action.group
    reps: Dict[str, Representation] = {
        "R1": r1_rep(G),
        "R2": r2_rep(G),
        "R3": r3_rep(G),
        "theta": theta_rep(theta, G),
        "unitary2d": unitary_2d_rep(G),
    }
    reps.update(d4_irreps())
    return ExampleBundle(
        name="square-d4",
        graph=graph,
        action=action,
        reps=reps,
        params={"a": a, "b": b, "c": c, "theta": theta},
    )


def interval_z2_bundle(l: float = 1.0) -> ExampleBundle:
    graph, action = interval_z2(l)
    G = action.group
    reps = {
        "trivial": trivial_rep(G),
        "sign": one_dim_rep(G, {0: 1, 1: -1}),
    }
    return ExampleBundle(
        name="interval-z2", graph=graph, action=action, reps=reps, params={"l": l}
    )


def ygraph_bundle(l1: float = 1.0, l2: float = 1.0, l3: float = 0.7) -> ExampleBundle:
    graph = ygraph(l1, l2, l3)
    return ExampleBundle(
        name="ygraph",
        graph=graph,
        action=_identity_action(graph),
        reps={},
        params={"l1": l1, "l2": l2, "l3": l3},
    )


def bundle(name: str, **params: float) -> ExampleBundle:
    builders = {
        "square-d4": square_d4_bundle,
        "interval-z2": interval_z2_bundle,
        "ygraph": ygraph_bundle,
    }
    if name not in builders:
        raise ValueError(f"unknown example {name!r}; choose from {sorted(builders)}")
    return builders[name](**params)
