"""JSON and CSV serialization for groups, representations, graphs, actions.

JSON output is canonical: object keys are sorted, floats are written with
17 significant digits (so values round-trip bit-exactly), and negative
zero is normalized away.  Complex scalars are [re, im] pairs.  Files may
reference other files by relative path or inline the referenced object.
"""

from __future__ import annotations

import json
import os
from typing import Dict, List, Optional

import numpy as np

from .actions import ElementMap, GraphAction
from .graphs import EdgeRecord, QuantumGraph, VertexRecord, standard_condition
from .groups import FiniteGroup, GroupLike, SubgroupRef, parent_of
from .quotient import QuotientResult
from .reps import Representation
from .spectral import Spectrum

__all__ = [
    "dumps_canonical",
    "save_json",
    "load_json",
    "group_to_obj",
    "group_from_obj",
    "save_group",
    "load_group",
    "rep_to_obj",
    "rep_from_obj",
    "save_rep",
    "load_rep",
    "graph_to_obj",
    "graph_from_obj",
    "save_graph",
    "load_graph",
    "action_to_obj",
    "action_from_obj",
    "save_action",
    "load_action",
    "save_spectrum_csv",
    "spectrum_settings_obj",
    "quotient_provenance_obj",
]


# ---------------------------------------------------------------------------
# Canonical JSON


def _fmt_float(x: float) -> str:
    x = float(x)
    if x == 0.0:
        return "0"
    return f"{x:.17g}"


def _canon(obj) -> str:
    if isinstance(obj, dict):
        items = sorted(obj.items(), key=lambda kv: kv[0])
        inner = ",".join(f"{json.dumps(k)}:{_canon(v)}" for k, v in items)
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_canon(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_canonical(obj) -> str:
    return _canon(obj) + "\n"


def save_json(obj, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_canonical(obj))


def load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _complex_pair(z: complex) -> List[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _matrix_to_obj(M: np.ndarray) -> List[List[List[float]]]:
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    return [[_complex_pair(z) for z in row] for row in M]


def _matrix_from_obj(obj) -> np.ndarray:
    rows = [[complex(float(p[0]), float(p[1])) for p in row] for row in obj]
    out = np.array(rows, dtype=complex)
    return out if out.size else out.reshape((len(obj), 0))


def _resolve(ref, base_dir: str, loader):
    """A reference is either an inline object or a relative path string."""
    if isinstance(ref, str):
        return loader(os.path.join(base_dir, ref))
    return ref


# ---------------------------------------------------------------------------
# Groups


def group_to_obj(G: FiniteGroup) -> dict:
    return {
        "order": G.order,
        "identity": G.identity,
        "names": list(G.names),
        "table": [list(row) for row in G.table],
    }


def group_from_obj(obj) -> FiniteGroup:
    return FiniteGroup(
        order=int(obj["order"]),
        table=tuple(tuple(int(x) for x in row) for row in obj["table"]),
        identity=int(obj["identity"]),
        names=tuple(str(n) for n in obj["names"]),
    )


def save_group(G: FiniteGroup, path: str) -> None:
    save_json(group_to_obj(G), path)


def load_group(path: str) -> FiniteGroup:
    return group_from_obj(load_json(path))


# ---------------------------------------------------------------------------
# Representations


def rep_to_obj(rep: Representation, group_ref: Optional[str] = None) -> dict:
    """Matrices are keyed by element index; a subgroup rep keys a subset."""
    group = group_ref if group_ref is not None else group_to_obj(parent_of(rep.group))
    return {
        "group": group,
        "dim": rep.dim,
        "matrices": {str(g): _matrix_to_obj(m) for g, m in rep.matrices.items()},
    }


def rep_from_obj(obj, base_dir: str = ".") -> Representation:
    G = _resolve(obj["group"], base_dir, load_group)
    if isinstance(G, dict):
        G = group_from_obj(G)
    keys = sorted(int(k) for k in obj["matrices"].keys())
    group: GroupLike = G
    if keys != list(range(G.order)):
        group = SubgroupRef(G, tuple(keys))
    return Representation(
        group=group,
        dim=int(obj["dim"]),
        matrices={int(k): _matrix_from_obj(m) for k, m in obj["matrices"].items()},
    )


def save_rep(rep: Representation, path: str, group_ref: Optional[str] = None) -> None:
    save_json(rep_to_obj(rep, group_ref), path)


def load_rep(path: str) -> Representation:
    return rep_from_obj(load_json(path), os.path.dirname(os.path.abspath(path)))


# ---------------------------------------------------------------------------
# Graphs


def graph_to_obj(graph: QuantumGraph) -> dict:
    return {
        "vertices": [
            {
                "id": v.id,
                "edge_order": list(v.edge_order),
                "A": _matrix_to_obj(v.A),
                "B": _matrix_to_obj(v.B),
            }
            for v in graph.vertices
        ],
        "edges": [
            {"id": e.id, "source": e.source, "target": e.target, "length": e.length}
            for e in graph.edges
        ],
    }


def graph_from_obj(obj) -> QuantumGraph:
    edges = tuple(
        EdgeRecord(
            id=str(e["id"]),
            source=str(e["source"]),
            target=str(e["target"]),
            length=float(e["length"]),
        )
        for e in obj["edges"]
    )
    incident: Dict[str, List[str]] = {}
    for e in edges:
        incident.setdefault(e.source, []).append(e.id)
        incident.setdefault(e.target, []).append(e.id)
    vertices = []
    for v in obj["vertices"]:
        vid = str(v["id"])
        order = tuple(
            str(x) for x in v.get("edge_order", sorted(incident.get(vid, [])))
        )
        if "condition" in v:
            A, B = standard_condition(str(v["condition"]), len(order))
        else:
            A, B = _matrix_from_obj(v["A"]), _matrix_from_obj(v["B"])
        vertices.append(VertexRecord(id=vid, edge_order=order, A=A, B=B))
    return QuantumGraph(vertices=tuple(vertices), edges=edges)


def save_graph(graph: QuantumGraph, path: str) -> None:
    save_json(graph_to_obj(graph), path)


def load_graph(path: str) -> QuantumGraph:
    return graph_from_obj(load_json(path))


# ---------------------------------------------------------------------------
# Actions


def action_to_obj(
    action: GraphAction,
    group_ref: Optional[str] = None,
    graph_ref: Optional[str] = None,
) -> dict:
    group = group_ref if group_ref is not None else group_to_obj(parent_of(action.group))
    graph = graph_ref if graph_ref is not None else graph_to_obj(action.graph)
    elements = {}
    for g, m in action.elements.items():
        elements[str(g)] = {
            "vertices": dict(m.vertex_map),
            "edges": {
                eid: {"to": m.edge_map[eid], "flip": m.flips[eid]}
                for eid in m.edge_map
            },
        }
    return {"group": group, "graph": graph, "elements": elements}


def action_from_obj(obj, base_dir: str = ".") -> GraphAction:
    G = _resolve(obj["group"], base_dir, load_group)
    if isinstance(G, dict):
        G = group_from_obj(G)
    graph = _resolve(obj["graph"], base_dir, load_graph)
    if isinstance(graph, dict):
        graph = graph_from_obj(graph)
    keys = sorted(int(k) for k in obj["elements"].keys())
    group: GroupLike = G
    if keys != list(range(G.order)):
        group = SubgroupRef(G, tuple(keys))
    elements: Dict[int, ElementMap] = {}
    for k, m in obj["elements"].items():
        vm = {str(a): str(b) for a, b in m["vertices"].items()}
        em = {str(eid): str(spec["to"]) for eid, spec in m["edges"].items()}
        fl = {str(eid): bool(spec.get("flip", False)) for eid, spec in m["edges"].items()}
        elements[int(k)] = ElementMap(vertex_map=vm, edge_map=em, flips=fl)
    return GraphAction(group=group, graph=graph, elements=elements)


def save_action(
    action: GraphAction,
    path: str,
    group_ref: Optional[str] = None,
    graph_ref: Optional[str] = None,
) -> None:
    save_json(action_to_obj(action, group_ref, graph_ref), path)


def load_action(path: str) -> GraphAction:
    return action_from_obj(load_json(path), os.path.dirname(os.path.abspath(path)))


# ---------------------------------------------------------------------------
# Spectra and provenance


def save_spectrum_csv(spec: Spectrum, path: str) -> None:
    """Columns k, lambda, multiplicity; the zero mode appears as a k=0 row."""
    lines = ["k,lambda,multiplicity"]
    if spec.zero_mode_multiplicity > 0:
        lines.append(f"0,0,{spec.zero_mode_multiplicity}")
    for k, m in spec.entries:
        lines.append(f"{_fmt_float(k)},{_fmt_float(k * k)},{m}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def spectrum_settings_obj(spec: Spectrum) -> dict:
    o = spec.options
    return {
        "k_max": spec.k_max,
        "scan_step": spec.scan_step,
        "accept_tol": o.accept_tol,
        "refine_tol": o.refine_tol,
        "k_floor": o.k_floor,
        "eigenvalues_found": spec.count(),
        "zero_mode_multiplicity": spec.zero_mode_multiplicity,
        "weyl_max_deviation": spec.weyl_max_deviation,
        "near_misses": [[k, r] for k, r in spec.near_misses],
    }


def quotient_provenance_obj(result: QuotientResult) -> dict:
    edges = {}
    for qid, p in result.edge_provenance.items():
        edges[qid] = {
            "orbit": p.orbit,
            "copy": p.copy,
            "representative": p.representative,
            "length": p.length,
        }
    vertices = {}
    for qid, p in result.vertex_provenance.items():
        vertices[qid] = {
            "orbit": p.orbit,
            "representative": p.representative,
            "nu": list(p.local.nu),
            "mu": list(p.local.mu),
            "d_mu": list(p.local.d_mu),
            "witnesses": list(p.local.witnesses),
            "A_pre": _matrix_to_obj(p.A_pre),
            "B_pre": _matrix_to_obj(p.B_pre),
        }
    return {
        "edges": edges,
        "vertices": vertices,
        "generalized_vertices": list(result.generalized_vertices),
        "dropped_vertex_orbits": list(result.dropped_vertex_orbits),
    }
