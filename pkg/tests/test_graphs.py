import numpy as np
import pytest

from quograph.graphs import (
    EdgeRecord,
    QuantumGraph,
    VertexRecord,
    is_exact,
    is_self_adjoint,
    normalize_condition,
    standard_condition,
    standard_vertex,
    subdivide_edge,
)

from conftest import assert_allclose


def path_graph(lengths=(1.0, 1.5)):
    """u --e1-- m --e2-- w with Neumann conditions everywhere."""
    e1 = EdgeRecord("e1", "u", "m", lengths[0])
    e2 = EdgeRecord("e2", "m", "w", lengths[1])
    return QuantumGraph(
        vertices=(
            standard_vertex("u", "neumann", ("e1",)),
            standard_vertex("m", "neumann", ("e1", "e2")),
            standard_vertex("w", "neumann", ("e2",)),
        ),
        edges=(e1, e2),
    )


def test_edge_record_rejects_bad_input():
    with pytest.raises(ValueError):
        EdgeRecord("e", "v", "v", 1.0)
    with pytest.raises(ValueError):
        EdgeRecord("e", "u", "v", 0.0)
    with pytest.raises(ValueError):
        EdgeRecord("e", "u", "v", -2.0)


def test_vertex_record_shape_checks():
    with pytest.raises(ValueError):
        VertexRecord(
            id="v",
            edge_order=("a", "b"),
            A=np.eye(2),
            B=np.zeros((3, 2)),
        )
    with pytest.raises(ValueError):
        VertexRecord(id="v", edge_order=("a", "a"), A=np.eye(2), B=np.zeros((2, 2)))


def test_graph_validates_edge_order_consistency():
    e1 = EdgeRecord("e1", "u", "m", 1.0)
    e2 = EdgeRecord("e2", "m", "w", 1.0)
    with pytest.raises(ValueError):
        QuantumGraph(
            vertices=(
                standard_vertex("u", "neumann", ("e1",)),
                standard_vertex("m", "neumann", ("e1",)),  # e2 missing
                standard_vertex("w", "neumann", ("e2",)),
            ),
            edges=(e1, e2),
        )


def test_standard_conditions():
    A, B = standard_condition("dirichlet", 3)
    assert_allclose(A, np.eye(3))
    assert_allclose(B, np.zeros((3, 3)))
    A, B = standard_condition("neumann", 3)
    # first rows enforce continuity, last row the derivative sum
    assert_allclose(A[-1], np.zeros(3))
    assert_allclose(B[-1], np.ones(3))
    A, B = standard_condition("neumann", 1)
    assert_allclose(A, [[0.0]])
    assert_allclose(B, [[1.0]])


def test_exactness_and_self_adjointness():
    g = path_graph()
    rep = is_exact(g)
    assert rep.ok
    assert is_self_adjoint(g)


def test_generalized_vertex_detected():
    # one-edge graph whose leaf pins both value and derivative
    e = EdgeRecord("e", "u", "v", 1.0)
    over = VertexRecord(
        id="v",
        edge_order=("e",),
        A=np.array([[1.0], [0.0]]),
        B=np.array([[0.0], [1.0]]),
    )
    g = QuantumGraph(
        vertices=(standard_vertex("u", "dirichlet", ("e",)), over),
        edges=(e,),
    )
    assert not is_exact(g).ok


def test_parallel_edges_allowed():
    e1 = EdgeRecord("e1", "u", "v", 1.0)
    e2 = EdgeRecord("e2", "u", "v", 2.0)
    g = QuantumGraph(
        vertices=(
            standard_vertex("u", "neumann", ("e1", "e2")),
            standard_vertex("v", "neumann", ("e1", "e2")),
        ),
        edges=(e1, e2),
    )
    assert g.vertex("u").degree == 2


def test_subdivide_edge_structure():
    g = path_graph()
    g2 = subdivide_edge(g, "e1", 0.25)
    assert len(g2.edges) == 3
    assert "e1.cut" in g2.vertex_ids()
    assert g2.edge("e1.1").length == pytest.approx(0.25)
    assert g2.edge("e1.2").length == pytest.approx(0.75)
    assert g2.total_length == pytest.approx(g.total_length)
    mid = g2.vertex("e1.cut")
    assert mid.degree == 2
    # bad cut positions are rejected
    with pytest.raises(ValueError):
        subdivide_edge(g, "e1", 0.0)
    with pytest.raises(ValueError):
        subdivide_edge(g, "e1", 1.0)


def test_subdivide_name_collision():
    g = path_graph()
    g2 = subdivide_edge(g, "e1", 0.5)
    with pytest.raises(ValueError):
        subdivide_edge(g2, "e1.1", 0.1, vertex_id="e1.cut")


def test_normalize_condition_scales_leading_entry():
    A = np.array([[2.0, 4.0], [0.0, 0.0]])
    B = np.array([[0.0, 0.0], [3.0, -3.0]])
    An, Bn = normalize_condition(A, B)
    assert An[0, 0] == pytest.approx(1.0)
    assert Bn[1, 0] == pytest.approx(1.0)
