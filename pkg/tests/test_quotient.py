import numpy as np
import pytest

from quograph.actions import ElementMap, GraphAction, insert_dummies, orbits
from quograph.graphs import EdgeRecord, QuantumGraph, is_exact, standard_vertex
from quograph.groups import SubgroupRef, cyclic_group, dihedral_group
from quograph.quotient import (
    LocalData,
    build_gothic,
    build_quotient,
    build_theta,
    build_vertex_condition,
    classify,
    make_recipe,
    predicted_degree,
    reduce_rows,
    split_vertices,
)
from quograph.reps import AdaptedBasis, one_dim_rep, trivial_rep
from quograph.examples import r1_rep, r3_rep, theta_rep

from conftest import assert_allclose


def free_basis(rep):
    G = rep.group
    stab = SubgroupRef(G if not isinstance(G, SubgroupRef) else G.parent, (G.identity,))
    return AdaptedBasis(rep=rep, subgroup=stab, C=np.eye(rep.dim, dtype=complex), fixed_dim=rep.dim)


def neumann_pair(degree):
    A = np.zeros((degree, degree), dtype=complex)
    for i in range(degree - 1):
        A[i, i], A[i, i + 1] = 1.0, -1.0
    B = np.zeros((degree, degree), dtype=complex)
    B[-1, :] = 1.0
    return A, B


def canon_rows(A, B, tol=1e-12):
    """Sort and rescale rows of (A|B) so comparisons ignore order and scale."""
    M = np.hstack([np.atleast_2d(A), np.atleast_2d(B)])
    rows = []
    for row in M:
        idx = np.nonzero(np.abs(row) > tol)[0]
        if idx.size:
            row = row / row[idx[0]]
        rows.append(row)
    key = lambda r: tuple(np.round(np.concatenate([r.real, r.imag]), 9))
    return np.array(sorted(rows, key=key))


def test_theta_drops_dead_copies():
    local = LocalData(n=3, d=2, nu=(0, 1, 0), mu=(0, 1), d_mu=(2, 1), witnesses=(0, 0, 0))
    theta = build_theta(local)
    assert theta.shape == (6, 3)
    # slot 0 and slot 2 share orbit 0's two columns, slot 1 keeps one column
    assert_allclose(theta[0:2, 0:2], np.eye(2))
    assert_allclose(theta[4:6, 0:2], np.eye(2))
    assert_allclose(theta[2:4, 2:3], [[1.0], [0.0]])


def test_gothic_uses_inverse_witness():
    G = dihedral_group(4)
    rep = theta_rep(np.pi / 3, G)
    local = LocalData(n=2, d=2, nu=(0, 0), mu=(0,), d_mu=(2, ), witnesses=(0, 3))
    gothic = build_gothic(local, rep, np.eye(2), {0: free_basis(rep)})
    assert gothic.shape == (4, 4)
    assert_allclose(gothic[0:2, 0:2], np.eye(2))
    assert_allclose(gothic[2:4, 2:4], rep.mat(G.inv(3)).T)
    assert_allclose(gothic[0:2, 2:4], np.zeros((2, 2)))


def test_reduce_rows_drops_dependent_rows():
    A = np.array([[1.0, 2.0], [2.0, 4.0], [0.0, 0.0]])
    B = np.array([[0.0, 1.0], [0.0, 2.0], [0.0, 0.0]])
    Ar, Br = reduce_rows(A, B)
    assert Ar.shape == (1, 2)
    # the surviving row spans the same line
    orig = np.hstack([A, B])
    kept = np.hstack([Ar, Br])
    rank_joint = np.linalg.matrix_rank(np.vstack([orig, kept]), tol=1e-10)
    assert rank_joint == 1


def test_reduce_rows_keeps_full_rank_input():
    A = np.array([[1.0, 1j], [0.0, 0.0]])
    B = np.array([[0.0, 0.0], [1.0, -1j]])
    Ar, Br = reduce_rows(A, B)
    assert Ar.shape == (2, 2)
    assert_allclose(canon_rows(Ar, Br), canon_rows(A, B))


def test_reduce_rows_zero_input():
    Ar, Br = reduce_rows(np.zeros((3, 2)), np.zeros((3, 2)))
    assert Ar.shape == (0, 2) and Br.shape == (0, 2)


def test_vertex_condition_one_dim_same_orbit_pair():
    """Degree-2 vertex whose two edges lie in one orbit, witness an involution
    acting by -1: the Neumann pair collapses to a Dirichlet condition."""
    G = dihedral_group(4)
    H = SubgroupRef(G, (0, 2, 4, 6))
    rep = r1_rep(G)
    local = LocalData(n=2, d=1, nu=(0, 0), mu=(0,), d_mu=(1,), witnesses=(0, 4))
    A, B = neumann_pair(2)
    Ap, Bp = build_vertex_condition(local, A, B, rep, np.eye(1), {0: free_basis(rep)})
    assert_allclose(Ap, [[2.0], [0.0]])
    assert_allclose(Bp, [[0.0], [0.0]])
    Ar, Br = reduce_rows(Ap, Bp)
    assert Ar.shape == (1, 1)
    assert Br[0, 0] == 0
    assert Ar[0, 0] != 0


def test_quotient_total_length(square_d4):
    # free edge orbits contribute d copies of the representative length
    rep = theta_rep(np.pi / 3)
    res = build_quotient(make_recipe(square_d4.action, rep))
    a, b, c = (square_d4.params[k] for k in ("a", "b", "c"))
    assert res.graph.total_length == pytest.approx(2 * (a + b + c))


def test_quotient_edge_multiplicity_and_provenance(square_d4):
    rep = theta_rep(np.pi / 3)
    res = build_quotient(make_recipe(square_d4.action, rep))
    assert len(res.graph.edges) == 6
    for eid, prov in res.edge_provenance.items():
        assert res.graph.edge(eid).length == pytest.approx(prov.length)
    copies = {}
    for prov in res.edge_provenance.values():
        copies.setdefault(prov.representative, 0)
        copies[prov.representative] += 1
    assert sorted(copies.values()) == [2, 2, 2]


def test_predicted_degree_matches_built_graph(square_d4):
    for rep_name in ("R1", "R3", "theta", "2d"):
        rep = square_d4.reps[rep_name]
        recipe = make_recipe(square_d4.action, rep)
        res = build_quotient(recipe)
        action = recipe.action
        for v in res.graph.vertices:
            want = predicted_degree(action, rep, res.vertex_provenance[v.id].representative)
            assert v.degree == want, (rep_name, v.id)


def test_quotient_self_adjoint_source_is_exact(square_d4):
    for name, rep in square_d4.reps.items():
        res = build_quotient(make_recipe(square_d4.action, rep))
        assert classify(res).verdict == "proper-and-exact", name
        assert is_exact(res.graph).ok


def test_dead_orbit_drops_vertex():
    """Star with a reflection-fixed edge: the sign rep kills that edge's orbit
    and the far leaf loses all its incident copies."""
    ec = EdgeRecord("cx", "c", "x", 1.0)
    ey = EdgeRecord("cy", "c", "y", 1.0)
    ez = EdgeRecord("cz", "c", "z", 0.5)
    g = QuantumGraph(
        vertices=(
            standard_vertex("c", "neumann", ("cx", "cy", "cz")),
            standard_vertex("x", "neumann", ("cx",)),
            standard_vertex("y", "neumann", ("cy",)),
            standard_vertex("z", "neumann", ("cz",)),
        ),
        edges=(ec, ey, ez),
    )
    Z2 = cyclic_group(2)
    act = GraphAction(
        group=Z2,
        graph=g,
        elements={
            0: ElementMap(
                vertex_map={v: v for v in "cxyz"},
                edge_map={e: e for e in ("cx", "cy", "cz")},
                flips={e: False for e in ("cx", "cy", "cz")},
            ),
            1: ElementMap(
                vertex_map={"c": "c", "x": "y", "y": "x", "z": "z"},
                edge_map={"cx": "cy", "cy": "cx", "cz": "cz"},
                flips={"cx": False, "cy": False, "cz": False},
            ),
        },
    )
    sign = one_dim_rep(Z2, {0: 1.0, 1: -1.0})
    res = build_quotient(make_recipe(act, sign))
    ids = res.graph.vertex_ids()
    assert "z" not in ids
    assert len(res.dropped_vertex_orbits) == 1
    assert len(res.graph.edges) == 1
    # trivial rep keeps everything
    res_triv = build_quotient(make_recipe(act, trivial_rep(Z2)))
    assert len(res_triv.graph.edges) == 2


def test_split_vertices_separates_diagonal_blocks(square_d4):
    rep = theta_rep(0.0)
    res = build_quotient(make_recipe(square_d4.action, rep))
    before = res.graph
    after = split_vertices(before)
    assert len(after.edges) == len(before.edges)
    assert after.total_length == pytest.approx(before.total_length)
    assert len(after.vertices) >= len(before.vertices)
    assert is_exact(after).ok
    from quograph.spectral import compare_spectra, find_spectrum

    sa = find_spectrum(before, 8.0)
    sb = find_spectrum(after, 8.0)
    rp = compare_spectra(sa, sb, 1e-9)
    assert rp.passed


def test_recipe_rejects_foreign_rep(square_d4):
    other = trivial_rep(cyclic_group(3))
    with pytest.raises(ValueError):
        make_recipe(square_d4.action, other)


def test_quotient_by_subgroup_rep_restricts_action(square_d4):
    G = square_d4.action.group
    rep = r1_rep(G)
    recipe = make_recipe(square_d4.action, rep)
    assert recipe.action.group.order == 4
    res = build_quotient(recipe)
    assert res.graph.total_length == pytest.approx(2 * (1.0 + 0.62 + 0.41))
