"""One test per numbered acceptance criterion.

Each test appends a verdict line to conftest.ACCEPTANCE_LINES and the
terminal summary hook prints the collected lines after the run, so a
plain pytest invocation ends with one pass/fail line per criterion.
"""

import functools
import time

import numpy as np
import pytest

import conftest
from quograph.examples import r1_rep, r3_rep, theta_rep, ygraph
from quograph.graphs import EdgeRecord, QuantumGraph, standard_vertex
from quograph.groups import (
    SubgroupRef,
    cyclic_group,
    dihedral_group,
    direct_product,
    parent_of,
    subgroup_generate,
)
from quograph.quotient import (
    LocalData,
    build_quotient,
    build_vertex_condition,
    classify,
    make_recipe,
    reduce_rows,
)
from quograph.reps import (
    AdaptedBasis,
    char_inner_product,
    character,
    conjugate_rep,
    coset_permutation_rep,
    direct_sum,
    induce,
    regular_rep,
    restrict,
    trivial_rep,
)
from quograph.spectral import (
    SolverOptions,
    combine_spectra,
    compare_spectra,
    find_spectrum,
    rep_multiplicity,
)

SQ3 = np.sqrt(3.0)

# quotient results and spectra shared between criteria, keyed by rep name
_shared = {}


def note(num, ok, detail):
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} - {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)


def criterion(num, budget=None):
    """Wrap a test so it always leaves one verdict line, timed."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except Exception as exc:
                text = " ".join(str(exc).split())[:200]
                note(num, False, f"{type(exc).__name__}: {text}")
                raise
            dt = time.perf_counter() - t0
            if budget is not None and dt > budget:
                note(num, False, f"{detail} (runtime {dt:.1f}s over the {budget:.0f}s budget)")
                pytest.fail(f"criterion {num} exceeded its runtime budget")
            note(num, True, f"{detail} ({dt:.2f}s)")

        return run

    return wrap


def free_basis(rep):
    G = rep.group
    stab = SubgroupRef(G if not isinstance(G, SubgroupRef) else G.parent, (G.identity,))
    return AdaptedBasis(rep=rep, subgroup=stab, C=np.eye(rep.dim, dtype=complex), fixed_dim=rep.dim)


def canon_rows(A, B, tol=1e-12):
    """Sort and rescale rows of (A|B) so comparisons ignore order and scale."""
    M = np.hstack([np.atleast_2d(np.asarray(A, dtype=complex)),
                   np.atleast_2d(np.asarray(B, dtype=complex))])
    rows = []
    for row in M:
        idx = np.nonzero(np.abs(row) > tol)[0]
        if idx.size:
            row = row / row[idx[0]]
        rows.append(row)
    key = lambda r: tuple(np.round(np.concatenate([r.real, r.imag]), 9))
    return np.array(sorted(rows, key=key))


def interval_graph(length, left, right):
    return QuantumGraph(
        vertices=(
            standard_vertex("L", left, ("e",)),
            standard_vertex("R", right, ("e",)),
        ),
        edges=(EdgeRecord("e", "L", "R", float(length)),),
    )


def quotient_for(bundle_, key):
    qkey = ("quot", key)
    if qkey not in _shared:
        if key.startswith("theta:"):
            rep = theta_rep(float(key.split(":")[1]), parent_of(bundle_.action.group))
        else:
            rep = bundle_.reps[key]
        _shared[qkey] = build_quotient(make_recipe(bundle_.action, rep))
    return _shared[qkey]


def spectrum_for(bundle_, key, k_max=20.0):
    skey = ("spec", key, k_max)
    if skey not in _shared:
        g = quotient_for(bundle_, key).graph
        step = np.pi / (16.0 * g.total_length)
        _shared[skey] = find_spectrum(g, k_max, SolverOptions(scan_step=step))
    return _shared[skey]


@criterion(1, budget=1.0)
def test_c01_reduced_vertex_conditions_match_references():
    G = dihedral_group(4)
    n2A = np.array([[1.0, -1.0], [0.0, 0.0]], dtype=complex)
    n2B = np.array([[0.0, 0.0], [1.0, 1.0]], dtype=complex)

    def build(rep, nu, mu, d_mu, witnesses):
        local = LocalData(n=2, d=rep.dim, nu=nu, mu=mu, d_mu=d_mu, witnesses=witnesses)
        bases = {m: free_basis(rep) for m in mu}
        A, B = build_vertex_condition(local, n2A, n2B, rep, np.eye(rep.dim, dtype=complex), bases)
        return reduce_rows(A, B)

    two = theta_rep(np.pi / 3, G)
    cases = [
        # a corner fixed by the diagonal mirror, two copies of one edge orbit
        ("diagonal mirror", build(two, (0, 0), (0,), (2,), (0, 7)),
         [[1 - SQ3 / 2, 0.5], [0, 0]], [[0, 0], [-1 - SQ3 / 2, 0.5]]),
        # a midpoint fixed by the vertical mirror
        ("vertical mirror", build(two, (0, 0), (0,), (2,), (0, 6)),
         [[1.5, SQ3 / 2], [0, 0]], [[0, 0], [-0.5, SQ3 / 2]]),
        # a rotation joining two distinct edge orbits, character value i
        ("quarter turn", build(r3_rep(G), (0, 1), (0, 1), (1, 1), (0, 1)),
         [[1, 1j], [0, 0]], [[0, 0], [1, -1j]]),
        # a one-dim sign character folding a mirror-fixed midpoint to Dirichlet
        ("sign fold", build(r1_rep(G), (0, 0), (0,), (1,), (0, 4)),
         [[2.0]], [[0.0]]),
    ]
    worst = 0.0
    for name, (A, B), Ae, Be in cases:
        got = canon_rows(A, B)
        want = canon_rows(Ae, Be)
        assert got.shape == want.shape, f"{name}: shape {got.shape} vs {want.shape}"
        dev = float(np.max(np.abs(got - want)))
        assert dev <= 1e-12, f"{name}: entry deviation {dev:.2e}"
        worst = max(worst, dev)
    return f"four reduced vertex conditions match their references to {worst:.1e}"


@criterion(2, budget=5.0)
def test_c02_closed_form_interval_spectra():
    cases = [
        ("dirichlet", "dirichlet", [n * np.pi for n in range(1, 10)], 0),
        ("neumann", "neumann", [n * np.pi for n in range(1, 10)], 1),
        ("dirichlet", "neumann", [(n + 0.5) * np.pi for n in range(10)], 0),
    ]
    worst = 0.0
    for left, right, expected, zm in cases:
        spec = find_spectrum(interval_graph(1.0, left, right), 30.0)
        assert spec.zero_mode_multiplicity == zm, (left, right, spec.zero_mode_multiplicity)
        got = spec.expanded()
        assert len(got) == len(expected), (left, right, len(got), len(expected))
        dev = max(abs(a - b) for a, b in zip(got, expected))
        assert dev <= 1e-9, f"{left}/{right} interval off by {dev:.2e}"
        worst = max(worst, dev)
    return f"unit interval spectra for three endpoint choices match to {worst:.1e}"


@criterion(3, budget=30.0)
def test_c03_two_element_folding_identity(interval_z2):
    full = find_spectrum(interval_z2.graph, 30.0)
    parts = []
    for name in ("trivial", "sign"):
        res = build_quotient(make_recipe(interval_z2.action, interval_z2.reps[name]))
        parts.append((find_spectrum(res.graph, 30.0), 1))
    folded = combine_spectra(parts)
    report = compare_spectra(full, folded, tol=1e-8)
    assert report.passed, (report.unmatched_a[:4], report.unmatched_b[:4])
    assert not report.zero_mode_mismatch
    assert full.count() >= 19
    return (f"{full.count()} eigenvalues equal the union over both parity quotients,"
            f" max deviation {report.max_deviation:.1e}")


@criterion(4, budget=60.0)
def test_c04_isospectral_triple(square_d4):
    specs = {name: spectrum_for(square_d4, name) for name in ("R1", "R2", "R3")}
    for name, s in specs.items():
        assert s.count() >= 20, (name, s.count())
    worst = 0.0
    names = list(specs)
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            xa = specs[names[i]].expanded()[:20]
            xb = specs[names[j]].expanded()[:20]
            dev = max(abs(a - b) for a, b in zip(xa, xb))
            assert dev <= 1e-7, f"{names[i]} vs {names[j]}: {dev:.2e}"
            worst = max(worst, dev)
    return f"the three subgroup quotients agree on 20 eigenvalues to {worst:.1e}"


@criterion(5, budget=60.0)
def test_c05_two_dim_basis_angle_invariance(square_d4):
    keys = ["theta:0.0", f"theta:{np.pi / 3}", f"theta:{3 * np.pi / 4}"]
    specs = [spectrum_for(square_d4, k) for k in keys]
    for key, s in zip(keys, specs):
        assert s.count() >= 20, (key, s.count())
    worst = 0.0
    for i in range(len(specs)):
        for j in range(i + 1, len(specs)):
            xa, xb = specs[i].expanded()[:20], specs[j].expanded()[:20]
            worst = max(worst, max(abs(a - b) for a, b in zip(xa, xb)))
    assert worst <= 1e-7, f"angle family spread {worst:.2e}"
    ref = spectrum_for(square_d4, "R1").expanded()[:20]
    against_ref = 0.0
    for s in specs:
        xs = s.expanded()[:20]
        against_ref = max(against_ref, max(abs(a - b) for a, b in zip(xs, ref)))
    assert against_ref <= 1e-7, f"deviation from the subgroup triple {against_ref:.2e}"
    return (f"three basis angles agree to {worst:.1e} and sit on the"
            f" triple's spectrum to {against_ref:.1e}")


@criterion(6, budget=120.0)
def test_c06_regular_decomposition(square_d4):
    g = square_d4.graph
    full = find_spectrum(g, 12.0, SolverOptions(scan_step=np.pi / (16.0 * g.total_length)))
    parts = []
    for name in ("1a", "1b", "1c", "1d", "2d"):
        rep = square_d4.reps[name]
        parts.append((spectrum_for(square_d4, name, k_max=12.0), rep.dim))
    combined = combine_spectra(parts)
    report = compare_spectra(full, combined, tol=1e-7)
    assert report.passed, (report.unmatched_a[:4], report.unmatched_b[:4])
    assert not report.zero_mode_mismatch
    assert full.count() >= 40
    return (f"{full.count()} eigenvalues decompose over the five irreducibles,"
            f" max deviation {report.max_deviation:.1e}")


@criterion(7, budget=60.0)
def test_c07_quotients_stay_proper_and_exact(square_d4):
    keys = [
        "R1", "R2", "R3",
        "theta:0.0", f"theta:{np.pi / 3}", f"theta:{3 * np.pi / 4}",
        "1a", "1b", "1c", "1d", "2d",
    ]
    bad = {}
    for key in keys:
        v = classify(quotient_for(square_d4, key)).verdict
        if v != "proper-and-exact":
            bad[key] = v
    assert not bad, bad
    return f"all {len(keys)} constructed quotients classify as proper-and-exact"


def _group_catalog():
    groups = [cyclic_group(n) for n in range(2, 17)]
    groups += [dihedral_group(n) for n in range(2, 9)]
    c2, c3, c4 = cyclic_group(2), cyclic_group(3), cyclic_group(4)
    groups += [
        direct_product(c2, c2),
        direct_product(c2, c4),
        direct_product(c2, cyclic_group(6)),
        direct_product(c3, c3),
        direct_product(c4, c4),
        direct_product(c2, direct_product(c2, c2)),
        direct_product(c2, dihedral_group(4)),
    ]
    assert all(g.order <= 16 for g in groups)
    return groups


def _rand_invertible(rng, d):
    M = np.eye(d, dtype=complex)
    M += (0.3 / np.sqrt(d)) * (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    return M


def _rand_full_rep(rng, G, depth=0):
    kind = rng.randint(4 if depth == 0 else 3)
    if kind == 0:
        rep = trivial_rep(G, dim=int(rng.randint(1, 3)))
    elif kind == 1:
        rep = regular_rep(G)
    elif kind == 2:
        gens = [int(x) for x in rng.choice(G.order, size=rng.randint(1, 3), replace=False)]
        rep = coset_permutation_rep(G, subgroup_generate(G, gens))
    else:
        rep = direct_sum(_rand_full_rep(rng, G, 1), _rand_full_rep(rng, G, 1))
    if depth == 0 and rng.rand() < 0.3:
        rep = conjugate_rep(rep, _rand_invertible(rng, rep.dim))
    return rep


def _rand_subgroup_rep(rng, G, H, depth=0):
    kind = rng.randint(3 if depth == 0 else 2)
    if kind == 0:
        rep = trivial_rep(H, dim=int(rng.randint(1, 3)))
    elif kind == 1:
        rep = restrict(_rand_full_rep(rng, G, 1), H)
    else:
        rep = direct_sum(
            _rand_subgroup_rep(rng, G, H, 1), _rand_subgroup_rep(rng, G, H, 1)
        )
    if depth == 0 and rng.rand() < 0.3:
        rep = conjugate_rep(rep, _rand_invertible(rng, rep.dim))
    return rep


@criterion(8, budget=60.0)
def test_c08_induction_restriction_adjunction():
    rng = np.random.RandomState(20260818)
    groups = _group_catalog()
    worst = 0.0
    for _ in range(100):
        G = groups[rng.randint(len(groups))]
        gens = [int(x) for x in rng.choice(G.order, size=rng.randint(1, 3), replace=False)]
        H = subgroup_generate(G, gens)
        R = _rand_subgroup_rep(rng, G, H)
        S = _rand_full_rep(rng, G)
        lhs = char_inner_product(character(induce(R, G)), character(S))
        rhs = char_inner_product(character(R), character(restrict(S, H)))
        worst = max(worst, abs(lhs - rhs))
    assert worst <= 1e-10, worst
    return f"100 random induction pairings balance their restrictions to {worst:.1e}"


@criterion(9, budget=30.0)
def test_c09_arm_length_commensurability(ygraph_equal):
    spec = find_spectrum(ygraph_equal.graph, 10.0)
    expected = [np.pi, 2 * np.pi, 3 * np.pi]
    got = spec.expanded()
    assert spec.zero_mode_multiplicity == 0
    assert len(got) == len(expected), got
    dev = max(abs(a - b) for a, b in zip(got, expected))
    assert dev <= 1e-9, dev

    skew = ygraph(1.0, np.sqrt(2.0), 0.7)
    empty = find_spectrum(skew, 10.0)
    assert empty.count() == 0, empty.entries
    assert empty.zero_mode_multiplicity == 0
    return (f"equal arms give the three expected resonances to {dev:.1e},"
            f" incommensurable arms give none below 10")


@criterion(10, budget=60.0)
def test_c10_parity_resolved_multiplicity(interval_z2):
    g, action = interval_z2.graph, interval_z2.action
    spec = find_spectrum(g, 16.0)
    first = spec.entries[:10]
    assert len(first) == 10, len(first)
    for k, mult in first:
        split = {
            name: rep_multiplicity(g, action, interval_z2.reps[name], k)
            for name in ("trivial", "sign")
        }
        assert set(split.values()) <= {0, 1}, (k, split)
        assert split["trivial"] + split["sign"] == mult, (k, split, mult)
        n = round(2.0 * k / np.pi)
        want = "trivial" if n % 2 == 0 else "sign"
        assert split[want] == 1, (k, n, split)
    return "first 10 interval eigenvalues land entirely on their parity class"
