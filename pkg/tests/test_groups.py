import numpy as np
import pytest

from quograph.groups import (
    FiniteGroup,
    SubgroupRef,
    conjugacy_classes,
    cyclic_group,
    dihedral_group,
    direct_product,
    left_transversal,
    parent_of,
    subgroup_generate,
    trivial_group,
)


def test_cyclic_group_table():
    G = cyclic_group(5)
    assert G.order == 5
    for a in range(5):
        for b in range(5):
            assert G.mul(a, b) == (a + b) % 5
    assert G.inv(2) == 3
    assert G.name(0) == "e"


def test_trivial_group():
    G = trivial_group()
    assert G.order == 1
    assert G.mul(0, 0) == 0


def test_dihedral_relations():
    n = 4
    G = dihedral_group(n)
    s, t = 1, n
    assert G.mul(s, t) == G.mul(t, G.inv(s))
    # t s t = s^-1
    assert G.mul(G.mul(t, s), t) == G.inv(s)
    assert G.inv(t) == t
    # every reflection is an involution
    for x in range(n, 2 * n):
        assert G.mul(x, x) == G.identity


def test_group_validation_rejects_bad_table():
    with pytest.raises(ValueError):
        FiniteGroup(order=2, table=((0, 0), (0, 0)), identity=0, names=("e", "g"))
    with pytest.raises(ValueError):
        # non-associative magma on 3 elements
        FiniteGroup(
            order=3,
            table=((0, 1, 2), (1, 0, 0), (2, 0, 1)),
            identity=0,
            names=("e", "a", "b"),
        )


def test_subgroup_generate_and_ref():
    G = dihedral_group(4)
    H = subgroup_generate(G, [2, 4])  # s^2 and t
    assert sorted(H.elements()) == [0, 2, 4, 6]
    assert H.order == 4
    assert H.index() == 2
    assert H.contains(6) and not H.contains(1)
    with pytest.raises(ValueError):
        SubgroupRef(G, (0, 1))  # not closed


def test_left_transversal_covers_group():
    G = dihedral_group(4)
    H = SubgroupRef(G, (0, 2, 4, 6))
    reps = left_transversal(G, H)
    assert reps[0] == G.identity
    seen = set()
    for r in reps:
        for h in H.elements():
            seen.add(G.mul(r, h))
    assert seen == set(range(8))


def test_conjugacy_classes_d4():
    G = dihedral_group(4)
    classes = conjugacy_classes(G)
    sizes = sorted(len(c) for c in classes)
    assert sizes == [1, 1, 2, 2, 2]


def test_direct_product():
    G = direct_product(cyclic_group(2), cyclic_group(3))
    assert G.order == 6
    # (1,1) has order lcm(2,3)=6
    x = 1 * 3 + 1
    y = x
    order = 1
    while y != G.identity:
        y = G.mul(y, x)
        order += 1
    assert order == 6


def test_parent_of():
    G = dihedral_group(3)
    assert parent_of(G) is G
    H = SubgroupRef(G, (0, 1, 2))
    assert parent_of(H) is G
