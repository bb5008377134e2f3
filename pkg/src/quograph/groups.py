"""Finite groups as explicit multiplication tables.

Groups are given extensionally: an order-n Cayley table over element
indices 0..n-1, an identity index, and display names.  All validation is
exhaustive, which is cheap at the scales used here (order <= a few hundred).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple, Union

__all__ = [
    "FiniteGroup",
    "SubgroupRef",
    "GroupLike",
    "subgroup_generate",
    "left_transversal",
    "conjugacy_classes",
    "trivial_group",
    "cyclic_group",
    "dihedral_group",
    "direct_product",
]


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group as a Cayley table with named elements."""

    order: int
    table: Tuple[Tuple[int, ...], ...]
    identity: int
    names: Tuple[str, ...]

    def __post_init__(self) -> None:
        n = self.order
        if n < 1:
            raise ValueError(f"group order must be positive, got {n}")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError(f"table must be {n}x{n}")
        if len(self.names) != n:
            raise ValueError(f"expected {n} names, got {len(self.names)}")
        if not (0 <= self.identity < n):
            raise ValueError(f"identity index {self.identity} out of range")
        full = frozenset(range(n))
        for i, row in enumerate(self.table):
            if frozenset(row) != full:
                raise ValueError(f"row {i} of table is not a permutation")
        for j in range(n):
            if frozenset(row[j] for row in self.table) != full:
                raise ValueError(f"column {j} of table is not a permutation")
        e = self.identity
        for g in range(n):
            if self.table[e][g] != g or self.table[g][e] != g:
                raise ValueError(f"identity law fails at element {g}")
        # Exhaustive associativity check; O(n^3) is fine at desk scale.
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise ValueError(
                            f"associativity fails at ({a},{b},{c})"
                        )
        for g in range(n):
            if not any(
                self.table[g][h] == e and self.table[h][g] == e for h in range(n)
            ):
                raise ValueError(f"element {g} has no two-sided inverse")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        e = self.identity
        for h in range(self.order):
            if self.table[a][h] == e:
                return h
        raise ValueError(f"no inverse for element {a}")  # unreachable after validation

    def elements(self) -> Tuple[int, ...]:
        return tuple(range(self.order))

    def name(self, g: int) -> str:
        return self.names[g]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return (
            self.order == other.order
            and self.identity == other.identity
            and self.table == other.table
        )

    def __hash__(self) -> int:
        return hash((self.order, self.identity, self.table))


@dataclass(frozen=True)
class SubgroupRef:
    """A subgroup of a parent group, as a sorted index subset."""

    parent: FiniteGroup
    elements_: Tuple[int, ...]

    def __post_init__(self) -> None:
        elems = tuple(sorted(set(self.elements_)))
        object.__setattr__(self, "elements_", elems)
        G = self.parent
        for g in elems:
            if not (0 <= g < G.order):
                raise ValueError(f"element {g} out of range for order {G.order}")
        if G.identity not in elems:
            raise ValueError("subgroup must contain the identity")
        eset = set(elems)
        for a in elems:
            if G.inv(a) not in eset:
                raise ValueError(f"subgroup not closed under inversion at {a}")
            for b in elems:
                if G.mul(a, b) not in eset:
                    raise ValueError(f"subgroup not closed under product at ({a},{b})")
        if G.order % len(elems) != 0:
            raise ValueError("subgroup order does not divide group order")

    @property
    def order(self) -> int:
        return len(self.elements_)

    def elements(self) -> Tuple[int, ...]:
        return self.elements_

    def mul(self, a: int, b: int) -> int:
        return self.parent.mul(a, b)

    def inv(self, a: int) -> int:
        return self.parent.inv(a)

    @property
    def identity(self) -> int:
        return self.parent.identity

    def name(self, g: int) -> str:
        return self.parent.name(g)

    def index(self) -> int:
        return self.parent.order // self.order

    def contains(self, g: int) -> bool:
        return g in set(self.elements_)


# Either a full group or a subgroup view; both expose mul/inv/identity/elements.
GroupLike = Union[FiniteGroup, SubgroupRef]


def parent_of(group: GroupLike) -> FiniteGroup:
    """The underlying full group of a GroupLike."""
    return group.parent if isinstance(group, SubgroupRef) else group


def subgroup_generate(G: FiniteGroup, gens: Iterable[int]) -> SubgroupRef:
    """Smallest subgroup of G containing the given generators."""
    gens = list(gens)
    for g in gens:
        if not (0 <= g < G.order):
            raise ValueError(f"generator index {g} out of range")
    closure = {G.identity}
    frontier = list(closure)
    while frontier:
        new: List[int] = []
        for a in frontier:
            for g in gens:
                for prod in (G.mul(a, g), G.mul(g, a)):
                    if prod not in closure:
                        closure.add(prod)
                        new.append(prod)
        frontier = new
    return SubgroupRef(G, tuple(sorted(closure)))


def left_transversal(G: FiniteGroup, H: SubgroupRef) -> List[int]:
    """Left coset representatives t_1..t_m of H in G, t_1 = identity.

    Deterministic: after the identity, representatives are chosen
    smallest-index-first.
    """
    if H.parent is not G and H.parent != G:
        raise ValueError("subgroup does not belong to this group")
    seen = [False] * G.order
    reps: List[int] = []
    order = [G.identity] + [g for g in range(G.order) if g != G.identity]
    for g in order:
        if not seen[g]:
            reps.append(g)
            for h in H.elements():
                seen[G.mul(g, h)] = True
    if len(reps) * H.order != G.order:
        raise ValueError("cosets do not partition the group")  # unreachable
    return reps


def conjugacy_classes(G: FiniteGroup) -> List[Tuple[int, ...]]:
    """Partition of element indices into conjugacy classes.

    Classes are sorted by their smallest member; each class is sorted.
    """
    unseen = set(range(G.order))
    classes: List[Tuple[int, ...]] = []
    while unseen:
        g = min(unseen)
        cls = {G.mul(G.mul(x, g), G.inv(x)) for x in range(G.order)}
        classes.append(tuple(sorted(cls)))
        unseen -= cls
    return classes


def _build(order: int, mul, identity: int, names: Sequence[str]) -> FiniteGroup:
    table = tuple(tuple(mul(a, b) for b in range(order)) for a in range(order))
    return FiniteGroup(order=order, table=table, identity=identity, names=tuple(names))


def trivial_group() -> FiniteGroup:
    return _build(1, lambda a, b: 0, 0, ["e"])


def cyclic_group(n: int) -> FiniteGroup:
    """Cyclic group of order n, element i = generator^i."""
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    names = ["e"] + [f"g{i}" if n > 2 else "g" for i in range(1, n)]
    return _build(n, lambda a, b: (a + b) % n, 0, names)


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n.

    Indices 0..n-1 are rotations s^a, indices n..2n-1 are reflections t*s^a,
    with the relation s*t = t*s^(-1).
    """
    if n < 1:
        raise ValueError(f"order parameter must be positive, got {n}")

    def mul(x: int, y: int) -> int:
        xa, xr = x % n, x >= n
        ya, yr = y % n, y >= n
        if not xr and not yr:
            return (xa + ya) % n
        if not xr and yr:
            return n + (ya - xa) % n
        if xr and not yr:
            return n + (xa + ya) % n
        return (ya - xa) % n

    names = [f"s{a}" if a > 1 else ("e" if a == 0 else "s") for a in range(n)]
    names += [f"ts{a}" if a > 0 else "t" for a in range(n)]
    return _build(2 * n, mul, 0, names)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Direct product, element index i*|H| + j for the pair (g_i, h_j)."""
    nH = H.order

    def mul(x: int, y: int) -> int:
        return G.mul(x // nH, y // nH) * nH + H.mul(x % nH, y % nH)

    names = [f"{G.name(i)}.{H.name(j)}" for i in range(G.order) for j in range(nH)]
    return _build(G.order * nH, mul, G.identity * nH + H.identity, names)
