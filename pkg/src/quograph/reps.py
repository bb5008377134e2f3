"""Complex matrix representations of finite groups.

Covers validation, characters, restriction, induction, isomorphism testing
at character level, and bases adapted to the fixed subspace of a subgroup.
All arithmetic is floating complex; tolerances are explicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .groups import FiniteGroup, GroupLike, SubgroupRef, left_transversal, parent_of

__all__ = [
    "Representation",
    "Character",
    "AdaptedBasis",
    "RepReport",
    "validate_rep",
    "character",
    "char_inner_product",
    "restrict",
    "induce",
    "is_isomorphic",
    "adapted_basis",
    "matrix_in_bases",
    "trivial_rep",
    "one_dim_rep",
    "regular_rep",
    "coset_permutation_rep",
    "direct_sum",
    "conjugate_rep",
]


@dataclass(frozen=True, eq=False)
class Representation:
    """Per-element complex d x d matrices over a group or subgroup."""

    group: GroupLike
    dim: int
    matrices: Dict[int, np.ndarray]

    def __post_init__(self) -> None:
        elems = set(self.group.elements())
        given = set(self.matrices.keys())
        if given != elems:
            raise ValueError(
                f"matrices must cover exactly the {len(elems)} group elements, got {len(given)}"
            )
        mats = {}
        for g, m in self.matrices.items():
            m = np.asarray(m, dtype=complex)
            if m.shape != (self.dim, self.dim):
                raise ValueError(
                    f"matrix for element {g} has shape {m.shape}, expected {(self.dim, self.dim)}"
                )
            mats[g] = m
        object.__setattr__(self, "matrices", mats)

    def mat(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def elements(self) -> Tuple[int, ...]:
        return tuple(self.group.elements())


@dataclass(frozen=True)
class Character:
    """A class function given by per-element values."""

    group: GroupLike
    values: Tuple[complex, ...]  # aligned with group.elements()

    def value(self, g: int) -> complex:
        return self.values[self.group.elements().index(g)]

    def as_dict(self) -> Dict[int, complex]:
        return dict(zip(self.group.elements(), self.values))


@dataclass(frozen=True, eq=False)
class AdaptedBasis:
    """Basis whose first fixed_dim columns span the subgroup-fixed subspace.

    The remaining columns lie in the kernel of the averaging projector.
    """

    rep: Representation
    subgroup: SubgroupRef
    C: np.ndarray
    fixed_dim: int


@dataclass(frozen=True)
class RepReport:
    ok: bool
    max_deviation: float
    worst_pair: Optional[Tuple[int, int]]


def _same_group(a: GroupLike, b: GroupLike) -> bool:
    if a is b:
        return True
    pa, pb = parent_of(a), parent_of(b)
    if pa != pb:
        return False
    return tuple(a.elements()) == tuple(b.elements())


def validate_rep(rep: Representation, tol: float = 1e-10) -> RepReport:
    """Check the identity and homomorphism laws up to tol."""
    elems = rep.elements()
    dev = float(np.max(np.abs(rep.mat(rep.group.identity) - np.eye(rep.dim))))
    worst: Optional[Tuple[int, int]] = None
    for a in elems:
        ma = rep.mat(a)
        for b in elems:
            d = float(np.max(np.abs(ma @ rep.mat(b) - rep.mat(rep.group.mul(a, b)))))
            if d > dev:
                dev = d
                worst = (a, b)
    return RepReport(ok=dev <= tol, max_deviation=dev, worst_pair=worst)


def character(rep: Representation) -> Character:
    return Character(
        group=rep.group,
        values=tuple(complex(np.trace(rep.mat(g))) for g in rep.elements()),
    )


def char_inner_product(a: Character, b: Character) -> complex:
    """(1/|G|) sum_g conj(a(g)) b(g) over the common group."""
    if not _same_group(a.group, b.group):
        raise ValueError("characters live on different groups")
    n = len(a.values)
    return sum(np.conj(x) * y for x, y in zip(a.values, b.values)) / n


def restrict(rep: Representation, H: SubgroupRef) -> Representation:
    """The same matrices, viewed as a representation of the subgroup H."""
    have = set(rep.elements())
    if parent_of(rep.group) != H.parent or not set(H.elements()) <= have:
        raise ValueError("H is not a subgroup of the representation's group")
    return Representation(
        group=H, dim=rep.dim, matrices={h: rep.mat(h) for h in H.elements()}
    )


def induce(rep: Representation, G: FiniteGroup) -> Representation:
    """Induced representation of G, realized blockwise over a left transversal.

    Block (i, j) of the induced matrix of g is rep(t_i^-1 g t_j) when that
    product lands in the subgroup, else zero.
    """
    H = rep.group
    if isinstance(H, FiniteGroup):
        if H != G:
            raise ValueError("a full-group representation can only be induced to itself")
        H = SubgroupRef(G, tuple(range(G.order)))
    if H.parent != G:
        raise ValueError("representation's subgroup does not sit inside G")
    ts = left_transversal(G, H)
    m, d = len(ts), rep.dim
    members = set(H.elements())
    mats: Dict[int, np.ndarray] = {}
    for g in range(G.order):
        M = np.zeros((m * d, m * d), dtype=complex)
        for i, ti in enumerate(ts):
            for j, tj in enumerate(ts):
                x = G.mul(G.mul(G.inv(ti), g), tj)
                if x in members:
                    M[i * d : (i + 1) * d, j * d : (j + 1) * d] = rep.mat(x)
        mats[g] = M
    return Representation(group=G, dim=m * d, matrices=mats)


def is_isomorphic(a: Representation, b: Representation, tol: float = 1e-8) -> bool:
    """Character equality element-wise, a valid criterion over the complex field."""
    if not _same_group(a.group, b.group):
        raise ValueError("representations live on different groups")
    ca, cb = character(a), character(b)
    return max(abs(x - y) for x, y in zip(ca.values, cb.values)) <= tol


def adapted_basis(rep: Representation, H: SubgroupRef, tol: float = 1e-9) -> AdaptedBasis:
    """Basis splitting the space into the H-fixed subspace and its complement.

    Computes the averaging projector P = (1/|H|) sum_h rep(h); the first
    fixed_dim = rank(P) columns are an orthonormal basis of im(P), the rest an
    orthonormal basis of ker(P).  Rank is cut at tol * sigma_max.
    """
    have = set(rep.elements())
    if parent_of(rep.group) != H.parent or not set(H.elements()) <= have:
        raise ValueError("H is not a subgroup of the representation's group")
    d = rep.dim
    P = sum(rep.mat(h) for h in H.elements()) / H.order
    if float(np.max(np.abs(P @ P - P))) > 1e-8 * max(1.0, float(np.max(np.abs(P)))):
        raise ValueError("averaging operator is not idempotent; representation invalid")
    U, s, vh = np.linalg.svd(P)
    smax = s[0] if s.size else 0.0
    r = int(np.sum(s >= tol * smax)) if smax > 0 else 0
    C = np.hstack([U[:, :r], vh[r:].conj().T]) if 0 < r < d else (
        U[:, :r] if r == d else vh.conj().T
    )
    return AdaptedBasis(rep=rep, subgroup=H, C=C, fixed_dim=r)


BasisLike = Union[AdaptedBasis, np.ndarray, None]


def _basis_matrix(basis: BasisLike, dim: int) -> np.ndarray:
    if basis is None:
        return np.eye(dim, dtype=complex)
    if isinstance(basis, AdaptedBasis):
        return basis.C
    return np.asarray(basis, dtype=complex)


def matrix_in_bases(rep: Representation, g: int, frm: BasisLike, to: BasisLike) -> np.ndarray:
    """C_to^-1 rep(g) C_frm: coordinates in `frm` of r to coordinates in `to` of g r."""
    Cf = _basis_matrix(frm, rep.dim)
    Ct = _basis_matrix(to, rep.dim)
    try:
        return np.linalg.solve(Ct, rep.mat(g) @ Cf)
    except np.linalg.LinAlgError as exc:
        raise ValueError("singular basis matrix") from exc


# ---------------------------------------------------------------------------
# Constructors used by examples and tests.


def trivial_rep(group: GroupLike, dim: int = 1) -> Representation:
    eye = np.eye(dim, dtype=complex)
    return Representation(group=group, dim=dim, matrices={g: eye for g in group.elements()})


def one_dim_rep(group: GroupLike, values: Dict[int, complex]) -> Representation:
    rep = Representation(
        group=group,
        dim=1,
        matrices={g: np.array([[values[g]]], dtype=complex) for g in group.elements()},
    )
    report = validate_rep(rep)
    if not report.ok:
        raise ValueError(
            f"values are not multiplicative (deviation {report.max_deviation:.2e} "
            f"at pair {report.worst_pair})"
        )
    return rep


def regular_rep(G: FiniteGroup) -> Representation:
    """Left regular representation by permutation matrices."""
    n = G.order
    mats: Dict[int, np.ndarray] = {}
    for g in range(n):
        M = np.zeros((n, n), dtype=complex)
        for h in range(n):
            M[G.mul(g, h), h] = 1.0
        mats[g] = M
    return Representation(group=G, dim=n, matrices=mats)


def coset_permutation_rep(G: FiniteGroup, H: SubgroupRef) -> Representation:
    """Permutation representation of G on the left cosets of H."""
    ts = left_transversal(G, H)
    members = set(H.elements())
    coset_of: Dict[int, int] = {}
    for i, t in enumerate(ts):
        for h in H.elements():
            coset_of[G.mul(t, h)] = i
    m = len(ts)
    mats: Dict[int, np.ndarray] = {}
    for g in range(G.order):
        M = np.zeros((m, m), dtype=complex)
        for j, t in enumerate(ts):
            M[coset_of[G.mul(g, t)], j] = 1.0
        mats[g] = M
    return Representation(group=G, dim=m, matrices=mats)


def direct_sum(a: Representation, b: Representation) -> Representation:
    if not _same_group(a.group, b.group):
        raise ValueError("representations live on different groups")
    d = a.dim + b.dim
    mats: Dict[int, np.ndarray] = {}
    for g in a.elements():
        M = np.zeros((d, d), dtype=complex)
        M[: a.dim, : a.dim] = a.mat(g)
        M[a.dim :, a.dim :] = b.mat(g)
        mats[g] = M
    return Representation(group=a.group, dim=d, matrices=mats)


def conjugate_rep(rep: Representation, M: np.ndarray) -> Representation:
    """The equivalent representation M^-1 rep(g) M."""
    M = np.asarray(M, dtype=complex)
    Minv = np.linalg.inv(M)
    return Representation(
        group=rep.group,
        dim=rep.dim,
        matrices={g: Minv @ rep.mat(g) @ M for g in rep.elements()},
    )
