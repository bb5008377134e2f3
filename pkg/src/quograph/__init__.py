"""Quotient quantum graphs: metric graphs with group symmetry, the quotient
construction attached to a representation, and a secular-equation spectral
solver for checking isospectrality numerically.
"""

from .groups import (
    FiniteGroup,
    SubgroupRef,
    cyclic_group,
    dihedral_group,
    direct_product,
    left_transversal,
    parent_of,
    subgroup_generate,
    trivial_group,
)
from .reps import (
    AdaptedBasis,
    Character,
    Representation,
    adapted_basis,
    char_inner_product,
    character,
    direct_sum,
    induce,
    is_isomorphic,
    one_dim_rep,
    regular_rep,
    restrict,
    trivial_rep,
    validate_rep,
)
from .graphs import (
    EdgeRecord,
    QuantumGraph,
    VertexRecord,
    is_exact,
    is_self_adjoint,
    standard_condition,
    standard_vertex,
    subdivide_edge,
)
from .actions import (
    ElementMap,
    GraphAction,
    Orbit,
    OrbitData,
    choose_representatives,
    insert_dummies,
    orbits,
    restrict_action,
    validate_action,
)
from .quotient import (
    QuotientRecipe,
    QuotientResult,
    build_quotient,
    classify,
    make_recipe,
    predicted_degree,
    split_vertices,
)
from .spectral import (
    SolverOptions,
    Spectrum,
    SpectrumReport,
    combine_spectra,
    compare_spectra,
    eigenspace_character,
    find_spectrum,
    multiplicity_at,
    rep_multiplicity,
    secular_matrix,
)
from . import examples, fileio

__version__ = "0.1.0"

__all__ = [
    "FiniteGroup",
    "SubgroupRef",
    "cyclic_group",
    "dihedral_group",
    "direct_product",
    "left_transversal",
    "parent_of",
    "subgroup_generate",
    "trivial_group",
    "AdaptedBasis",
    "Character",
    "Representation",
    "adapted_basis",
    "char_inner_product",
    "character",
    "direct_sum",
    "induce",
    "is_isomorphic",
    "one_dim_rep",
    "regular_rep",
    "restrict",
    "trivial_rep",
    "validate_rep",
    "EdgeRecord",
    "QuantumGraph",
    "VertexRecord",
    "is_exact",
    "is_self_adjoint",
    "standard_condition",
    "standard_vertex",
    "subdivide_edge",
    "ElementMap",
    "GraphAction",
    "Orbit",
    "OrbitData",
    "choose_representatives",
    "insert_dummies",
    "orbits",
    "restrict_action",
    "validate_action",
    "QuotientRecipe",
    "QuotientResult",
    "build_quotient",
    "classify",
    "make_recipe",
    "predicted_degree",
    "split_vertices",
    "SolverOptions",
    "Spectrum",
    "SpectrumReport",
    "combine_spectra",
    "compare_spectra",
    "eigenspace_character",
    "find_spectrum",
    "multiplicity_at",
    "rep_multiplicity",
    "secular_matrix",
    "examples",
    "fileio",
    "__version__",
]
