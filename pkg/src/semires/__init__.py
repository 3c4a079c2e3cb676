"""semires: exact minimal semiinjective resolutions over path algebras.

Differential modules and m-periodic N-complex shaped diagrams over
finite-dimensional path algebras, with certificate-checked construction,
minimization, comparison isomorphisms and the homology/minimal-model
bijection between modules and Gorenstein-injective differential structures.
"""

from .algebra import (
    Module,
    ModuleMap,
    QuiverAlgebra,
    ext_dim,
    hom_basis,
    hom_dim,
    injective,
    injective_envelope,
    is_essential_image,
    is_injective_module,
    projective,
    projective_cover,
    simple,
    socle,
)
from .decomp import Decomposition, indecomposables, is_isomorphic
from .diagrams import (
    Diagram,
    DiagramMap,
    adjoint_of,
    coinduce,
    coinduction_embedding,
    diagram_direct_sum,
    diagram_hom_basis,
    diagram_hom_dim,
    factors_through_injectives,
    functor_E,
    functor_F,
    functor_G,
    hom_in_derived,
    hom_mod_injectives,
    hom_space,
    homology_dims,
    homology_dims_via_ext_slices,
    homology_space,
    induce,
    induce_map,
    is_exact,
    is_injective_object,
    is_weak_equivalence,
    stable_hom_dim,
    stalk,
)
from .diffmod import (
    BZHData,
    DifferentialModule,
    bzh,
    canonical_sequence,
    eta_embedding,
    from_diagram,
    homology_map,
    is_gorenstein_injective_diff,
    is_morphism,
    morphism_to_diagram_map,
    null_homotopic_classical,
    resolve_min_diff,
    rz_H,
    rz_K,
    to_diagram,
)
from .errors import (
    CertificateFailure,
    DoesNotSplit,
    Inconclusive,
    InputError,
    NotFoundWithinBound,
    SemiresError,
    UnsupportedError,
)
from .fields import FieldSpec
from .generators import (
    conjugate_diagram,
    rand_exact_diagram,
    rand_graded_diagram,
    rand_module,
    rand_termwise_injective_diagram,
    standard_bases,
)
from .matrix import Matrix, kron, quotient_map, subspace_intersection
from .resolve import (
    DEFAULT_BOUND,
    CertifiedFlags,
    Resolution,
    check_weq_splits,
    comparison_iso,
    is_minimal_semiinjective,
    is_semiinjective,
    resolve_min,
    split_injective_part,
)
from .shape import Shape, trivial_algebra

__version__ = "0.1.0"

__all__ = [
    "BZHData",
    "CertificateFailure",
    "CertifiedFlags",
    "DEFAULT_BOUND",
    "Decomposition",
    "Diagram",
    "DiagramMap",
    "DifferentialModule",
    "DoesNotSplit",
    "FieldSpec",
    "Inconclusive",
    "InputError",
    "Matrix",
    "Module",
    "ModuleMap",
    "NotFoundWithinBound",
    "QuiverAlgebra",
    "Resolution",
    "SemiresError",
    "Shape",
    "UnsupportedError",
    "adjoint_of",
    "bzh",
    "canonical_sequence",
    "check_weq_splits",
    "coinduce",
    "coinduction_embedding",
    "comparison_iso",
    "conjugate_diagram",
    "diagram_direct_sum",
    "diagram_hom_basis",
    "diagram_hom_dim",
    "eta_embedding",
    "ext_dim",
    "factors_through_injectives",
    "from_diagram",
    "functor_E",
    "functor_F",
    "functor_G",
    "hom_basis",
    "hom_dim",
    "hom_in_derived",
    "hom_mod_injectives",
    "hom_space",
    "homology_dims",
    "homology_dims_via_ext_slices",
    "homology_map",
    "homology_space",
    "indecomposables",
    "induce",
    "induce_map",
    "injective",
    "injective_envelope",
    "is_essential_image",
    "is_exact",
    "is_gorenstein_injective_diff",
    "is_injective_module",
    "is_injective_object",
    "is_isomorphic",
    "is_minimal_semiinjective",
    "is_morphism",
    "is_semiinjective",
    "is_weak_equivalence",
    "kron",
    "morphism_to_diagram_map",
    "null_homotopic_classical",
    "projective",
    "projective_cover",
    "quotient_map",
    "rand_exact_diagram",
    "rand_graded_diagram",
    "rand_module",
    "rand_termwise_injective_diagram",
    "resolve_min",
    "resolve_min_diff",
    "rz_H",
    "rz_K",
    "simple",
    "socle",
    "split_injective_part",
    "stable_hom_dim",
    "stalk",
    "standard_bases",
    "subspace_intersection",
    "to_diagram",
    "trivial_algebra",
]
