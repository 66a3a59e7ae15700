"""Completely positive maps, Frobenius algebras and idempotent splitting over Rel and FHilb."""
from .biproducts import (
    SumObject,
    biproduct_add,
    codiagonal,
    diagonal,
    distributivity_iso,
    dsum_morphisms,
    dsum_objects,
    dual_of_sum,
    injection,
    oplus_algebra,
    oplus_all,
    projection,
    structural_morphisms,
    zero_algebra,
)
from .cp import (
    CpmMorphism,
    SplitObject,
    block_expectation,
    choi_matrix,
    doubled,
    is_cp,
    is_cp_fhilb,
    is_cp_rel,
    is_cpstar_morphism,
    is_cpstar_rel_groupoid,
    is_dagger_idempotent,
    is_unital,
    kraus_to_map,
    noncontractive_projection,
    split_morphism_check,
    superoperator,
    transpose_map,
)
from .fhilb import (
    DEFAULT_TOL,
    FHILB,
    LinearMap,
    Tolerance,
    approx_equal,
    is_psd,
    mat_cap,
    mat_compose,
    mat_cup,
    mat_dagger,
    mat_id,
    mat_tensor,
    operator_norm,
)
from .frobenius import (
    FrobeniusAlgebra,
    action,
    check_all,
    check_alternative_forms,
    check_dagger_frobenius,
    check_normalisable,
    check_star_homomorphism,
    classical_structure,
    coaction,
    find_normaliser,
    involution,
    is_normal,
    normalise,
    pair_of_pants,
    tensor_algebra,
)
from .functors import (
    FImage,
    cpm_biproduct_embedding,
    cpm_embedding,
    dagger_split,
    f_image_per,
    functor_F_morphism,
    functor_F_object,
    functor_G_fhilb,
    gf_unit,
    reconstruct_morphism,
    round_trip_witnesses,
    z2_essential_image_check,
)
from .groupoids import (
    Groupoid,
    connected_groupoid,
    counterexample_R,
    discrete_groupoid,
    disjoint_union,
    enumerate_groupoids,
    enumerate_groupoids_naive,
    group_groupoid,
    groupoid_check,
    groupoid_to_algebra,
    groupoids_isomorphic,
    indiscrete_groupoid,
    nine_morphism_groupoid,
    per_counterexample,
    search_dagger_splitting,
    verify_no_dagger_splitting,
)
from .monoidal import get_backend, permutation, swap
from .rel import REL, FinSet, Relation, rel_cap, rel_compose, rel_cup, rel_dagger, rel_identity, rel_tensor
from .report import Report
from .split import (
    CpmPer,
    Per,
    cpm_per_check,
    cpm_per_is_unital,
    f_image_test,
    per_check,
    per_split,
    quotient,
    split_iso_cpm_rel,
    split_iso_rel,
)

__version__ = "0.1.0"
