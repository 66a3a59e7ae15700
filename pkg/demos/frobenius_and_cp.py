"""
Frobenius algebras and completely positive maps
================================================

Groupoids become Frobenius algebras in Rel, matrix algebras become
Frobenius algebras in FHilb, and complete positivity of a morphism is
decided on its doubled form.
"""
import numpy as np

from cpstar import (
    check_all,
    choi_matrix,
    group_groupoid,
    groupoid_to_algebra,
    is_cp_fhilb,
    is_cpstar_morphism,
    normalise,
    pair_of_pants,
    transpose_map,
)
from cpstar.fhilb import LinearMap

# The cyclic group of order two, seen as a one-object groupoid
z2 = groupoid_to_algebra(group_groupoid("Z2"))
print(check_all(z2).format())

# M_2 as the pair-of-pants algebra needs the normaliser 2^(-1/2)
pants = pair_of_pants(2, "fhilb")
print("normaliser diagonal:", np.round(np.diag(pants.normaliser.array).real, 6))
normal, _ = normalise(pants)

# Choi matrices: the identity channel is CP, the transpose map is not
print("Choi spectrum of transpose:", np.round(np.linalg.eigvalsh(choi_matrix(transpose_map(2))), 6))
print("transpose is CP:", is_cp_fhilb(transpose_map(2)))

# Conjugation by a unitary is a CP* morphism of M_2
theta = 0.3
u = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
print("unitary conjugation is CP*:", is_cpstar_morphism(LinearMap(np.kron(u, u.conj())), normal, normal))
print("transpose is CP*:", is_cpstar_morphism(transpose_map(2), normal, normal))
