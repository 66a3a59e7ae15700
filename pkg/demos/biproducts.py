"""
Direct sums of algebras
=======================

Normal algebras add componentwise, and the injections, projections and
diagonals of the sum are *-homomorphisms.  In Rel the cyclic group Z2 is
not isomorphic to any sum of indiscrete groupoids.
"""
from cpstar import (
    check_star_homomorphism,
    classical_structure,
    cpm_biproduct_embedding,
    group_groupoid,
    groupoid_to_algebra,
    oplus_algebra,
    structural_morphisms,
    z2_essential_image_check,
)

c2, c1 = classical_structure(2, "fhilb"), classical_structure(1, "fhilb")
s = oplus_algebra(c2, c1)
print("C^2 (+) C^1 has dimension", s.dim)

z2 = groupoid_to_algebra(group_groupoid("Z2"))
for name, (f, src, dst) in structural_morphisms(z2, z2).items():
    print(f"{name:>10}: *-homomorphism {check_star_homomorphism(f, src, dst)}")

emb = cpm_biproduct_embedding([2, 1], "fhilb")
print("M_2 (+) C as an algebra of dimension", emb.dim)
print("Z2 outside the image of CPM with sums:", z2_essential_image_check())
