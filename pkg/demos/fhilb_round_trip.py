"""
From unital CP projections to algebras and back
===============================================

A unital completely positive projection on M_m has a range that is again
an algebra under (a, b) -> p(ab).  Sending that algebra back to its
projection recovers p up to the two witnesses f and g.
"""
import numpy as np

from cpstar import block_expectation, gf_unit, noncontractive_projection, normalise, pair_of_pants, round_trip_witnesses
from cpstar.fhilb import operator_norm

for sizes in ([2], [1, 1], [2, 1]):
    rt = round_trip_witnesses(block_expectation(sizes))
    r1, r2 = rt.residuals()
    print(f"blocks {sizes}: range dimension {rt.algebra.dim}, |g f - p| = {r1:.1e}, |f g - F(G(p))| = {r2:.1e}")

# Starting from an algebra instead, the comparison map is unitary
u, _ = gf_unit(normalise(pair_of_pants(2, "fhilb"))[0])
print("U U^dagger = 1:", np.allclose(u.array @ u.array.conj().T, np.eye(4)))

# A CP projection need not be unital, and then it can enlarge the unit
p = noncontractive_projection()
one = (p.array @ np.eye(2).reshape(-1)).reshape(2, 2)
print("p(1) =", np.round(one.real, 6).tolist(), "with norm", round(operator_norm(one), 6))
