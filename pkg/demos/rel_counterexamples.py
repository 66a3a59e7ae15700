"""
Two exhaustive searches in Rel
==============================

First: on the indiscrete groupoid with three objects, the relation keeping
every morphism except one arrow and its inverse is a dagger idempotent of
CP*[Rel] with no dagger splitting.  Second: a unital CPM partial
equivalence relation on a three-element set is not the image of any
groupoid.
"""
import time

from cpstar import (
    cpm_per_is_unital,
    counterexample_R,
    enumerate_groupoids,
    f_image_test,
    nine_morphism_groupoid,
    per_counterexample,
    quotient,
    search_dagger_splitting,
)

g = nine_morphism_groupoid()
r = counterexample_R()
print("kept morphisms:", [g.labels[x] for x, _ in r.sorted_pairs()])

start = time.perf_counter()
res = search_dagger_splitting(r, g, exhaustive=True)
print(f"splitting found: {res.found}; {res.candidates} bijections over {res.groupoids} groupoids "
      f"in {time.perf_counter() - start:.2f} s")

c = per_counterexample()
classes = [divmod(cls[0], c.x_size) for cls in quotient(c)]
print("classes of the CPM PER:", classes)
print("unital:", cpm_per_is_unital(c))
hits = [h.name for h in enumerate_groupoids(len(classes)) if f_image_test(c, h, exhaustive=True) is not None]
print("groupoids whose image matches:", hits or "none")
