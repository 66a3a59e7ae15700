"""From algebras to projections and back.

``F`` sends a normalisable algebra to the projection
``action ∘ z ∘ z ∘ coaction`` on ``A* (x) A`` and a CP* morphism ``f`` to
``action_B ∘ z_B ∘ f ∘ z_A ∘ coaction_A``.  In FHilb, ``G`` sends a unital
completely positive projection to its range with the product
``(a, b) -> p(ab)``.  The round-trip witnesses show ``F(G(p)) ≅ p``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .biproducts import oplus_all
from .cp import is_cp_fhilb, is_cpstar_morphism, is_cpstar_rel_groupoid, is_dagger_idempotent, is_unital
from .fhilb import FHILB, LinearMap, as_tol, mat_cup, mat_id
from .frobenius import FrobeniusAlgebra, action, check_normalisable, coaction, find_normaliser, normalise, pair_of_pants
from .groupoids import Groupoid, disjoint_union, discrete_groupoid, group_groupoid, groupoid_to_algebra, indiscrete_groupoid
from .monoidal import Morphism
from .rel import REL, Relation
from .split import CpmPer

__all__ = [
    "FImage",
    "functor_F_object",
    "functor_F_morphism",
    "reconstruct_morphism",
    "f_image_per",
    "dagger_split",
    "functor_G_fhilb",
    "RoundTrip",
    "round_trip_witnesses",
    "gf_unit",
    "cpm_embedding",
    "cpm_biproduct_embedding",
    "unitary_cpstar_isomorphisms",
    "indiscrete_unions",
    "z2_essential_image_search",
    "z2_essential_image_check",
]


@dataclass(frozen=True)
class FImage:
    algebra: FrobeniusAlgebra
    projection: Morphism

    @property
    def carrier(self) -> int:
        return self.algebra.dim


def _require_normalisable(alg: FrobeniusAlgebra, tol) -> None:
    report = check_normalisable(alg, tol)
    if not report.passed:
        raise ValueError(f"algebra is not normalisable: {report.failures()}")


def functor_F_object(alg: FrobeniusAlgebra, tol=None) -> FImage:
    _require_normalisable(alg, tol)
    z = alg.normaliser
    return FImage(alg, action(alg) @ z @ z @ coaction(alg))


def functor_F_morphism(f: Morphism, alg_a: FrobeniusAlgebra, alg_b: FrobeniusAlgebra, tol=None, check: bool = True) -> Morphism:
    if check and not is_cpstar_morphism(f, alg_a, alg_b, tol):
        raise ValueError("morphism is not completely positive between the algebras")
    return action(alg_b) @ alg_b.normaliser @ f @ alg_a.normaliser @ coaction(alg_a)


def reconstruct_morphism(h: Morphism, alg_a: FrobeniusAlgebra, alg_b: FrobeniusAlgebra) -> Morphism:
    """``z_B ∘ coaction_B ∘ h ∘ action_A ∘ z_A``, a left inverse of ``F`` on morphisms."""
    return alg_b.normaliser @ coaction(alg_b) @ h @ action(alg_a) @ alg_a.normaliser


def f_image_per(obj) -> CpmPer:
    """``F`` of a groupoid (or of a Rel algebra) as a CPM PER on its morphism set."""
    alg = groupoid_to_algebra(obj) if isinstance(obj, Groupoid) else obj
    if alg.backend is not REL:
        raise ValueError("CPM PERs live in Rel")
    return CpmPer(alg.dim, functor_F_object(alg).projection)


def dagger_split(p: LinearMap, tol=None) -> LinearMap:
    """Isometry ``V`` with ``V V^† = p`` from the eigenvectors of ``p`` at eigenvalue 1."""
    tol = as_tol(tol)
    if not is_dagger_idempotent(p, tol):
        raise ValueError("not a dagger idempotent")
    a = p.array
    w, v = np.linalg.eigh((a + a.conj().T) / 2)
    near_one = np.abs(w - 1) <= tol
    near_zero = np.abs(w) <= tol
    if not np.all(near_one | near_zero):
        raise ValueError(f"rank of the projection is ambiguous at tolerance {tol}")
    return LinearMap(v[:, near_one])


def functor_G_fhilb(p: LinearMap, tol=None) -> FrobeniusAlgebra:
    """Range of a unital CP projection on ``M_m`` with the product ``p(ab)``."""
    tol = as_tol(tol)
    m = int(round(np.sqrt(p.shape[0])))
    if p.shape != (m * m, m * m):
        raise ValueError("projection must act on a matrix algebra")
    if not is_dagger_idempotent(p, tol):
        raise ValueError("not a dagger idempotent")
    if not is_cp_fhilb(p, m, m, tol):
        raise ValueError("projection is not completely positive")
    if not is_unital(p, m, m, tol):
        raise ValueError("projection is not unital")
    v = dagger_split(p, tol)
    one = mat_id(m)
    matmul = one.tensor(FHILB.cap(m)).tensor(one)
    mult = v.dagger() @ matmul @ v.tensor(v)
    unit = v.dagger() @ mat_cup(m)
    z = find_normaliser(mult, unit, tol)
    if z is None:
        raise ValueError("range algebra is not normalisable")
    return FrobeniusAlgebra(mult, unit, z, v.shape[1])


@dataclass(frozen=True)
class RoundTrip:
    f: LinearMap
    g: LinearMap
    split: LinearMap
    algebra: FrobeniusAlgebra
    image: LinearMap
    projection: LinearMap

    def residuals(self) -> Tuple[float, float]:
        """``max|g f - p|`` and ``max|f g - F(G(p))|``."""
        r1 = float(np.max(np.abs((self.g @ self.f).array - self.projection.array)))
        r2 = float(np.max(np.abs((self.f @ self.g).array - self.image.array)))
        return r1, r2


def round_trip_witnesses(p: LinearMap, tol=None) -> RoundTrip:
    """``f = action ∘ z ∘ V^†`` and ``g = V ∘ z ∘ coaction`` for the algebra ``G(p)``.

    ``g ∘ f = p`` and ``f ∘ g = F(G(p))``, both Kraus-form CP maps.
    """
    alg = functor_G_fhilb(p, tol)
    v = dagger_split(p, tol)
    z = alg.normaliser
    f = action(alg) @ z @ v.dagger()
    g = v @ z @ coaction(alg)
    return RoundTrip(f, g, v, alg, functor_F_object(alg, tol).projection, p)


def gf_unit(alg: FrobeniusAlgebra, tol=None) -> Tuple[LinearMap, FrobeniusAlgebra]:
    """Unitary ``U : A -> G(F(A))`` for an FHilb algebra, with ``G(F(A))``."""
    normal, _ = normalise(alg, tol)
    p = functor_F_object(normal, tol).projection
    v = dagger_split(p, tol)
    gfa = functor_G_fhilb(p, tol)
    return v.dagger() @ action(normal), gfa


def cpm_embedding(obj, backend=None) -> FrobeniusAlgebra:
    """The object ``A`` of CPM seen as the pair-of-pants algebra on ``A* (x) A``."""
    return pair_of_pants(obj, backend)


def cpm_biproduct_embedding(objs: Sequence, backend=None, tol=None) -> FrobeniusAlgebra:
    """Direct sum of normalised pair-of-pants algebras."""
    return oplus_all([normalise(pair_of_pants(o, backend), tol)[0] for o in objs], tol)


def unitary_cpstar_isomorphisms(g: Groupoid, h: Groupoid) -> Tuple[List[Relation], int]:
    """Every relation ``Mor(G) -> Mor(H)`` that is unitary with both directions CP*.

    Exhaustive over all ``2^(|G| |H|)`` relations; returns the isomorphisms and
    the number of relations examined.
    """
    n, m = g.n_morphisms, h.n_morphisms
    if n * m > 16:
        raise ValueError("exhaustive relation search is limited to 16 pairs")
    cells = [(x, y) for x in range(n) for y in range(m)]
    found = []
    count = 0
    for mask in range(1 << len(cells)):
        count += 1
        r = Relation(n, m, [c for k, c in enumerate(cells) if mask >> k & 1])
        if r.dagger() @ r != REL.identity(n) or r @ r.dagger() != REL.identity(m):
            continue
        if is_cpstar_rel_groupoid(r, g, h) and is_cpstar_rel_groupoid(r.dagger(), h, g):
            found.append(r)
    return found, count


def indiscrete_unions(n: int) -> List[Groupoid]:
    """Disjoint unions of indiscrete groupoids with ``n`` morphisms in total."""
    out = []

    def rec(remaining, largest, parts):
        if remaining == 0:
            out.append(disjoint_union(*(indiscrete_groupoid(k) for k in parts)) if parts else discrete_groupoid(0))
            return
        for k in range(min(largest, int(np.sqrt(remaining))), 0, -1):
            rec(remaining - k * k, k, parts + [k])

    rec(n, n, [])
    return out


def z2_essential_image_search():
    """Compare ``Z2`` with every disjoint union of indiscrete groupoids on 2 morphisms.

    Returns a list of ``(candidate, isomorphisms, relations examined)``.
    """
    z2 = group_groupoid("Z2")
    out = []
    for h in indiscrete_unions(z2.n_morphisms):
        isos, count = unitary_cpstar_isomorphisms(z2, h)
        out.append((h, isos, count))
    return out


def z2_essential_image_check() -> bool:
    """True when ``Z2`` is not isomorphic to any algebra in the image of CPM with biproducts."""
    return all(not isos for _, isos, _ in z2_essential_image_search())
