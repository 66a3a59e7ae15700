"""Dagger biproducts in both backends and the algebra on a direct sum.

Summands are laid out by offset: the ``k``-th summand occupies indices
``[offset_k, offset_k + size_k)``.  Morphisms between sums are assembled from
injections and projections with the backend's addition (matrix sum in
FHilb, union in Rel), so one code path serves both backends.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .frobenius import FrobeniusAlgebra, is_normal
from .monoidal import Backend, Morphism, backend_of, get_backend
from .rel import REL, FinSet

__all__ = [
    "SumObject",
    "dsum_objects",
    "dsum_morphisms",
    "injection",
    "projection",
    "diagonal",
    "codiagonal",
    "biproduct_add",
    "zero_algebra",
    "oplus_algebra",
    "oplus_all",
    "structural_morphisms",
    "dual_of_sum",
    "distributivity_iso",
]


def _size(obj) -> int:
    return obj.size if isinstance(obj, FinSet) else int(obj)


@dataclass(frozen=True)
class SumObject:
    """Ordered direct sum of backend objects."""

    summands: Tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(_size(s) for s in self.summands)
        if any(s < 0 for s in sizes):
            raise ValueError("summand sizes must be non-negative")
        object.__setattr__(self, "summands", sizes)

    @property
    def total(self) -> int:
        return sum(self.summands)

    @property
    def offsets(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in np.cumsum((0,) + self.summands[:-1])) if self.summands else ()

    def slice(self, k: int) -> slice:
        start = self.offsets[k]
        return slice(start, start + self.summands[k])

    def to_dict(self) -> dict:
        return {"summands": list(self.summands)}


def dsum_objects(*objs) -> SumObject:
    return SumObject(tuple(objs))


def injection(backend, sizes: Sequence[int], k: int) -> Morphism:
    """``i_k : X_k -> X_0 (+) ... (+) X_{n-1}``."""
    s = SumObject(tuple(sizes))
    m = np.zeros((s.total, s.summands[k]), dtype=np.int8)
    m[s.slice(k), :] = np.eye(s.summands[k], dtype=np.int8)
    return get_backend(backend).from_array(m)


def projection(backend, sizes: Sequence[int], k: int) -> Morphism:
    """``p_k = i_k^†``."""
    return injection(backend, sizes, k).dagger()


def _sum(backend: Backend, terms: List[Morphism], src: int, dst: int) -> Morphism:
    return reduce(lambda f, g: f + g, terms, backend.zero(src, dst))


def dsum_morphisms(*fs: Morphism) -> Morphism:
    """Block-diagonal ``f_0 (+) f_1 (+) ...``."""
    b = backend_of(fs[0])
    srcs = [f.shape[1] for f in fs]
    dsts = [f.shape[0] for f in fs]
    terms = [injection(b, dsts, k) @ f @ projection(b, srcs, k) for k, f in enumerate(fs)]
    return _sum(b, terms, sum(srcs), sum(dsts))


def diagonal(backend, n: int) -> Morphism:
    """``<id, id> : A -> A (+) A``."""
    b = get_backend(backend)
    return injection(b, [n, n], 0) + injection(b, [n, n], 1)


def codiagonal(backend, n: int) -> Morphism:
    """``[id, id] : A (+) A -> A``."""
    return diagonal(backend, n).dagger()


def biproduct_add(f: Morphism, g: Morphism) -> Morphism:
    """``[id, id] ∘ (f (+) g) ∘ <id, id>``, computed without the backend's ``+``."""
    if f.shape != g.shape:
        raise ValueError("summands must have the same type")
    b = backend_of(f)
    return codiagonal(b, f.shape[0]) @ dsum_morphisms(f, g) @ diagonal(b, f.shape[1])


def zero_algebra(backend="fhilb") -> FrobeniusAlgebra:
    """The unique algebra on the zero object; every structure map is empty."""
    b = get_backend(backend)
    return FrobeniusAlgebra(b.zero(0, 0), b.zero(1, 0), b.zero(0, 0), FinSet(0) if b is REL else 0)


def oplus_algebra(alg_a: FrobeniusAlgebra, alg_b: FrobeniusAlgebra, tol=None) -> FrobeniusAlgebra:
    """Componentwise algebra on ``A (+) B``; both inputs must be normal."""
    b = alg_a.backend
    if alg_b.backend is not b:
        raise ValueError("algebras live in different backends")
    if not (is_normal(alg_a, tol) and is_normal(alg_b, tol)):
        raise ValueError("direct sums need normal algebras; normalise first")
    sizes = [alg_a.dim, alg_b.dim]
    n = sum(sizes)
    terms_m, terms_u = [], []
    for k, alg in enumerate((alg_a, alg_b)):
        i, p = injection(b, sizes, k), projection(b, sizes, k)
        terms_m.append(i @ alg.mult @ p.tensor(p))
        terms_u.append(i @ alg.unit)
    mult = _sum(b, terms_m, n * n, n)
    unit = _sum(b, terms_u, 1, n)
    if b is REL:
        la, lb = alg_a.carrier.labels, alg_b.carrier.labels
        labels = None
        if la is not None or lb is not None:
            labels = [f"0:{alg_a.carrier.label(x)}" for x in range(alg_a.dim)]
            labels += [f"1:{alg_b.carrier.label(x)}" for x in range(alg_b.dim)]
        carrier = FinSet(n, labels)
    else:
        carrier = n
    return FrobeniusAlgebra(mult, unit, b.identity(n), carrier)


def oplus_all(algs: Sequence[FrobeniusAlgebra], tol=None) -> FrobeniusAlgebra:
    """Left fold of :func:`oplus_algebra`; the empty sum is the zero algebra."""
    if not algs:
        return zero_algebra()
    return reduce(lambda a, b: oplus_algebra(a, b, tol), algs)


def structural_morphisms(alg_a: FrobeniusAlgebra, alg_b: Optional[FrobeniusAlgebra] = None, tol=None) -> Dict[str, tuple]:
    """Structural maps of the biproduct as ``name -> (morphism, source, target)``.

    Always includes ``zero : A -> 0``, ``inj : A -> A (+) 0``,
    ``proj : A (+) 0 -> A`` and ``diag : A -> A (+) A``; with ``alg_b`` also
    the injections into and projections out of ``A (+) B``.
    """
    b = alg_a.backend
    n = alg_a.dim
    zero = zero_algebra(b)
    a0 = oplus_algebra(alg_a, zero, tol)
    aa = oplus_algebra(alg_a, alg_a, tol)
    out = {
        "zero": (b.zero(n, 0), alg_a, zero),
        "inj": (injection(b, [n, 0], 0), alg_a, a0),
        "proj": (projection(b, [n, 0], 0), a0, alg_a),
        "diag": (diagonal(b, n), alg_a, aa),
    }
    if alg_b is not None:
        ab = oplus_algebra(alg_a, alg_b, tol)
        sizes = [n, alg_b.dim]
        out["inj_left"] = (injection(b, sizes, 0), alg_a, ab)
        out["inj_right"] = (injection(b, sizes, 1), alg_b, ab)
        out["proj_left"] = (projection(b, sizes, 0), ab, alg_a)
        out["proj_right"] = (projection(b, sizes, 1), ab, alg_b)
    return out


def dual_of_sum(a: int, b: int, backend="fhilb") -> Tuple[Morphism, Morphism]:
    """Cup and cap of ``A (+) B`` assembled from the summands' cups and caps.

    ``eta = (i_A (x) i_A) eta_A + (i_B (x) i_B) eta_B`` and ``epsilon = eta^†``.
    """
    bk = get_backend(backend)
    a, b = _size(a), _size(b)
    sizes = [a, b]
    n = a + b
    terms = []
    for k, s in enumerate(sizes):
        i = injection(bk, sizes, k)
        terms.append(i.tensor(i) @ bk.cup(s))
    unit = _sum(bk, terms, 1, n * n)
    return unit, unit.dagger()


def distributivity_iso(a: int, b: int, c: int, d: int, backend="fhilb") -> Tuple[Morphism, Morphism]:
    """``(A (+) B) (x) (C (+) D) -> AC (+) AD (+) BC (+) BD`` and its inverse."""
    bk = get_backend(backend)
    left, right = [a, b], [c, d]
    blocks = [x * y for x in left for y in right]
    src = (a + b) * (c + d)
    fwd_terms, bwd_terms = [], []
    for k, (x, y) in enumerate((x, y) for x in range(2) for y in range(2)):
        cross = projection(bk, left, x).tensor(projection(bk, right, y))
        fwd_terms.append(injection(bk, blocks, k) @ cross)
        bwd_terms.append(cross.dagger() @ projection(bk, blocks, k))
    fwd = _sum(bk, fwd_terms, src, sum(blocks))
    bwd = _sum(bk, bwd_terms, sum(blocks), src)
    return fwd, bwd
