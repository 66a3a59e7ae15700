"""Complete positivity in both backends, CP* morphisms and dagger idempotents.

A CPM morphism ``A -> B`` is a morphism ``A* (x) A -> B* (x) B``.  In FHilb a
vector of ``A* (x) A`` is read as an ``a x a`` matrix in row-major order, so the
cup is the identity matrix and the pair-of-pants product is matrix
multiplication.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .fhilb import LinearMap, is_psd
from .frobenius import FrobeniusAlgebra, action, coaction
from .monoidal import Morphism, backend_of, permutation
from .rel import REL, Relation, decode_pair, encode_pair

__all__ = [
    "CpmMorphism",
    "SplitObject",
    "choi_matrix",
    "is_cp_fhilb",
    "is_cp_rel",
    "is_cp",
    "kraus_to_map",
    "cp_closure_rel",
    "doubled",
    "is_cpstar_morphism",
    "is_cpstar_rel_groupoid",
    "is_unital",
    "is_dagger_idempotent",
    "split_morphism_check",
    "superoperator",
    "block_expectation",
    "transpose_map",
    "noncontractive_projection",
    "noncontractive_data",
]


def _square_root(n: int) -> int:
    r = math.isqrt(n)
    if r * r != n:
        raise ValueError(f"{n} is not a square dimension")
    return r


def _dims(h: Morphism, a: Optional[int], b: Optional[int]):
    a = _square_root(h.shape[1]) if a is None else int(a)
    b = _square_root(h.shape[0]) if b is None else int(b)
    if h.shape != (b * b, a * a):
        raise ValueError(f"map of shape {h.shape} is not {a}*{a} -> {b}*{b}")
    return a, b


def choi_matrix(h: LinearMap, a: int = None, b: int = None) -> np.ndarray:
    """``sum_ij h(E_ij) (x) E_ij`` as a ``(b a) x (b a)`` array."""
    a, b = _dims(h, a, b)
    t = h.array.reshape(b, b, a, a)
    return t.transpose(0, 2, 1, 3).reshape(b * a, b * a)


def is_cp_fhilb(h: LinearMap, a: int = None, b: int = None, tol=None) -> bool:
    """Choi positivity of ``h : A* (x) A -> B* (x) B``."""
    return is_psd(choi_matrix(h, a, b), tol)


def is_cp_rel(r: Relation, a: int = None, b: int = None) -> bool:
    """``(x,x') R (y,y')`` implies ``(x',x) R (y',y)`` and ``(x,x) R (y,y)``."""
    a, b = _dims(r, a, b)
    for i, j in r.pairs:
        x, x2 = decode_pair(i, a)
        y, y2 = decode_pair(j, b)
        if (encode_pair(x2, x, a), encode_pair(y2, y, b)) not in r:
            return False
        if (encode_pair(x, x, a), encode_pair(y, y, b)) not in r:
            return False
    return True


def is_cp(h: Morphism, a: int = None, b: int = None, tol=None) -> bool:
    if backend_of(h) is REL:
        return is_cp_rel(h, a, b)
    return is_cp_fhilb(h, a, b, tol)


def cp_closure_rel(r: Relation, a: int = None, b: int = None) -> Relation:
    """Smallest relation containing ``r`` that satisfies the Rel CP condition."""
    a, b = _dims(r, a, b)
    pairs = set(r.pairs)
    for i, j in r.pairs:
        x, x2 = decode_pair(i, a)
        y, y2 = decode_pair(j, b)
        pairs.add((encode_pair(x2, x, a), encode_pair(y2, y, b)))
        pairs.add((encode_pair(x, x, a), encode_pair(y, y, b)))
        pairs.add((encode_pair(x2, x2, a), encode_pair(y2, y2, b)))
    return Relation(r.src, r.dst, pairs)


def kraus_to_map(g: Morphism, b: int) -> Morphism:
    """Doubled map ``A* (x) A -> B* (x) B`` of ``g : A -> C (x) B``.

    ``g_* (x) g`` followed by a cap on the two ``C`` wires; CP by construction
    in either backend.  In FHilb this is ``x -> sum_c conj(K_c) x K_c^T`` with
    Kraus operators ``K_c = g[c*b:(c+1)*b, :]``.
    """
    backend = backend_of(g)
    if g.shape[0] % b:
        raise ValueError(f"codomain size {g.shape[0]} is not a multiple of {b}")
    c = g.shape[0] // b
    doubled_ = g.conj().tensor(g)
    # C (x) B (x) C (x) B  ->  B (x) C (x) C (x) B
    shuffle = permutation(backend, [c, b, c, b], [1, 0, 2, 3])
    contract = backend.identity(b).tensor(backend.cap(c)).tensor(backend.identity(b))
    return contract @ shuffle @ doubled_


def doubled(f: Morphism, alg_a: FrobeniusAlgebra, alg_b: FrobeniusAlgebra) -> Morphism:
    """``action_B ∘ f ∘ coaction_A : A* (x) A -> B* (x) B``."""
    if f.shape != (alg_b.dim, alg_a.dim):
        raise ValueError(f"morphism {f.shape[1]} -> {f.shape[0]} does not fit {alg_a.dim} -> {alg_b.dim}")
    return action(alg_b) @ f @ coaction(alg_a)


def is_cpstar_morphism(f: Morphism, alg_a: FrobeniusAlgebra, alg_b: FrobeniusAlgebra, tol=None) -> bool:
    return is_cp(doubled(f, alg_a, alg_b), alg_a.dim, alg_b.dim, tol)


def is_cpstar_rel_groupoid(r: Relation, g, h) -> bool:
    """``x R y`` implies ``x^-1 R y^-1`` and ``id_dom(x) R id_dom(y)``.

    ``g`` and ``h`` are groupoids; ``r`` relates their morphism sets.
    """
    if r.shape != (h.n_morphisms, g.n_morphisms):
        raise ValueError("relation is not typed on the morphism sets")
    for x, y in r.pairs:
        if (g.inv[x], h.inv[y]) not in r:
            return False
        if (g.ids[g.dom[x]], h.ids[h.dom[y]]) not in r:
            return False
    return True


def is_unital(h: Morphism, a: int = None, b: int = None, tol=None) -> bool:
    """``h ∘ cup_A = cup_B``; in FHilb this says ``h(1) = 1``."""
    a, b = _dims(h, a, b)
    backend = backend_of(h)
    return backend.equal(h @ backend.cup(a), backend.cup(b), tol)


def is_dagger_idempotent(p: Morphism, tol=None) -> bool:
    if p.shape[0] != p.shape[1]:
        return False
    backend = backend_of(p)
    return backend.equal(p.dagger(), p, tol) and backend.equal(p @ p, p, tol)


def split_morphism_check(f: Morphism, p: Morphism, q: Morphism, tol=None) -> bool:
    """``f = q ∘ f ∘ p``."""
    if f.shape != (q.shape[0], p.shape[1]):
        raise ValueError("morphism does not fit between the idempotents")
    return backend_of(f).equal(q @ f @ p, f, tol)


@dataclass(frozen=True)
class CpmMorphism:
    """A CP map ``A* (x) A -> B* (x) B`` together with its objects."""

    src: int
    dst: int
    map: Morphism

    def __post_init__(self):
        _dims(self.map, self.src, self.dst)

    def is_cp(self, tol=None) -> bool:
        return is_cp(self.map, self.src, self.dst, tol)

    def is_unital(self, tol=None) -> bool:
        return is_unital(self.map, self.src, self.dst, tol)


@dataclass(frozen=True)
class SplitObject:
    """An object ``(A, p)`` of the dagger-idempotent splitting of CPM."""

    carrier: int
    projection: Morphism

    def __post_init__(self):
        _dims(self.projection, self.carrier, self.carrier)

    def check(self, tol=None) -> bool:
        return is_dagger_idempotent(self.projection, tol) and is_cp(self.projection, self.carrier, self.carrier, tol)

    def is_unital(self, tol=None) -> bool:
        return is_unital(self.projection, self.carrier, self.carrier, tol)


def superoperator(fn: Callable[[np.ndarray], np.ndarray], n: int, m: int = None) -> LinearMap:
    """Matrix of a linear map ``M_n -> M_m`` given as a function on arrays."""
    m = n if m is None else m
    cols = []
    for k in range(n * n):
        e = np.zeros(n * n, dtype=complex)
        e[k] = 1
        out = np.asarray(fn(e.reshape(n, n)), dtype=complex)
        if out.shape != (m, m):
            raise ValueError(f"function returned shape {out.shape}, expected {(m, m)}")
        cols.append(out.reshape(-1))
    return LinearMap(np.stack(cols, axis=1))


def block_expectation(sizes: Sequence[int]) -> LinearMap:
    """Conditional expectation of ``M_n`` onto block-diagonal matrices.

    ``[n]`` gives the identity, ``[1] * n`` the diagonal expectation.
    """
    labels = np.repeat(np.arange(len(sizes)), sizes)
    mask = (labels[:, None] == labels[None, :]).astype(complex)
    return LinearMap(np.diag(mask.reshape(-1)))


def transpose_map(n: int) -> LinearMap:
    return superoperator(lambda x: x.T, n)


def noncontractive_data():
    """``(a, rho)`` with ``a = diag(1/2 + sqrt(2)/2, 1/2)`` and ``rho = a / Tr(a)``."""
    a = np.diag([0.5 + math.sqrt(2) / 2, 0.5]).astype(complex)
    return a, a / np.trace(a)


def noncontractive_projection() -> LinearMap:
    """``p(x) = Tr(rho x) a`` on ``M_2``: a CP dagger idempotent with ``||p(1)|| > 1``."""
    a, rho = noncontractive_data()
    # Tr(rho x) = vec(rho^T) . vec(x) in the row-major encoding
    return LinearMap(np.outer(a.reshape(-1), rho.T.reshape(-1)))
