"""Dagger Frobenius algebras over either backend.

An algebra is a carrier object ``A`` with a multiplication ``m : A (x) A -> A``,
a unit ``u : I -> A`` and a normaliser ``z : A -> A``.  Everything here is
backend generic: morphisms only need ``@``, ``tensor``, ``dagger`` and
``conj`` plus the operations of their backend.
"""
from __future__ import annotations

import math
from typing import Optional, Tuple

import numpy as np

from .fhilb import FHILB, as_tol, is_psd, min_eigenvalue, psd_power
from .monoidal import Backend, Morphism, backend_of, get_backend, permutation
from .rel import REL, FinSet
from .report import Report

__all__ = [
    "FrobeniusAlgebra",
    "check_dagger_frobenius",
    "check_normalisable",
    "check_alternative_forms",
    "check_all",
    "is_normal",
    "find_normaliser",
    "normalise",
    "action",
    "coaction",
    "trace_functional",
    "involution",
    "check_star_homomorphism",
    "pair_of_pants",
    "classical_structure",
    "tensor_algebra",
]


class FrobeniusAlgebra:
    """Carrier, multiplication, unit and normaliser (identity when omitted).

    Construction only checks that the types fit together.  Use
    :meth:`checked` to also enforce the dagger Frobenius and
    normalisability laws.
    """

    __slots__ = ("mult", "unit", "normaliser", "carrier")

    def __init__(self, mult: Morphism, unit: Morphism, normaliser: Optional[Morphism] = None, carrier=None):
        backend = backend_of(mult)
        n = mult.shape[0]
        if mult.shape != (n, n * n):
            raise ValueError(f"multiplication must be {n*n} -> {n}, got {mult.shape[1]} -> {n}")
        if backend_of(unit) is not backend or unit.shape != (n, 1):
            raise ValueError(f"unit must be I -> {n} in the same backend")
        if normaliser is None:
            normaliser = backend.identity(n)
        if backend_of(normaliser) is not backend or normaliser.shape != (n, n):
            raise ValueError(f"normaliser must be {n} -> {n} in the same backend")
        if carrier is None:
            carrier = mult.dst if backend is REL else n
        if (carrier.size if isinstance(carrier, FinSet) else int(carrier)) != n:
            raise ValueError("carrier size does not match the multiplication")
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "normaliser", normaliser)
        object.__setattr__(self, "carrier", carrier)

    def __setattr__(self, name, value):
        raise AttributeError("FrobeniusAlgebra is immutable")

    @classmethod
    def checked(cls, mult, unit, normaliser=None, carrier=None, tol=None) -> "FrobeniusAlgebra":
        alg = cls(mult, unit, normaliser, carrier)
        report = check_dagger_frobenius(alg, tol).extend(check_normalisable(alg, tol))
        if not report.passed:
            raise ValueError(f"not a normalisable dagger Frobenius algebra: {report.failures()}")
        return alg

    @property
    def backend(self) -> Backend:
        return backend_of(self.mult)

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    @property
    def comult(self) -> Morphism:
        return self.mult.dagger()

    @property
    def counit(self) -> Morphism:
        return self.unit.dagger()

    def identity(self) -> Morphism:
        return self.backend.identity(self.dim)

    def replace(self, **kw) -> "FrobeniusAlgebra":
        fields = {"mult": self.mult, "unit": self.unit, "normaliser": self.normaliser, "carrier": self.carrier}
        fields.update(kw)
        return FrobeniusAlgebra(**fields)

    def __repr__(self) -> str:
        return f"FrobeniusAlgebra({self.backend.name}, dim={self.dim})"


def _compare(report: Report, name: str, backend: Backend, lhs, rhs, tol) -> None:
    report.add(name, backend.equal(lhs, rhs, tol), backend.residual(lhs, rhs))


def check_dagger_frobenius(alg: FrobeniusAlgebra, tol=None) -> Report:
    """Associativity, unitality and both Frobenius laws."""
    b, m, u = alg.backend, alg.mult, alg.unit
    one = alg.identity()
    md = m.dagger()
    r = Report("check-frobenius")
    _compare(r, "associativity", b, m @ m.tensor(one), m @ one.tensor(m), tol)
    _compare(r, "unit_left", b, m @ u.tensor(one), one, tol)
    _compare(r, "unit_right", b, m @ one.tensor(u), one, tol)
    mdm = md @ m
    _compare(r, "frobenius_left", b, one.tensor(m) @ md.tensor(one), mdm, tol)
    _compare(r, "frobenius_right", b, m.tensor(one) @ one.tensor(md), mdm, tol)
    return r


def check_normalisable(alg: FrobeniusAlgebra, tol=None) -> Report:
    """Centrality, positivity and invertibility of ``z`` and ``m m^† z z = id``."""
    b, m, z = alg.backend, alg.mult, alg.normaliser
    one = alg.identity()
    r = Report("check-normalisable")
    _compare(r, "normaliser_central_left", b, z @ m, m @ z.tensor(one), tol)
    _compare(r, "normaliser_central_right", b, z @ m, m @ one.tensor(z), tol)
    if b is REL:
        r.add("normaliser_positive", z == one)
        r.add("normaliser_invertible", z.is_function() and z.dagger().is_function())
    else:
        tol_ = as_tol(tol)
        r.add("normaliser_positive", is_psd(z, tol_))
        r.add("normaliser_invertible", alg.dim == 0 or min_eigenvalue(z) > tol_)
    _compare(r, "normalisation", b, m @ m.dagger() @ z @ z, one, tol)
    return r


def action(alg: FrobeniusAlgebra) -> Morphism:
    """``A -> A* (x) A``: the multiplication with its left input bent up."""
    b, n = alg.backend, alg.dim
    one = alg.identity()
    return one.tensor(alg.mult) @ b.cup(n).tensor(one)


def coaction(alg: FrobeniusAlgebra) -> Morphism:
    return action(alg).dagger()


def trace_functional(alg: FrobeniusAlgebra) -> Morphism:
    """``A -> I``, the closed loop of the multiplication (trace of left multiplication)."""
    return alg.backend.cap(alg.dim) @ action(alg)


def involution(alg: FrobeniusAlgebra) -> Morphism:
    """``s : A* -> A`` built from the cap, the comultiplication and the unit."""
    b, n = alg.backend, alg.dim
    one = alg.identity()
    return b.cap(n).tensor(one) @ one.tensor(alg.comult) @ one.tensor(alg.unit)


def check_alternative_forms(alg: FrobeniusAlgebra, tol=None) -> Report:
    """Action/coaction forms of the Frobenius and normalisability equations.

    * ``action ∘ m = (id (x) m) ∘ (action (x) id)``
    * ``coaction ∘ action = (trace (x) id) ∘ m^†``
    * ``trace ∘ z ∘ z = u^†``
    * ``coaction ∘ action ∘ z ∘ z = id``
    """
    b, m, u, z = alg.backend, alg.mult, alg.unit, alg.normaliser
    one = alg.identity()
    alpha, kappa, tau = action(alg), coaction(alg), trace_functional(alg)
    r = Report("check-alternative-forms")
    _compare(r, "action_module", b, alpha @ m, one.tensor(m) @ alpha.tensor(one), tol)
    _compare(r, "coaction_action", b, kappa @ alpha, tau.tensor(one) @ m.dagger(), tol)
    _compare(r, "normalisation_trace", b, tau @ z @ z, u.dagger(), tol)
    _compare(r, "normalisation_action", b, kappa @ alpha @ z @ z, one, tol)
    return r


def check_all(alg: FrobeniusAlgebra, tol=None) -> Report:
    r = Report("check-frobenius")
    r.extend(check_dagger_frobenius(alg, tol))
    r.extend(check_normalisable(alg, tol))
    r.extend(check_alternative_forms(alg, tol))
    return r


def is_normal(alg: FrobeniusAlgebra, tol=None) -> bool:
    b = alg.backend
    one = alg.identity()
    return b.equal(alg.normaliser, one, tol) and b.equal(alg.mult @ alg.comult, one, tol)


def find_normaliser(mult: Morphism, unit: Morphism = None, tol=None) -> Optional[Morphism]:
    """The positive central ``z`` with ``m m^† z z = id``, or ``None``.

    In FHilb this is ``(m m^†)^(-1/2)``; in Rel only the identity can work.
    """
    b = backend_of(mult)
    n = mult.shape[0]
    one = b.identity(n)
    mmd = mult @ mult.dagger()
    if b is REL:
        return one if mmd == one else None
    try:
        z = psd_power(mmd, -0.5, tol)
    except ValueError:
        return None
    if not (b.equal(z @ mult, mult @ z.tensor(one), tol) and b.equal(z @ mult, mult @ one.tensor(z), tol)):
        return None
    return z


def normalise(alg: FrobeniusAlgebra, tol=None) -> Tuple[FrobeniusAlgebra, Morphism]:
    """Isomorphic normal algebra ``(z m, z^-1 u, id)`` and the identity witness."""
    report = check_normalisable(alg, tol)
    if not report.passed:
        raise ValueError(f"algebra is not normalisable: {report.failures()}")
    b = alg.backend
    z = alg.normaliser
    z_inv = b.inverse(z)
    one = alg.identity()
    out = FrobeniusAlgebra(z @ alg.mult, z_inv @ alg.unit, one, alg.carrier)
    return out, one


def check_star_homomorphism(f: Morphism, alg_a: FrobeniusAlgebra, alg_b: FrobeniusAlgebra, tol=None) -> bool:
    """``f m_A = m_B (f (x) f)`` and ``f s_A = s_B f_*``."""
    if f.shape != (alg_b.dim, alg_a.dim):
        raise ValueError(f"morphism {f.shape[1]} -> {f.shape[0]} does not fit {alg_a.dim} -> {alg_b.dim}")
    b = alg_a.backend
    mult_ok = b.equal(f @ alg_a.mult, alg_b.mult @ f.tensor(f), tol)
    inv_ok = b.equal(f @ involution(alg_a), involution(alg_b) @ f.conj(), tol)
    return mult_ok and inv_ok


def _carrier_and_backend(obj, backend):
    if isinstance(obj, FinSet):
        return obj, REL
    backend = get_backend(backend or FHILB)
    return (FinSet(int(obj)) if backend is REL else int(obj)), backend


def pair_of_pants(obj, backend=None) -> FrobeniusAlgebra:
    """Algebra on ``A* (x) A`` with multiplication ``id (x) cap (x) id`` and unit the cup.

    ``obj`` is a :class:`FinSet` (Rel) or a dimension; a bare integer is
    taken in ``backend`` (FHilb by default).  In FHilb this is the matrix
    algebra ``M_n`` with normaliser ``n^(-1/2) id``; in Rel it is the algebra
    of the indiscrete groupoid on ``n`` objects.
    """
    carrier, b = _carrier_and_backend(obj, backend)
    n = carrier.size if isinstance(carrier, FinSet) else carrier
    one = b.identity(n)
    mult = one.tensor(b.cap(n)).tensor(one)
    unit = b.cup(n)
    if b is REL:
        labels = None
        if carrier.labels is not None:
            labels = [f"({x},{y})" for x in carrier.labels for y in carrier.labels]
        return FrobeniusAlgebra(mult, unit, None, FinSet(n * n, labels))
    z = b.identity(n * n) * (1.0 / math.sqrt(n)) if n else b.identity(0)
    return FrobeniusAlgebra(mult, unit, z)


def classical_structure(obj, backend=None) -> FrobeniusAlgebra:
    """Copying algebra ``e_i (x) e_j -> delta_ij e_i`` with unit ``sum_i e_i``."""
    carrier, b = _carrier_and_backend(obj, backend)
    n = carrier.size if isinstance(carrier, FinSet) else carrier
    m = np.zeros((n, n * n), dtype=np.int8)
    m[np.arange(n), np.arange(n) * (n + 1)] = 1
    return FrobeniusAlgebra(b.from_array(m), b.from_array(np.ones((n, 1), dtype=np.int8)), None, carrier)


def tensor_algebra(alg_a: FrobeniusAlgebra, alg_b: FrobeniusAlgebra) -> FrobeniusAlgebra:
    """Monoidal product of algebras on ``A (x) B``."""
    b = alg_a.backend
    if alg_b.backend is not b:
        raise ValueError("algebras live in different backends")
    a_, b_ = alg_a.dim, alg_b.dim
    shuffle = permutation(b, [a_, b_, a_, b_], [0, 2, 1, 3])
    mult = alg_a.mult.tensor(alg_b.mult) @ shuffle
    unit = alg_a.unit.tensor(alg_b.unit)
    z = alg_a.normaliser.tensor(alg_b.normaliser)
    carrier = alg_a.carrier.tensor(alg_b.carrier) if b is REL else a_ * b_
    return FrobeniusAlgebra(mult, unit, z, carrier)
