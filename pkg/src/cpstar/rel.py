"""Finite sets and relations as a dagger compact category.

A relation ``R : A -> B`` is stored as a read-only boolean matrix of shape
``(|B|, |A|)`` with ``R.matrix[j, i]`` true iff ``(i, j)`` is in ``R``.  With
that layout composition is a boolean matrix product and the monoidal product
is the Kronecker product, so a pair ``(i, j)`` of an ``m``- and an
``n``-element set is encoded as ``i * n + j``.

Every object is self-dual and the monoidal unit is the one-element set.
"""
from __future__ import annotations

from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

__all__ = [
    "FinSet",
    "Relation",
    "RelBackend",
    "REL",
    "as_finset",
    "encode_pair",
    "decode_pair",
    "rel_compose",
    "rel_dagger",
    "rel_tensor",
    "rel_identity",
    "rel_zero",
    "rel_cup",
    "rel_cap",
]


def encode_pair(i: int, j: int, n: int) -> int:
    """Row-major index of the pair ``(i, j)`` when the second factor has ``n`` elements."""
    return i * n + j


def decode_pair(k: int, n: int) -> Tuple[int, int]:
    return divmod(k, n)


class FinSet:
    """A finite set ``{0, ..., size-1}`` with optional distinct labels."""

    __slots__ = ("size", "labels")

    def __init__(self, size: int, labels: Optional[Sequence[str]] = None):
        size = int(size)
        if size < 0:
            raise ValueError("FinSet size must be non-negative")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != size:
                raise ValueError(f"expected {size} labels, got {len(labels)}")
            if len(set(labels)) != size:
                raise ValueError("FinSet labels must be distinct")
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("FinSet is immutable")

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinSet):
            return NotImplemented
        return self.size == other.size and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.size, self.labels))

    def __repr__(self) -> str:
        if self.labels is None:
            return f"FinSet({self.size})"
        return f"FinSet({self.size}, labels={list(self.labels)!r})"

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def tensor(self, other: "FinSet") -> "FinSet":
        labels = None
        if self.labels is not None and other.labels is not None:
            labels = [f"({a},{b})" for a in self.labels for b in other.labels]
        return FinSet(self.size * other.size, labels)


def as_finset(obj: Union[int, FinSet]) -> FinSet:
    if isinstance(obj, FinSet):
        return obj
    return FinSet(int(obj))


class Relation:
    """A relation between two finite sets.

    Equality is exact equality of the underlying pair sets (and of the sizes
    of source and target); labels are presentation only.
    """

    __slots__ = ("src", "dst", "_m")

    def __init__(self, src, dst, pairs: Iterable[Tuple[int, int]] = ()):
        src, dst = as_finset(src), as_finset(dst)
        m = np.zeros((dst.size, src.size), dtype=bool)
        for i, j in pairs:
            i, j = int(i), int(j)
            if not (0 <= i < src.size and 0 <= j < dst.size):
                raise ValueError(f"pair ({i}, {j}) out of range for {src.size} -> {dst.size}")
            m[j, i] = True
        m.setflags(write=False)
        self.src, self.dst, self._m = src, dst, m

    @classmethod
    def from_matrix(cls, matrix, src=None, dst=None) -> "Relation":
        """Wrap a ``(|dst|, |src|)`` array; nonzero entries become pairs."""
        m = np.array(matrix, dtype=bool, copy=True)
        if m.ndim != 2:
            raise ValueError("relation matrix must be two-dimensional")
        src = as_finset(m.shape[1] if src is None else src)
        dst = as_finset(m.shape[0] if dst is None else dst)
        if m.shape != (dst.size, src.size):
            raise ValueError(f"matrix shape {m.shape} does not match {dst.size}x{src.size}")
        m.setflags(write=False)
        r = cls.__new__(cls)
        r.src, r.dst, r._m = src, dst, m
        return r

    @classmethod
    def graph(cls, fn: Sequence[int], dst) -> "Relation":
        """Graph ``{(i, fn[i])}`` of a function given as a lookup table."""
        return cls(len(fn), dst, ((i, j) for i, j in enumerate(fn)))

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def shape(self) -> Tuple[int, int]:
        return self._m.shape

    @property
    def pairs(self) -> frozenset:
        js, is_ = np.nonzero(self._m)
        return frozenset(zip(is_.tolist(), js.tolist()))

    @property
    def backend(self) -> "RelBackend":
        return REL

    def sorted_pairs(self):
        return sorted(self.pairs)

    def __contains__(self, pair) -> bool:
        i, j = pair
        return bool(self._m[j, i])

    def __len__(self) -> int:
        return int(self._m.sum())

    def __iter__(self):
        return iter(self.sorted_pairs())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self._m.shape == other._m.shape and bool(np.array_equal(self._m, other._m))

    def __hash__(self) -> int:
        return hash((self._m.shape, self._m.tobytes()))

    def __repr__(self) -> str:
        return f"Relation({self.src.size} -> {self.dst.size}, {self.sorted_pairs()})"

    def __le__(self, other: "Relation") -> bool:
        _check_same_shape(self, other)
        return bool(np.all(other._m[self._m]))

    def __matmul__(self, other: "Relation") -> "Relation":
        """``self @ other`` is the composite ``self ∘ other`` (apply ``other`` first)."""
        if not isinstance(other, Relation):
            return NotImplemented
        if self.src.size != other.dst.size:
            raise ValueError(
                f"cannot compose {other.src.size}->{other.dst.size} with {self.src.size}->{self.dst.size}"
            )
        return Relation.from_matrix(self._m @ other._m, other.src, self.dst)

    def __add__(self, other: "Relation") -> "Relation":
        """Biproduct addition in Rel is union."""
        _check_same_shape(self, other)
        return Relation.from_matrix(self._m | other._m, self.src, self.dst)

    __or__ = __add__

    def __and__(self, other: "Relation") -> "Relation":
        _check_same_shape(self, other)
        return Relation.from_matrix(self._m & other._m, self.src, self.dst)

    def then(self, other: "Relation") -> "Relation":
        return other @ self

    def dagger(self) -> "Relation":
        return Relation.from_matrix(self._m.T, self.dst, self.src)

    def tensor(self, other: "Relation") -> "Relation":
        return Relation.from_matrix(
            np.kron(self._m, other._m), self.src.tensor(other.src), self.dst.tensor(other.dst)
        )

    def conj(self) -> "Relation":
        # f_* : A* -> B*; with A* = A this is f itself in Rel
        return self

    def transpose(self) -> "Relation":
        return self.dagger()

    def image(self, i: int) -> frozenset:
        return frozenset(np.nonzero(self._m[:, i])[0].tolist())

    def is_function(self) -> bool:
        return bool(np.all(self._m.sum(axis=0) == 1))

    def to_dict(self) -> dict:
        return {"src": self.src.size, "dst": self.dst.size, "pairs": [list(p) for p in self.sorted_pairs()]}


def _check_same_shape(r: Relation, s: Relation) -> None:
    if r.shape != s.shape:
        raise ValueError(f"relations have different types: {r.shape} vs {s.shape}")


def rel_compose(r: Relation, s: Relation) -> Relation:
    """Composite ``s ∘ r`` of ``r : A -> B`` and ``s : B -> C``."""
    return s @ r


def rel_dagger(r: Relation) -> Relation:
    return r.dagger()


def rel_tensor(r: Relation, s: Relation) -> Relation:
    return r.tensor(s)


def rel_identity(a) -> Relation:
    a = as_finset(a)
    return Relation.from_matrix(np.eye(a.size, dtype=bool), a, a)


def rel_zero(src, dst) -> Relation:
    src, dst = as_finset(src), as_finset(dst)
    return Relation(src, dst)


def rel_cup(a) -> Relation:
    """``I -> A* x A`` relating the point to every diagonal pair."""
    n = as_finset(a).size
    return Relation(1, n * n, ((0, encode_pair(i, i, n)) for i in range(n)))


def rel_cap(a) -> Relation:
    return rel_cup(a).dagger()


class RelBackend:
    """Category operations for Rel, shared interface with :class:`FHilbBackend`."""

    name = "rel"
    exact = True

    def identity(self, n) -> Relation:
        return rel_identity(n)

    def zero(self, src, dst) -> Relation:
        return rel_zero(src, dst)

    def cup(self, n) -> Relation:
        return rel_cup(n)

    def cap(self, n) -> Relation:
        return rel_cap(n)

    def from_array(self, arr) -> Relation:
        return Relation.from_matrix(np.asarray(arr) != 0)

    def scalar_one(self) -> Relation:
        return rel_identity(1)

    def equal(self, f: Relation, g: Relation, tol=None) -> bool:
        return f == g

    def residual(self, f: Relation, g: Relation) -> float:
        if f.shape != g.shape:
            raise ValueError(f"shape mismatch {f.shape} vs {g.shape}")
        return float(np.any(f.matrix != g.matrix))

    def is_positive_iso(self, z: Relation, tol=None) -> bool:
        # the only positive isomorphisms in Rel are identities
        return z.shape[0] == z.shape[1] and z == rel_identity(z.shape[0])

    def inverse(self, z: Relation) -> Relation:
        if not (z.is_function() and z.dagger().is_function()):
            raise ValueError("relation is not invertible")
        return z.dagger()

    def __repr__(self) -> str:
        return "REL"


REL = RelBackend()
