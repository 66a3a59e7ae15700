"""Backend-generic monoidal plumbing: backend lookup, symmetries and folds."""
from __future__ import annotations

from functools import reduce
from typing import Sequence, Union

import numpy as np

from .fhilb import FHILB, FHilbBackend, LinearMap
from .rel import REL, FinSet, RelBackend, Relation

Backend = Union[RelBackend, FHilbBackend]
Morphism = Union[Relation, LinearMap]

__all__ = ["Backend", "Morphism", "get_backend", "backend_of", "permutation", "swap", "tensor_all", "compose_all"]


def get_backend(which) -> Backend:
    if isinstance(which, (RelBackend, FHilbBackend)):
        return which
    if isinstance(which, FinSet):
        return REL
    key = str(which).lower()
    if key == "rel":
        return REL
    if key in ("fhilb", "hilb"):
        return FHILB
    raise ValueError(f"unknown backend {which!r}")


def backend_of(f: Morphism) -> Backend:
    try:
        return f.backend
    except AttributeError:
        raise TypeError(f"not a morphism: {f!r}") from None


def permutation(backend: Backend, dims: Sequence[int], perm: Sequence[int]) -> Morphism:
    """Symmetry ``X_0 (x) ... (x) X_{k-1} -> X_{perm[0]} (x) ... (x) X_{perm[k-1]}``."""
    dims = [int(d) for d in dims]
    if sorted(perm) != list(range(len(dims))):
        raise ValueError(f"{perm} is not a permutation of {len(dims)} factors")
    total = int(np.prod(dims)) if dims else 1
    src_index = np.arange(total).reshape(dims).transpose(perm).reshape(-1)
    m = np.zeros((total, total), dtype=np.int8)
    m[np.arange(total), src_index] = 1
    return backend.from_array(m)


def swap(backend: Backend, a: int, b: int) -> Morphism:
    return permutation(backend, [a, b], [1, 0])


def tensor_all(maps: Sequence[Morphism]) -> Morphism:
    return reduce(lambda f, g: f.tensor(g), maps)


def compose_all(*maps: Morphism) -> Morphism:
    """``compose_all(f, g, h) == f @ g @ h`` (``h`` applied first)."""
    return reduce(lambda f, g: f @ g, maps)
