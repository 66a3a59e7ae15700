"""Finite-dimensional Hilbert spaces and linear maps as a dagger compact category.

Dual spaces are identified with the same coordinate space.  The transpose
``f^*`` is the plain matrix transpose, ``f_* = conj(f)`` and conjugation lives
in the dagger.  The cup on ``C^n`` is the unnormalised vector
``sum_i e_i (x) e_i`` in the row-major encoding shared with :mod:`cpstar.rel`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

__all__ = [
    "DEFAULT_TOL",
    "Tolerance",
    "as_tol",
    "LinearMap",
    "FHilbBackend",
    "FHILB",
    "mat_compose",
    "mat_dagger",
    "mat_tensor",
    "mat_id",
    "mat_cup",
    "mat_cap",
    "is_psd",
    "min_eigenvalue",
    "operator_norm",
    "approx_equal",
    "max_abs_diff",
    "psd_power",
]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Tolerance:
    eps: float = DEFAULT_TOL

    def __post_init__(self):
        if not (self.eps >= 0):
            raise ValueError("tolerance must be non-negative")

    def __float__(self) -> float:
        return float(self.eps)


def as_tol(tol: Union[None, float, Tolerance]) -> float:
    if tol is None:
        return DEFAULT_TOL
    tol = float(tol)
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    return tol


class LinearMap:
    """Dense complex matrix; ``rows`` is the output and ``cols`` the input dimension.

    Zero-dimensional spaces are allowed so that the zero object of the
    biproduct structure has a representation.
    """

    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.array(entries, dtype=complex)
        if a.ndim == 1:
            a = a.reshape(-1, 1)
        if a.ndim != 2:
            raise ValueError("LinearMap entries must form a matrix")
        if not np.all(np.isfinite(a)):
            raise ValueError("LinearMap entries must be finite")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "LinearMap":
        m = cls.__new__(cls)
        a = np.ascontiguousarray(a, dtype=complex)
        a.setflags(write=False)
        m._a = a
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "LinearMap":
        return cls._wrap(np.zeros((rows, cols), dtype=complex))

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._a.shape

    @property
    def backend(self) -> "FHilbBackend":
        return FHILB

    def __repr__(self) -> str:
        return f"LinearMap({self.cols} -> {self.rows})\n{np.array2string(self._a, precision=4)}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    __hash__ = None  # equality of floating point maps is not a stable key

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        """``self @ other`` is ``self ∘ other``."""
        if not isinstance(other, LinearMap):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {other.cols}->{other.rows} with {self.cols}->{self.rows}")
        return LinearMap._wrap(self._a @ other._a)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return LinearMap._wrap(self._a + other._a)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return LinearMap._wrap(self._a - other._a)

    def __neg__(self) -> "LinearMap":
        return LinearMap._wrap(-self._a)

    def __mul__(self, c) -> "LinearMap":
        return LinearMap._wrap(complex(c) * self._a)

    __rmul__ = __mul__

    def then(self, other: "LinearMap") -> "LinearMap":
        return other @ self

    def dagger(self) -> "LinearMap":
        return LinearMap._wrap(self._a.conj().T)

    def conj(self) -> "LinearMap":
        return LinearMap._wrap(self._a.conj())

    def transpose(self) -> "LinearMap":
        return LinearMap._wrap(self._a.T)

    def tensor(self, other: "LinearMap") -> "LinearMap":
        return LinearMap._wrap(np.kron(self._a, other._a))

    def to_dict(self) -> dict:
        flat = self._a.reshape(-1)
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[float(z.real), float(z.imag)] for z in flat],
        }


def mat_compose(f: LinearMap, g: LinearMap) -> LinearMap:
    """Composite ``g ∘ f`` (``f`` applied first), matching :func:`rel_compose`."""
    return g @ f


def mat_dagger(f: LinearMap) -> LinearMap:
    return f.dagger()


def mat_tensor(f: LinearMap, g: LinearMap) -> LinearMap:
    return f.tensor(g)


def mat_id(n: int) -> LinearMap:
    return LinearMap._wrap(np.eye(n, dtype=complex))


def mat_cup(n: int) -> LinearMap:
    return LinearMap._wrap(np.eye(n, dtype=complex).reshape(n * n, 1))


def mat_cap(n: int) -> LinearMap:
    return mat_cup(n).dagger()


def _arr(m) -> np.ndarray:
    return m.array if isinstance(m, LinearMap) else np.asarray(m, dtype=complex)


def max_abs_diff(m, n) -> float:
    a, b = _arr(m), _arr(n)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def approx_equal(m, n, tol=None) -> bool:
    """Entrywise max-abs difference at most ``tol``."""
    return max_abs_diff(m, n) <= as_tol(tol)


def min_eigenvalue(m) -> float:
    """Smallest eigenvalue of the Hermitian part of a square matrix."""
    a = _arr(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("min_eigenvalue needs a square matrix")
    if a.size == 0:
        return float("inf")
    return float(np.linalg.eigvalsh((a + a.conj().T) / 2)[0])


def is_psd(m, tol=None) -> bool:
    a = _arr(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("is_psd needs a square matrix")
    tol = as_tol(tol)
    if max_abs_diff(a, a.conj().T) > tol:
        return False
    return min_eigenvalue(a) >= -tol


def operator_norm(m) -> float:
    a = _arr(m)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def psd_power(m, power: float, tol=None) -> LinearMap:
    """``m ** power`` for a positive semidefinite ``m`` via eigendecomposition."""
    a = _arr(m)
    tol = as_tol(tol)
    if not is_psd(a, tol):
        raise ValueError("matrix is not positive semidefinite")
    w, v = np.linalg.eigh((a + a.conj().T) / 2)
    if power < 0 and a.size and w[0] <= tol:
        raise ValueError("matrix is singular")
    w = np.clip(w, 0.0, None)
    return LinearMap._wrap((v * w**power) @ v.conj().T)


class FHilbBackend:
    name = "fhilb"
    exact = False

    def identity(self, n) -> LinearMap:
        return mat_id(int(n))

    def zero(self, src, dst) -> LinearMap:
        return LinearMap.zeros(int(dst), int(src))

    def cup(self, n) -> LinearMap:
        return mat_cup(int(n))

    def cap(self, n) -> LinearMap:
        return mat_cap(int(n))

    def from_array(self, arr) -> LinearMap:
        return LinearMap(arr)

    def scalar_one(self) -> LinearMap:
        return mat_id(1)

    def equal(self, f: LinearMap, g: LinearMap, tol=None) -> bool:
        return approx_equal(f, g, tol)

    def residual(self, f: LinearMap, g: LinearMap) -> float:
        return max_abs_diff(f, g)

    def is_positive_iso(self, z: LinearMap, tol=None) -> bool:
        tol = as_tol(tol)
        if z.rows != z.cols or not is_psd(z, tol):
            return False
        return z.rows == 0 or min_eigenvalue(z) > tol

    def inverse(self, z: LinearMap) -> LinearMap:
        if z.rows == 0:
            return z
        return LinearMap._wrap(np.linalg.inv(z.array))

    def __repr__(self) -> str:
        return "FHILB"


FHILB = FHilbBackend()
