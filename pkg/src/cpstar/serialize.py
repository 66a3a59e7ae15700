"""JSON documents for relations, matrices, algebras, groupoids, PERs and sums."""
from __future__ import annotations

import json
from typing import Any

import numpy as np

from .biproducts import SumObject
from .fhilb import LinearMap
from .frobenius import FrobeniusAlgebra
from .groupoids import Groupoid
from .rel import FinSet, Relation
from .split import CpmPer, Per

__all__ = [
    "InputError",
    "finset_to_json",
    "finset_from_json",
    "relation_from_json",
    "matrix_from_json",
    "morphism_from_json",
    "algebra_to_json",
    "algebra_from_json",
    "groupoid_from_json",
    "per_from_json",
    "cpm_per_from_json",
    "sum_from_json",
    "to_json",
    "from_json",
    "load",
    "dump",
]


class InputError(ValueError):
    """A document that cannot be parsed into the expected object."""


def _require(doc: dict, *keys: str) -> None:
    if not isinstance(doc, dict):
        raise InputError(f"expected a JSON object, got {type(doc).__name__}")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise InputError(f"missing field(s) {missing}")


def finset_to_json(s: FinSet):
    return s.size if s.labels is None else {"size": s.size, "labels": list(s.labels)}


def finset_from_json(doc) -> FinSet:
    try:
        if isinstance(doc, dict):
            return FinSet(int(doc["size"]), doc.get("labels"))
        return FinSet(int(doc))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad set: {exc}") from exc


def relation_from_json(doc: dict) -> Relation:
    _require(doc, "src", "dst", "pairs")
    try:
        return Relation(finset_from_json(doc["src"]), finset_from_json(doc["dst"]), [tuple(p) for p in doc["pairs"]])
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad relation: {exc}") from exc


def matrix_from_json(doc: dict) -> LinearMap:
    _require(doc, "rows", "cols", "entries")
    try:
        rows, cols = int(doc["rows"]), int(doc["cols"])
        vals = [complex(e[0], e[1]) if isinstance(e, (list, tuple)) else complex(e) for e in doc["entries"]]
        if len(vals) != rows * cols:
            raise ValueError(f"{len(vals)} entries for a {rows}x{cols} matrix")
        return LinearMap(np.array(vals, dtype=complex).reshape(rows, cols))
    except (TypeError, ValueError, IndexError) as exc:
        raise InputError(f"bad matrix: {exc}") from exc


def morphism_from_json(doc: dict):
    if isinstance(doc, dict) and "pairs" in doc and "src" in doc:
        return relation_from_json(doc)
    if isinstance(doc, dict) and "entries" in doc:
        return matrix_from_json(doc)
    raise InputError("expected a relation or a matrix")


def algebra_to_json(alg: FrobeniusAlgebra) -> dict:
    carrier = finset_to_json(alg.carrier) if isinstance(alg.carrier, FinSet) else int(alg.carrier)
    return {
        "backend": alg.backend.name,
        "carrier": carrier,
        "mult": alg.mult.to_dict(),
        "unit": alg.unit.to_dict(),
        "normaliser": alg.normaliser.to_dict(),
    }


def algebra_from_json(doc: dict) -> FrobeniusAlgebra:
    _require(doc, "backend", "mult", "unit")
    backend = str(doc["backend"]).lower()
    if backend not in ("rel", "fhilb"):
        raise InputError(f"unknown backend {doc['backend']!r}")
    mult, unit = morphism_from_json(doc["mult"]), morphism_from_json(doc["unit"])
    z = doc.get("normaliser")
    z = None if z is None else morphism_from_json(z)
    if any(m is not None and m.backend.name != backend for m in (mult, unit, z)):
        raise InputError("morphisms do not match the declared backend")
    carrier = doc.get("carrier")
    if carrier is not None:
        carrier = finset_from_json(carrier) if backend == "rel" else int(carrier)
    try:
        return FrobeniusAlgebra(mult, unit, z, carrier)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def groupoid_from_json(doc: dict) -> Groupoid:
    _require(doc, "objects", "dom", "cod", "comp", "inv", "ids")
    try:
        n = len(doc["dom"])
        comp = np.array(doc["comp"], dtype=np.int64).reshape(n, n)
        return Groupoid(int(doc["objects"]), doc["dom"], doc["cod"], comp, doc["ids"], doc["inv"], doc.get("labels"))
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad groupoid: {exc}") from exc


def per_from_json(doc: dict) -> Per:
    _require(doc, "base", "pairs")
    try:
        return Per.from_pairs(int(doc["base"]), [tuple(p) for p in doc["pairs"]])
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad PER: {exc}") from exc


def cpm_per_from_json(doc: dict) -> CpmPer:
    _require(doc, "x_size", "pairs")
    m = int(doc["x_size"])
    if "base" in doc and int(doc["base"]) != m * m:
        raise InputError("base must be x_size squared")
    try:
        return CpmPer(m, Relation(m * m, m * m, [tuple(p) for p in doc["pairs"]]))
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad CPM PER: {exc}") from exc


def sum_from_json(doc: dict) -> SumObject:
    _require(doc, "summands")
    try:
        return SumObject(tuple(finset_from_json(s) if isinstance(s, dict) else int(s) for s in doc["summands"]))
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad sum object: {exc}") from exc


def to_json(obj) -> Any:
    if isinstance(obj, FrobeniusAlgebra):
        return algebra_to_json(obj)
    if isinstance(obj, (Relation, LinearMap, Groupoid, Per, CpmPer, SumObject)):
        return obj.to_dict()
    if isinstance(obj, FinSet):
        return finset_to_json(obj)
    raise TypeError(f"no JSON form for {type(obj).__name__}")


def from_json(doc: dict):
    """Recognise a document by its fields and parse it."""
    if not isinstance(doc, dict):
        raise InputError("expected a JSON object")
    if "mult" in doc:
        return algebra_from_json(doc)
    if "comp" in doc:
        return groupoid_from_json(doc)
    if "x_size" in doc:
        return cpm_per_from_json(doc)
    if "base" in doc:
        return per_from_json(doc)
    if "summands" in doc:
        return sum_from_json(doc)
    return morphism_from_json(doc)


def load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return from_json(doc)


def dump(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json(obj), fh, indent=1)
