"""Partial equivalence relations and dagger splitting in Rel and CPM[Rel].

A dagger idempotent on a set is exactly a partial equivalence relation
(PER).  A dagger idempotent in CPM[Rel] is a PER on ``X x X`` that is also
completely positive; :class:`CpmPer` packages one together with ``X``.
Pairs ``(x, x')`` are encoded as ``x * |X| + x'`` throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .cp import is_cp_rel
from .rel import FinSet, Relation, as_finset, decode_pair, encode_pair, rel_cup
from .search import Rule, SearchResult, search_bijection

__all__ = [
    "Per",
    "CpmPer",
    "per_check",
    "cpm_per_check",
    "domain",
    "quotient",
    "class_index",
    "per_split",
    "split_iso_rel",
    "split_iso_rel_witness",
    "quotient_rules",
    "split_iso_cpm_rel",
    "search_split_iso_cpm_rel",
    "check_quotient_bijection",
    "lift_quotient_bijection",
    "image_rules",
    "f_image_test",
    "search_f_image",
    "check_image_bijection",
    "cpm_per_is_unital",
    "cpm_per_diagonal_domain",
]


def per_check(r: Relation) -> bool:
    """Symmetric and transitive, equivalently ``r^† = r = r ∘ r``."""
    if r.src != r.dst:
        return False
    return r.dagger() == r and (r @ r) <= r


@dataclass(frozen=True)
class Per:
    """A partial equivalence relation on ``base``."""

    relation: Relation

    def __post_init__(self):
        if not per_check(self.relation):
            raise ValueError("relation is not a partial equivalence relation")

    @classmethod
    def from_pairs(cls, base, pairs) -> "Per":
        base = as_finset(base)
        return cls(Relation(base, base, pairs))

    @classmethod
    def from_classes(cls, base, classes: Sequence[Sequence[int]]) -> "Per":
        return cls.from_pairs(base, [(x, y) for c in classes for x in c for y in c])

    @property
    def base(self) -> FinSet:
        return self.relation.src

    def to_dict(self) -> dict:
        return {"base": self.base.size, "pairs": [list(p) for p in self.relation.sorted_pairs()]}


def cpm_per_check(r: Relation, x_size: int = None) -> bool:
    """PER on ``X x X`` that also satisfies the Rel complete-positivity rule."""
    return per_check(r) and is_cp_rel(r, x_size, x_size)


@dataclass(frozen=True)
class CpmPer:
    """A dagger idempotent of CPM[Rel] on the set ``X`` of size ``x_size``."""

    x_size: int
    relation: Relation

    def __post_init__(self):
        if self.relation.shape != (self.x_size**2, self.x_size**2):
            raise ValueError("relation must act on X x X")
        if not cpm_per_check(self.relation, self.x_size):
            raise ValueError("relation is not a completely positive partial equivalence relation")

    @classmethod
    def from_pairs(cls, x_size: int, pairs: Sequence[Tuple[Tuple[int, int], Tuple[int, int]]]) -> "CpmPer":
        """Build from pairs written as ``((x, x'), (y, y'))``."""
        n = x_size * x_size
        enc = [(encode_pair(*a, x_size), encode_pair(*b, x_size)) for a, b in pairs]
        return cls(x_size, Relation(n, n, enc))

    def to_dict(self) -> dict:
        return {
            "x_size": self.x_size,
            "base": self.x_size**2,
            "pairs": [list(p) for p in self.relation.sorted_pairs()],
        }


def _rel(obj) -> Relation:
    return obj.relation if isinstance(obj, (Per, CpmPer)) else obj


def domain(per) -> List[int]:
    r = _rel(per)
    return [x for x in range(r.src.size) if (x, x) in r]


def quotient(per) -> List[Tuple[int, ...]]:
    """Classes of ``Dom(~) / ~``, each sorted, ordered by least element."""
    r = _rel(per)
    seen = set()
    classes = []
    for x in domain(r):
        if x in seen:
            continue
        c = tuple(sorted(r.image(x)))
        seen.update(c)
        classes.append(c)
    return classes


def class_index(per) -> Dict[int, int]:
    """Map each element of ``Dom(~)`` to the index of its class."""
    return {x: k for k, c in enumerate(quotient(per)) for x in c}


def per_split(per) -> Relation:
    """Splitting ``Dom(~)/~ -> X`` relating each class to its members.

    ``R ∘ R^† = ~`` and ``R^† ∘ R = id``.
    """
    r = _rel(per)
    if not per_check(r):
        raise ValueError("relation is not a partial equivalence relation")
    classes = quotient(r)
    q = FinSet(len(classes))
    return Relation(q, r.src, [(k, x) for k, c in enumerate(classes) for x in c])


def split_iso_rel(a, b) -> bool:
    """Isomorphic in the dagger splitting of Rel: quotients of equal size."""
    return len(quotient(a)) == len(quotient(b))


def split_iso_rel_witness(a, b) -> Optional[Tuple[Relation, Relation]]:
    """Mutually inverse ``R : X -> Y`` and ``S : Y -> X`` matching classes in order."""
    if not split_iso_rel(a, b):
        return None
    ra, rb = _rel(a), _rel(b)
    ca, cb = quotient(ra), quotient(rb)
    pairs = [(x, y) for c, d in zip(ca, cb) for x in c for y in d]
    r = Relation(ra.src, rb.src, pairs)
    return r, r.dagger()


def _pair_maps(c: CpmPer):
    """Class-level swap and diagonal maps; ``-1`` where not well defined."""
    n = c.x_size
    classes = quotient(c)
    idx = class_index(c)
    swap, diag = [], []
    for cls in classes:
        s, d = set(), set()
        for v in cls:
            x, x2 = decode_pair(v, n)
            s.add(idx.get(encode_pair(x2, x, n), -1))
            d.add(idx.get(encode_pair(x, x, n), -1))
        swap.append(s.pop() if len(s) == 1 else -1)
        diag.append(d.pop() if len(d) == 1 else -1)
    return classes, swap, diag


def quotient_rules(a: CpmPer, b: CpmPer) -> Tuple[int, List[Rule], int]:
    """Rules for a class bijection ``alpha`` between two CPM PERs.

    ``alpha[swap_a(k)] = swap_b(alpha[k])`` and ``alpha[diag_a(k)] = diag_b(alpha[k])``.
    Returns ``(n, rules, m)`` where ``n``/``m`` are the two quotient sizes.
    """
    ca, swap_a, diag_a = _pair_maps(a)
    cb, swap_b, diag_b = _pair_maps(b)
    rules = []
    if len(ca) == len(cb):
        for k in range(len(ca)):
            if swap_a[k] < 0 or diag_a[k] < 0:
                return len(ca), [Rule(k, k, tuple([-1] * len(cb)))], len(cb)
            rules.append(Rule(k, swap_a[k], tuple(swap_b)))
            rules.append(Rule(k, diag_a[k], tuple(diag_b)))
    return len(ca), rules, len(cb)


def search_split_iso_cpm_rel(a: CpmPer, b: CpmPer, exhaustive: bool = False) -> SearchResult:
    n, rules, m = quotient_rules(a, b)
    if n != m:
        return SearchResult(None, 0, 0)
    return search_bijection(n, rules, exhaustive=exhaustive)


def split_iso_cpm_rel(a: CpmPer, b: CpmPer, exhaustive: bool = False) -> Optional[Tuple[int, ...]]:
    """A class bijection witnessing an isomorphism of CPM PERs, or ``None``."""
    return search_split_iso_cpm_rel(a, b, exhaustive).mapping


def check_quotient_bijection(a: CpmPer, b: CpmPer, alpha: Sequence[int]) -> bool:
    """Check the class bijection rule on every representative pair, both ways."""
    ca, cb = quotient(a), quotient(b)
    if len(ca) != len(cb) or sorted(alpha) != list(range(len(ca))):
        return False

    def one_way(src, dst, sx, dx, f):
        n, m = src.x_size, dst.x_size
        si, di = class_index(src), class_index(dst)
        for k, cls in enumerate(sx):
            for v in cls:
                x, x2 = decode_pair(v, n)
                for w in dx[f[k]]:
                    y, y2 = decode_pair(w, m)
                    if si.get(encode_pair(x2, x, n)) is None or di.get(encode_pair(y2, y, m)) is None:
                        return False
                    if f[si[encode_pair(x2, x, n)]] != di[encode_pair(y2, y, m)]:
                        return False
                    if si.get(encode_pair(x, x, n)) is None or di.get(encode_pair(y, y, m)) is None:
                        return False
                    if f[si[encode_pair(x, x, n)]] != di[encode_pair(y, y, m)]:
                        return False
        return True

    inverse = [0] * len(alpha)
    for k, v in enumerate(alpha):
        inverse[v] = k
    return one_way(a, b, ca, cb, list(alpha)) and one_way(b, a, cb, ca, inverse)


def lift_quotient_bijection(a: CpmPer, b: CpmPer, alpha: Sequence[int]) -> Tuple[Relation, Relation]:
    """Relations ``R : X x X -> Y x Y`` and ``S`` back, relating members of matched classes."""
    ca, cb = quotient(a), quotient(b)
    pairs = [(v, w) for k, cls in enumerate(ca) for v in cls for w in cb[alpha[k]]]
    r = Relation(a.relation.src, b.relation.src, pairs)
    return r, r.dagger()


def image_rules(c: CpmPer, g) -> Tuple[List[Rule], list]:
    """Rules and admissibility for ``beta : Mor(G) -> Dom(~)/~``.

    ``beta(g) = [x, x']`` forces ``beta(g^-1) = [x', x]`` and
    ``beta(id_dom g) = [x, x]``.  Identities can only land on classes
    containing a diagonal pair and other morphisms never do.
    """
    classes, swap, diag = _pair_maps(c)
    n = c.x_size
    has_diag = [any(decode_pair(v, n)[0] == decode_pair(v, n)[1] for v in cls) for cls in classes]
    is_id = [False] * g.n_morphisms
    for x in range(g.n_objects):
        is_id[g.ids[x]] = True
    rules = []
    for m in range(g.n_morphisms):
        rules.append(Rule(m, g.inv[m], tuple(swap)))
        rules.append(Rule(m, g.ids[g.dom[m]], tuple(diag)))
    allowed = [[is_id[m] == has_diag[k] for k in range(len(classes))] for m in range(g.n_morphisms)]
    return rules, allowed


def search_f_image(c: CpmPer, g, exhaustive: bool = False, prune: bool = True) -> SearchResult:
    if len(quotient(c)) != g.n_morphisms:
        return SearchResult(None, 0, 0)
    rules, allowed = image_rules(c, g)
    return search_bijection(g.n_morphisms, rules, allowed if prune else None, exhaustive=exhaustive)


def f_image_test(c: CpmPer, g, exhaustive: bool = False) -> Optional[Tuple[int, ...]]:
    """``beta`` exhibiting ``c`` as isomorphic to the image of ``g``, or ``None``."""
    return search_f_image(c, g, exhaustive).mapping


def check_image_bijection(c: CpmPer, g, beta: Sequence[int]) -> bool:
    """Direct check of the image rule for every morphism and every representative."""
    classes = quotient(c)
    if len(classes) != g.n_morphisms or sorted(beta) != list(range(len(classes))):
        return False
    idx = class_index(c)
    n = c.x_size
    for m in range(g.n_morphisms):
        for v in classes[beta[m]]:
            x, x2 = decode_pair(v, n)
            if idx.get(encode_pair(x2, x, n)) != beta[g.inv[m]]:
                return False
            if idx.get(encode_pair(x, x, n)) != beta[g.ids[g.dom[m]]]:
                return False
    return True


def cpm_per_is_unital(c: CpmPer) -> bool:
    """``~ ∘ cup = cup``: every ``(x, x)`` is in the domain and only meets diagonal pairs."""
    cup = rel_cup(c.x_size)
    return c.relation @ cup == cup


def cpm_per_diagonal_domain(c: CpmPer) -> bool:
    """Every diagonal pair ``(x, x)`` lies in ``Dom(~)``."""
    n = c.x_size
    return all((encode_pair(x, x, n), encode_pair(x, x, n)) in c.relation for x in range(n))
