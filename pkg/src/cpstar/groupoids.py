"""Finite groupoids, their Frobenius algebras in Rel, enumeration and searches.

A morphism ``g`` goes ``dom[g] -> cod[g]``; ``comp[g][h]`` is ``g ∘ h`` and is
``-1`` unless ``dom[g] == cod[h]``.  Connected groupoids are products of an
indiscrete groupoid with a group, which drives the enumeration; a direct
search over composition tables serves as an independent small-size check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from .cp import is_cpstar_rel_groupoid
from .frobenius import FrobeniusAlgebra
from .rel import FinSet, Relation
from .report import Report
from .search import Rule, SearchResult, search_bijection
from .split import CpmPer, per_check, quotient

__all__ = [
    "Groupoid",
    "GROUPS",
    "group_table",
    "groupoid_check",
    "groupoid_to_algebra",
    "connected_groupoid",
    "group_groupoid",
    "indiscrete_groupoid",
    "discrete_groupoid",
    "disjoint_union",
    "components",
    "enumerate_groupoids",
    "enumerate_groupoids_naive",
    "groupoid_isomorphism",
    "groupoids_isomorphic",
    "nine_morphism_groupoid",
    "NINE_LABELS",
    "counterexample_R",
    "SplittingSearch",
    "splitting_rules",
    "search_dagger_splitting",
    "verify_no_dagger_splitting",
    "per_counterexample",
]


@dataclass(frozen=True, eq=False)
class Groupoid:
    n_objects: int
    dom: Tuple[int, ...]
    cod: Tuple[int, ...]
    comp: np.ndarray
    ids: Tuple[int, ...]
    inv: Tuple[int, ...]
    labels: Optional[Tuple[str, ...]] = field(default=None)
    name: str = ""

    def __post_init__(self):
        comp = np.array(self.comp, dtype=np.int64)
        n = len(self.dom)
        if comp.shape != (n, n) or len(self.cod) != n or len(self.inv) != n or len(self.ids) != self.n_objects:
            raise ValueError("inconsistent groupoid table sizes")
        comp.setflags(write=False)
        object.__setattr__(self, "comp", comp)
        for key in ("dom", "cod", "ids", "inv"):
            object.__setattr__(self, key, tuple(int(v) for v in getattr(self, key)))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n_morphisms(self) -> int:
        return len(self.dom)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Groupoid):
            return NotImplemented
        return (
            self.n_objects == other.n_objects
            and self.dom == other.dom
            and self.cod == other.cod
            and self.ids == other.ids
            and self.inv == other.inv
            and np.array_equal(self.comp, other.comp)
        )

    __hash__ = None

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"Groupoid({self.n_objects} objects, {self.n_morphisms} morphisms{tag})"

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)

    def to_dict(self) -> dict:
        out = {
            "objects": self.n_objects,
            "morphisms": self.n_morphisms,
            "dom": list(self.dom),
            "cod": list(self.cod),
            "comp": self.comp.tolist(),
            "inv": list(self.inv),
            "ids": list(self.ids),
        }
        if self.labels:
            out["labels"] = list(self.labels)
        return out


# ---------------------------------------------------------------- groups


def _cyclic(n: int) -> np.ndarray:
    a = np.arange(n)
    return (a[:, None] + a[None, :]) % n


def _product(g: np.ndarray, h: np.ndarray) -> np.ndarray:
    p, q = len(g), len(h)
    out = np.empty((p * q, p * q), dtype=np.int64)
    for a, b, c, d in itertools.product(range(p), range(q), range(p), range(q)):
        out[a * q + b, c * q + d] = g[a, c] * q + h[b, d]
    return out


def _from_perms(perms: List[Tuple[int, ...]]) -> np.ndarray:
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    out = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            out[i, j] = index[tuple(p[q[k]] for k in range(len(q)))]
    return out


def _closure(generators: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    k = len(generators[0])
    ident = tuple(range(k))
    elems = [ident]
    frontier = [ident]
    seen = {ident}
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                q = tuple(p[g[i]] for i in range(k))
                if q not in seen:
                    seen.add(q)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    return elems


def _quaternion() -> np.ndarray:
    # elements +-1, +-i, +-j, +-k as (sign, unit) with unit in 1, i, j, k
    units = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}
    out = np.empty((8, 8), dtype=np.int64)
    for a, b in itertools.product(range(8), range(8)):
        sa, ua = (1 if a < 4 else -1), a % 4
        sb, ub = (1 if b < 4 else -1), b % 4
        s, u = units[(ua, ub)]
        s *= sa * sb
        out[a, b] = u if s == 1 else u + 4
    return out


def _build_groups() -> Dict[str, np.ndarray]:
    groups = {f"Z{n}": _cyclic(n) for n in range(1, 10)}
    groups["Z2xZ2"] = _product(_cyclic(2), _cyclic(2))
    groups["S3"] = _from_perms(_closure([(1, 0, 2), (1, 2, 0)]))
    groups["D4"] = _from_perms(_closure([(1, 2, 3, 0), (3, 2, 1, 0)]))
    groups["Q8"] = _quaternion()
    groups["Z2xZ2xZ2"] = _product(_product(_cyclic(2), _cyclic(2)), _cyclic(2))
    groups["Z2xZ4"] = _product(_cyclic(2), _cyclic(4))
    groups["Z3xZ3"] = _product(_cyclic(3), _cyclic(3))
    for t in groups.values():
        t.setflags(write=False)
    return groups


GROUPS: Dict[str, np.ndarray] = _build_groups()
"""Multiplication tables of every group of order at most 9, up to isomorphism; element 0 is the unit."""


def group_table(name: str) -> np.ndarray:
    return GROUPS[name]


def _groups_of_order(n: int) -> List[str]:
    if n > 9:
        raise ValueError(f"no built-in groups of order {n}")
    return sorted(k for k, t in GROUPS.items() if len(t) == n)


# ---------------------------------------------------------------- checks


def groupoid_check(g: Groupoid) -> Report:
    r = Report("groupoid-check")
    n, k = g.n_morphisms, g.n_objects
    comp = g.comp
    in_range = all(0 <= x < k for x in g.dom + g.cod) and all(0 <= x < n for x in g.ids + g.inv)
    r.add("indices_in_range", in_range)
    if not in_range:
        return r
    defined_ok = all(
        (comp[a, b] >= 0) == (g.dom[a] == g.cod[b]) and comp[a, b] < n for a in range(n) for b in range(n)
    )
    r.add("composition_domain", defined_ok)
    if not defined_ok:
        return r
    r.add(
        "composition_types",
        all(
            g.dom[comp[a, b]] == g.dom[b] and g.cod[comp[a, b]] == g.cod[a]
            for a in range(n)
            for b in range(n)
            if comp[a, b] >= 0
        ),
    )
    r.add(
        "associativity",
        all(
            comp[comp[a, b], c] == comp[a, comp[b, c]]
            for a in range(n)
            for b in range(n)
            for c in range(n)
            if comp[a, b] >= 0 and comp[b, c] >= 0
        ),
    )
    ids_typed = all(g.dom[g.ids[x]] == x and g.cod[g.ids[x]] == x for x in range(k))
    r.add("identity_types", ids_typed)
    r.add(
        "identity_laws",
        ids_typed
        and all(comp[g.ids[g.cod[a]], a] == a and comp[a, g.ids[g.dom[a]]] == a for a in range(n)),
    )
    r.add(
        "inverses",
        all(
            comp[g.inv[a], a] == g.ids[g.dom[a]] and comp[a, g.inv[a]] == g.ids[g.cod[a]]
            for a in range(n)
        ),
    )
    return r


def groupoid_to_algebra(g: Groupoid) -> FrobeniusAlgebra:
    """Rel algebra on ``Mor(G)``: ``m = {((a, b), a ∘ b)}``, ``u = {(*, id_x)}``."""
    if not groupoid_check(g).passed:
        raise ValueError("not a valid groupoid")
    n = g.n_morphisms
    carrier = FinSet(n, g.labels)
    a_idx, b_idx = np.nonzero(g.comp >= 0)
    mult = Relation(n * n, carrier, zip((a_idx * n + b_idx).tolist(), g.comp[a_idx, b_idx].tolist()))
    unit = Relation(1, carrier, [(0, i) for i in g.ids])
    return FrobeniusAlgebra(mult, unit, None, carrier)


# ---------------------------------------------------------------- constructions


def connected_groupoid(k: int, group="Z1", name: str = None) -> Groupoid:
    """Indiscrete groupoid on ``k`` objects times a group.

    Morphism ``(i, x, j) : j -> i`` has index ``(i * k + j) * |K| + x``.
    """
    table = group_table(group) if isinstance(group, str) else np.asarray(group)
    order = len(table)
    inv_el = [int(np.flatnonzero(table[x] == 0)[0]) for x in range(order)]

    def idx(i, x, j):
        return (i * k + j) * order + x

    n = k * k * order
    dom, cod, inv = [0] * n, [0] * n, [0] * n
    comp = -np.ones((n, n), dtype=np.int64)
    for i, j, x in itertools.product(range(k), range(k), range(order)):
        a = idx(i, x, j)
        dom[a], cod[a], inv[a] = j, i, idx(j, inv_el[x], i)
        for t, y in itertools.product(range(k), range(order)):
            comp[a, idx(j, y, t)] = idx(i, int(table[x, y]), t)
    ids = [idx(i, 0, i) for i in range(k)]
    label = name or (f"{group}" if k == 1 else f"indiscrete{k}" if order == 1 else f"indiscrete{k}x{group}")
    return Groupoid(k, dom, cod, comp, ids, inv, None, label)


def group_groupoid(group: str) -> Groupoid:
    return connected_groupoid(1, group)


def indiscrete_groupoid(k: int) -> Groupoid:
    return connected_groupoid(k, "Z1")


def discrete_groupoid(k: int) -> Groupoid:
    return disjoint_union(*([connected_groupoid(1, "Z1")] * k)) if k else _empty()


def _empty() -> Groupoid:
    return Groupoid(0, (), (), np.zeros((0, 0), dtype=np.int64), (), (), None, "empty")


def disjoint_union(*parts: Groupoid) -> Groupoid:
    """Components laid out in order; morphisms and objects are offset."""
    if not parts:
        return _empty()
    n = sum(p.n_morphisms for p in parts)
    comp = -np.ones((n, n), dtype=np.int64)
    dom, cod, inv, ids, labels = [], [], [], [], []
    mo = oo = 0
    for p in parts:
        m = p.n_morphisms
        block = p.comp.copy()
        block[block >= 0] += mo
        comp[mo:mo + m, mo:mo + m] = block
        dom += [x + oo for x in p.dom]
        cod += [x + oo for x in p.cod]
        inv += [x + mo for x in p.inv]
        ids += [x + mo for x in p.ids]
        labels += [p.label(g) for g in range(m)]
        mo += m
        oo += p.n_objects
    name = " + ".join(p.name or "?" for p in parts)
    has_labels = any(p.labels for p in parts)
    return Groupoid(oo, dom, cod, comp, ids, inv, labels if has_labels else None, name)


def components(g: Groupoid) -> List[List[int]]:
    """Object sets of the connected components."""
    parent = list(range(g.n_objects))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(g.n_morphisms):
        parent[find(g.dom[a])] = find(g.cod[a])
    groups: Dict[int, List[int]] = {}
    for x in range(g.n_objects):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


# ---------------------------------------------------------------- enumeration


def _component_types(size: int) -> List[Tuple[int, str]]:
    out = []
    k = 1
    while k * k <= size:
        if size % (k * k) == 0:
            out += [(k, grp) for grp in _groups_of_order(size // (k * k))]
        k += 1
    return out


@lru_cache(maxsize=None)
def _type_multisets(n: int) -> Tuple[Tuple[Tuple[int, int, str], ...], ...]:
    types = sorted((k * k * len(GROUPS[grp]), k, grp) for s in range(1, n + 1) for k, grp in _component_types(s))
    out = []

    def rec(remaining, start, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(types)):
            if types[i][0] <= remaining:
                rec(remaining - types[i][0], i, acc + [types[i]])

    rec(n, 0, [])
    return tuple(out)


def enumerate_groupoids(n: int) -> List[Groupoid]:
    """All groupoids with ``n`` morphisms, one per isomorphism class.

    A groupoid is determined by the multiset of its connected components and
    each component by its object count and vertex group.
    """
    if n < 0:
        raise ValueError("morphism count must be non-negative")
    if n == 0:
        return [_empty()]
    return [disjoint_union(*(connected_groupoid(k, grp) for _, k, grp in ms)) for ms in _type_multisets(n)]


def groupoid_isomorphism(g: Groupoid, h: Groupoid) -> Optional[Tuple[int, ...]]:
    """Morphism bijection preserving composition (hence types), or ``None``."""
    n = g.n_morphisms
    if n != h.n_morphisms or g.n_objects != h.n_objects:
        return None

    def profile(x: Groupoid):
        endo = [x.dom[a] == x.cod[a] for a in range(n)]
        is_id = [False] * n
        for i in x.ids:
            is_id[i] = True
        return [(is_id[a], endo[a], int((x.comp[a] >= 0).sum())) for a in range(n)]

    pg, ph = profile(g), profile(h)
    if sorted(pg) != sorted(ph):
        return None
    phi = [-1] * n
    used = [False] * n

    def consistent(a: int) -> bool:
        for b in range(n):
            if phi[b] < 0:
                continue
            for x, y in ((a, b), (b, a)):
                c = g.comp[x, y]
                d = h.comp[phi[x], phi[y]]
                if (c >= 0) != (d >= 0):
                    return False
                if c >= 0 and phi[c] >= 0 and phi[c] != d:
                    return False
        return True

    def rec(a: int) -> bool:
        if a == n:
            return all(
                (g.comp[x, y] < 0) or phi[g.comp[x, y]] == h.comp[phi[x], phi[y]]
                for x in range(n)
                for y in range(n)
            )
        for c in range(n):
            if used[c] or pg[a] != ph[c]:
                continue
            phi[a], used[c] = c, True
            if consistent(a) and rec(a + 1):
                return True
            phi[a], used[c] = -1, False
        return False

    return tuple(phi) if rec(0) else None


def groupoids_isomorphic(g: Groupoid, h: Groupoid) -> bool:
    return groupoid_isomorphism(g, h) is not None


def enumerate_groupoids_naive(n: int) -> List[Groupoid]:
    """Direct search over object counts, typings and composition tables.

    Identities are taken to be morphisms ``0..k-1``; the survivors are
    deduplicated up to isomorphism.  Only practical for ``n <= 4``.
    """
    if n > 5:
        raise ValueError("naive enumeration is limited to at most 5 morphisms")
    found: List[Groupoid] = []
    for k in range(1, n + 1):
        for typing in itertools.product(itertools.product(range(k), range(k)), repeat=n - k):
            dom = list(range(k)) + [t[1] for t in typing]
            cod = list(range(k)) + [t[0] for t in typing]
            for g in _naive_tables(n, k, dom, cod):
                if groupoid_check(g).passed and not any(groupoids_isomorphic(g, f) for f in found):
                    found.append(g)
    return found


def _naive_tables(n: int, k: int, dom: List[int], cod: List[int]):
    pairs = [(a, b) for a in range(n) for b in range(n) if dom[a] == cod[b]]
    comp = -np.ones((n, n), dtype=np.int64)
    free = []
    for a, b in pairs:
        if a < k:
            comp[a, b] = b
        elif b < k:
            comp[a, b] = a
        else:
            free.append((a, b))

    def ok(a, b, c):
        if dom[c] != dom[b] or cod[c] != cod[a]:
            return False
        # left and right cancellation
        if any(comp[a, y] == c for y in range(n) if y != b):
            return False
        if any(comp[x, b] == c for x in range(n) if x != a):
            return False
        return True

    def rec(i):
        if i == len(free):
            inv = []
            for a in range(n):
                # ids are morphisms 0..k-1, so id_x has index x
                cands = [b for b in range(n) if dom[a] == cod[b] and comp[a, b] == cod[a] and comp[b, a] == dom[a]]
                if not cands:
                    return
                inv.append(cands[0])
            yield Groupoid(k, dom, cod, comp.copy(), list(range(k)), inv)
            return
        a, b = free[i]
        for c in range(n):
            if ok(a, b, c):
                comp[a, b] = c
                yield from rec(i + 1)
                comp[a, b] = -1

    yield from rec(0)


# ---------------------------------------------------------------- counterexamples


NINE_LABELS = ("id_a", "f^-1", "h^-1", "f", "id_b", "g^-1", "h", "g", "id_c")


def nine_morphism_groupoid() -> Groupoid:
    """Indiscrete groupoid on objects ``a, b, c`` with ``f : a -> b``, ``g : b -> c``, ``h : a -> c``."""
    g = indiscrete_groupoid(3)
    return Groupoid(g.n_objects, g.dom, g.cod, g.comp, g.ids, g.inv, NINE_LABELS, "nine-morphism")


def counterexample_R() -> Relation:
    """Diagonal relation on every morphism except ``h`` and its inverse."""
    g = nine_morphism_groupoid()
    keep = [x for x in range(9) if g.labels[x] not in ("h", "h^-1")]
    return Relation(9, 9, [(x, x) for x in keep])


@dataclass
class SplittingSearch:
    """Outcome of searching for a dagger splitting of an idempotent on a groupoid."""

    splitting: Optional[Tuple[Groupoid, Tuple[int, ...]]]
    candidates: int
    groupoids: int
    classes: List[Tuple[int, ...]]
    size: int = 0

    @property
    def found(self) -> bool:
        return self.splitting is not None

    def relation(self) -> Optional[Relation]:
        """The splitting ``S : Mor(G) -> Mor(H)`` when one was found."""
        if self.splitting is None:
            return None
        h, beta = self.splitting
        return Relation(self.size, h.n_morphisms, [(x, beta[k]) for k, c in enumerate(self.classes) for x in c])


def splitting_rules(r: Relation, g: Groupoid, h: Groupoid) -> Optional[List[Rule]]:
    """Rules for ``beta : classes(R) -> Mor(H)`` making its graph a CP* morphism.

    ``None`` when some element of the domain has its inverse or the
    identity on its domain outside ``Dom(R)``, which rules out every splitting.
    """
    classes = quotient(r)
    idx = {x: k for k, c in enumerate(classes) for x in c}
    id_of_dom = tuple(h.ids[h.dom[y]] for y in range(h.n_morphisms))
    rules = []
    for k, c in enumerate(classes):
        for x in c:
            xi, xd = idx.get(g.inv[x]), idx.get(g.ids[g.dom[x]])
            if xi is None or xd is None:
                return None
            rules.append(Rule(k, xi, h.inv))
            rules.append(Rule(k, xd, id_of_dom))
    return rules


def search_dagger_splitting(r: Relation, g: Groupoid, exhaustive: bool = False) -> SplittingSearch:
    """Search every groupoid ``H`` and bijection ``classes(R) -> Mor(H)``.

    A splitting ``S`` with ``S^† ∘ S = R`` and ``S ∘ S^† = id`` relates each
    element of ``Dom(R)`` to exactly one morphism of ``H``, constantly on
    each class and injectively across classes, so ``S`` is the graph of such
    a bijection; what remains to test is that ``S`` is a CP* morphism.
    """
    if r.shape != (g.n_morphisms, g.n_morphisms) or not per_check(r):
        raise ValueError("R must be a dagger idempotent on Mor(G)")
    if not is_cpstar_rel_groupoid(r, g, g):
        raise ValueError("R is not a CP* morphism of the groupoid")
    classes = quotient(r)
    m = len(classes)
    total = 0
    hs = enumerate_groupoids(m)
    for h in hs:
        rules = splitting_rules(r, g, h)
        if rules is None:
            return SplittingSearch(None, total, len(hs), classes, g.n_morphisms)
        res: SearchResult = search_bijection(m, rules, exhaustive=exhaustive)
        total += res.candidates
        if res.found:
            return SplittingSearch((h, res.mapping), total, len(hs), classes, g.n_morphisms)
    return SplittingSearch(None, total, len(hs), classes, g.n_morphisms)


def verify_no_dagger_splitting(r: Relation, g: Groupoid, exhaustive: bool = True) -> bool:
    """True when no groupoid and bijection give a dagger splitting of ``R``."""
    return not search_dagger_splitting(r, g, exhaustive).found


def per_counterexample() -> CpmPer:
    """Unital CPM PER on ``{0,1,2}`` outside the image of groupoids.

    The domain is every pair except ``(0,2)`` and ``(2,0)``, each its own class.
    """
    keep = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (1, 2), (2, 1)]
    return CpmPer.from_pairs(3, [(p, p) for p in keep])
