"""Search for bijections subject to equivariance rules.

Every search in the package has the same shape: find a bijection ``beta``
between two ``n``-element index sets such that a list of rules
``beta[dst] == image[beta[src]]`` holds, where ``image`` is a partial map on
the codomain (``-1`` marks undefined values, which reject the candidate).

Two strategies are offered.  The pruned search backtracks and propagates
implied assignments.  The exhaustive search tests every one of the ``n!``
permutations in vectorised batches and is used where the number of
candidates examined is itself part of the claim.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

__all__ = ["Rule", "SearchResult", "search_bijection", "check_bijection", "MAX_EXHAUSTIVE"]

MAX_EXHAUSTIVE = 10


@dataclass(frozen=True)
class Rule:
    """``beta[dst] == image[beta[src]]``."""

    src: int
    dst: int
    image: Tuple[int, ...]


@dataclass
class SearchResult:
    mapping: Optional[Tuple[int, ...]]
    candidates: int
    solutions: int = 0

    @property
    def found(self) -> bool:
        return self.mapping is not None


def _as_rules(n: int, rules: Sequence[Rule]) -> List[Rule]:
    out = []
    for r in rules:
        if not (0 <= r.src < n and 0 <= r.dst < n) or len(r.image) != n:
            raise ValueError(f"rule {r} does not fit a bijection of size {n}")
        out.append(Rule(int(r.src), int(r.dst), tuple(int(v) for v in r.image)))
    return out


def check_bijection(mapping: Sequence[int], rules: Sequence[Rule], allowed=None) -> bool:
    """Direct test of one candidate, independent of both search strategies."""
    n = len(mapping)
    if sorted(mapping) != list(range(n)):
        return False
    if allowed is not None and not all(allowed[d][mapping[d]] for d in range(n)):
        return False
    return all(r.image[mapping[r.src]] == mapping[r.dst] for r in rules)


def search_bijection(
    n: int,
    rules: Sequence[Rule],
    allowed=None,
    exhaustive: bool = False,
    count_all: bool = False,
) -> SearchResult:
    """Find ``beta`` satisfying every rule.

    ``allowed`` is an optional ``n x n`` boolean matrix restricting
    ``beta[d]``.  In exhaustive mode ``candidates`` is ``n!`` and
    ``solutions`` counts every valid bijection; in pruned mode
    ``candidates`` counts the branching assignments tried and the search
    stops at the first solution unless ``count_all`` is set.
    """
    rules = _as_rules(n, rules)
    allowed = None if allowed is None else np.asarray(allowed, dtype=bool).reshape(n, n)
    if exhaustive:
        return _exhaustive(n, rules, allowed)
    return _pruned(n, rules, allowed, count_all)


def _exhaustive(n: int, rules: List[Rule], allowed) -> SearchResult:
    if n > MAX_EXHAUSTIVE:
        raise ValueError(f"exhaustive search over {n}! candidates is not supported")
    total = math.factorial(n)
    found = None
    solutions = 0
    images = {r.image: np.array(r.image, dtype=np.int64) for r in rules}
    perms_iter = itertools.permutations(range(n))
    batch = 40320
    while True:
        chunk = list(itertools.islice(perms_iter, batch))
        if not chunk:
            break
        perms = np.array(chunk, dtype=np.int64).reshape(len(chunk), n)
        ok = np.ones(len(chunk), dtype=bool)
        if allowed is not None:
            ok &= allowed[np.arange(n), perms].all(axis=1)
        for r in rules:
            ok &= images[r.image][perms[:, r.src]] == perms[:, r.dst]
        hits = np.flatnonzero(ok)
        solutions += len(hits)
        if found is None and len(hits):
            found = tuple(int(v) for v in perms[hits[0]])
    return SearchResult(found, total, solutions)


def _pruned(n: int, rules: List[Rule], allowed, count_all: bool) -> SearchResult:
    by_src: List[List[Rule]] = [[] for _ in range(n)]
    for r in rules:
        by_src[r.src].append(r)
    beta = [-1] * n
    used = [False] * n
    result = SearchResult(None, 0, 0)

    def assign(d: int, c: int, trail: list) -> bool:
        stack = [(d, c)]
        while stack:
            d, c = stack.pop()
            if c < 0:
                return False
            if beta[d] >= 0:
                if beta[d] != c:
                    return False
                continue
            if used[c] or (allowed is not None and not allowed[d, c]):
                return False
            beta[d] = c
            used[c] = True
            trail.append(d)
            for r in by_src[d]:
                stack.append((r.dst, r.image[c]))
        return True

    def undo(trail: list) -> None:
        for d in trail:
            used[beta[d]] = False
            beta[d] = -1

    def recurse(start: int) -> bool:
        d = start
        while d < n and beta[d] >= 0:
            d += 1
        if d == n:
            result.solutions += 1
            if result.mapping is None:
                result.mapping = tuple(beta)
            return not count_all
        for c in range(n):
            if used[c]:
                continue
            result.candidates += 1
            trail: list = []
            if assign(d, c, trail) and recurse(d + 1):
                return True
            undo(trail)
        return False

    recurse(0)
    return result
