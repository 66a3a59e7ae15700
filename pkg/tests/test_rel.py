import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpstar.rel import (
    REL,
    FinSet,
    Relation,
    decode_pair,
    encode_pair,
    rel_cap,
    rel_compose,
    rel_cup,
    rel_dagger,
    rel_identity,
    rel_tensor,
)


def relations(max_size=3):
    def build(shape):
        src, dst = shape
        cells = list(itertools.product(range(src), range(dst)))
        return st.sets(st.sampled_from(cells) if cells else st.nothing()).map(lambda ps: Relation(src, dst, ps))

    sizes = st.integers(0, max_size)
    return st.tuples(sizes, sizes).flatmap(build)


def compose_oracle(r, s):
    """Relational composition by enumerating middle elements."""
    return {(a, c) for (a, b) in r.sorted_pairs() for (b2, c) in s.sorted_pairs() if b == b2}


def test_compose_single_chain():
    r = Relation(3, 3, [(0, 1)])
    s = Relation(3, 3, [(1, 2)])
    assert rel_compose(r, s) == Relation(3, 3, [(0, 2)])


def test_compose_enumerates_middle():
    r = Relation(3, 3, [(0, 0), (0, 1)])
    s = Relation(3, 3, [(1, 0)])
    assert rel_compose(r, s) == Relation(3, 3, [(0, 0)])


def test_compose_matches_operator():
    r = Relation(2, 3, [(0, 1), (1, 2)])
    s = Relation(3, 2, [(1, 0), (2, 1)])
    assert rel_compose(r, s) == s @ r == r.then(s)


def test_compose_dimension_mismatch():
    with pytest.raises(ValueError):
        rel_compose(Relation(2, 3), Relation(2, 2))


def test_dagger_examples():
    assert rel_dagger(Relation(2, 2, [(0, 1)])) == Relation(2, 2, [(1, 0)])
    assert rel_dagger(rel_identity(4)) == rel_identity(4)


def test_tensor_encoding():
    r = Relation(2, 2, [(0, 1)])
    s = Relation(2, 2, [(1, 0)])
    assert rel_tensor(r, s).sorted_pairs() == [(1, 2)]
    assert rel_tensor(rel_identity(2), rel_identity(3)) == rel_identity(6)
    assert rel_tensor(r, Relation(3, 4)) == Relation(6, 8)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pair_encoding_round_trip(n):
    for i, j in itertools.product(range(n), repeat=2):
        assert decode_pair(encode_pair(i, j, n), n) == (i, j)


def test_cup_examples():
    assert rel_cup(2).sorted_pairs() == [(0, 0), (0, 3)]
    assert rel_cup(1).sorted_pairs() == [(0, 0)]
    assert rel_cap(3) == rel_cup(3).dagger()


@pytest.mark.parametrize("n", range(1, 6))
def test_snake_identities(n):
    ident = rel_identity(n)
    assert rel_cap(n).tensor(ident) @ ident.tensor(rel_cup(n)) == ident
    assert ident.tensor(rel_cap(n)) @ rel_cup(n).tensor(ident) == ident


def test_finset_invariants():
    assert FinSet(3, ["a", "b", "c"]).label(1) == "b"
    with pytest.raises(ValueError):
        FinSet(-1)
    with pytest.raises(ValueError):
        FinSet(2, ["a", "a"])
    with pytest.raises(ValueError):
        FinSet(2, ["a"])


def test_pairs_out_of_range():
    with pytest.raises(ValueError):
        Relation(2, 2, [(0, 2)])


def test_set_like_operations():
    r = Relation(2, 2, [(0, 0)])
    s = Relation(2, 2, [(1, 1)])
    assert r + s == rel_identity(2)
    assert r <= r + s
    assert (0, 0) in r and (1, 1) not in r
    assert Relation.graph([1, 0], 2).is_function()


@settings(max_examples=60, deadline=None)
@given(relations(), relations(), relations())
def test_composition_laws(r, s, t):
    if r.dst.size == s.src.size:
        assert set((s @ r).sorted_pairs()) == compose_oracle(r, s)
        assert (s @ r).dagger() == r.dagger() @ s.dagger()
        if s.dst.size == t.src.size:
            assert t @ (s @ r) == (t @ s) @ r
    assert r @ rel_identity(r.src.size) == r == rel_identity(r.dst.size) @ r
    assert r.dagger().dagger() == r


@settings(max_examples=60, deadline=None)
@given(relations(2), relations(2), relations(2), relations(2))
def test_tensor_functorial(r, s, r2, s2):
    if r.dst.size == s.src.size and r2.dst.size == s2.src.size:
        assert (s @ r).tensor(s2 @ r2) == s.tensor(s2) @ r.tensor(r2)


def test_exhaustive_associativity_size_two():
    cells = list(itertools.product(range(2), repeat=2))
    rels = [Relation(2, 2, [c for k, c in enumerate(cells) if m >> k & 1]) for m in range(16)]
    for r, s, t in itertools.product(rels, repeat=3):
        assert t @ (s @ r) == (t @ s) @ r


def test_backend_equality_is_exact():
    r = Relation(2, 2, [(0, 1)])
    assert REL.equal(r, Relation.from_matrix(np.array([[0, 0], [1, 0]])))
    assert REL.residual(r, rel_identity(2)) > 0
