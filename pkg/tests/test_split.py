import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpstar.cp import is_cp_rel
from cpstar.functors import f_image_per
from cpstar.groupoids import Groupoid, discrete_groupoid, enumerate_groupoids, group_groupoid, per_counterexample
from cpstar.rel import Relation, rel_identity
from cpstar.split import (
    CpmPer,
    Per,
    check_image_bijection,
    check_quotient_bijection,
    cpm_per_check,
    cpm_per_diagonal_domain,
    cpm_per_is_unital,
    domain,
    f_image_test,
    lift_quotient_bijection,
    per_check,
    per_split,
    quotient,
    search_split_iso_cpm_rel,
    split_iso_cpm_rel,
    split_iso_rel,
    split_iso_rel_witness,
)
from helpers import small_groupoids


@st.composite
def pers(draw, max_size=8):
    n = draw(st.integers(0, max_size))
    # label -1 leaves an element outside the domain
    labels = draw(st.lists(st.integers(-1, 3), min_size=n, max_size=n))
    return Per.from_pairs(n, [(x, y) for x in range(n) for y in range(n) if labels[x] >= 0 and labels[x] == labels[y]])


def relabel(g: Groupoid, seed: int) -> Groupoid:
    """Isomorphic copy of ``g`` with its non-identity morphisms shuffled."""
    rng = np.random.default_rng(seed)
    ids = set(g.ids)
    rest = [x for x in range(g.n_morphisms) if x not in ids]
    sigma = list(range(g.n_morphisms))
    for x, y in zip(rest, rng.permutation(rest)):
        sigma[x] = int(y)
    inv_sigma = np.argsort(sigma)
    n = g.n_morphisms
    comp = np.full((n, n), -1)
    for x, y in itertools.product(range(n), repeat=2):
        if g.comp[x, y] >= 0:
            comp[sigma[x], sigma[y]] = sigma[g.comp[x, y]]
    return Groupoid(
        g.n_objects,
        [g.dom[inv_sigma[k]] for k in range(n)],
        [g.cod[inv_sigma[k]] for k in range(n)],
        comp,
        [sigma[i] for i in g.ids],
        [sigma[g.inv[inv_sigma[k]]] for k in range(n)],
        name=g.name + "'",
    )


def test_per_check_examples():
    assert per_check(rel_identity(3))
    assert not per_check(Relation(2, 2, [(0, 1), (1, 0)]))
    assert per_check(Relation(3, 3, []))
    assert not per_check(Relation(2, 3, []))
    with pytest.raises(ValueError):
        Per(Relation(2, 2, [(0, 1)]))


def test_per_counterexample_is_cpm_per():
    c = per_counterexample()
    assert per_check(c.relation) and cpm_per_check(c.relation, 3)
    assert len(quotient(c)) == 7


def test_per_split_total_relation():
    r = per_split(Per.from_classes(2, [[0, 1]]))
    assert r == Relation(1, 2, [(0, 0), (0, 1)])
    assert r.dagger() @ r == rel_identity(1)


def test_per_split_empty():
    r = per_split(Per.from_pairs(3, []))
    assert r.shape == (3, 0)


@settings(max_examples=100, deadline=None)
@given(pers())
def test_per_split_equations(per):
    r = per_split(per)
    assert r @ r.dagger() == per.relation
    assert r.dagger() @ r == rel_identity(len(quotient(per)))


@settings(max_examples=50, deadline=None)
@given(pers())
def test_quotient_partitions_domain(per):
    classes = quotient(per)
    flat = sorted(x for c in classes for x in c)
    assert flat == domain(per)
    assert [c[0] for c in classes] == sorted(c[0] for c in classes)


def test_quotient_examples():
    assert quotient(Per(rel_identity(4))) == [(0,), (1,), (2,), (3,)]
    assert quotient(Per.from_classes(3, [[0, 1, 2]])) == [(0, 1, 2)]


def test_split_iso_rel_examples():
    a = Per.from_classes(5, [[0], [1, 2], [4]])
    b = Per.from_classes(3, [[0], [1], [2]])
    c = Per(rel_identity(4))
    assert split_iso_rel(a, b) and not split_iso_rel(b, c)
    r, s = split_iso_rel_witness(a, b)
    assert s @ r == a.relation and r @ s == b.relation
    assert split_iso_rel(f_image_per(group_groupoid("Z2")), f_image_per(group_groupoid("Z2")))


def test_split_iso_cpm_rel_reflexive():
    c = f_image_per(group_groupoid("Z2"))
    assert split_iso_cpm_rel(c, c) == (0, 1)


def test_z2_image_not_iso_to_discrete_image():
    a, b = f_image_per(group_groupoid("Z2")), f_image_per(discrete_groupoid(2))
    assert len(quotient(a)) == len(quotient(b)) == 2
    res = search_split_iso_cpm_rel(a, b, exhaustive=True)
    assert not res.found and res.candidates == 2
    assert split_iso_cpm_rel(a, b) is None


@pytest.mark.parametrize("g", small_groupoids(5), ids=lambda g: g.name)
def test_split_iso_cpm_rel_on_relabelled_images(g):
    a, b = f_image_per(g), f_image_per(relabel(g, g.n_morphisms))
    alpha = split_iso_cpm_rel(a, b)
    assert alpha is not None and check_quotient_bijection(a, b, alpha)
    back = tuple(int(k) for k in np.argsort(alpha))
    assert check_quotient_bijection(b, a, back)
    r, s = lift_quotient_bijection(a, b, alpha)
    assert is_cp_rel(r) and is_cp_rel(s)
    assert s @ r == a.relation and r @ s == b.relation


def test_per_counterexample_not_iso_to_any_image():
    c = per_counterexample()
    for g in enumerate_groupoids(7):
        assert split_iso_cpm_rel(c, f_image_per(g)) is None


def test_f_image_z2():
    g = group_groupoid("Z2")
    c = f_image_per(g)
    beta = f_image_test(c, g)
    assert beta is not None and check_image_bijection(c, g, beta)


@pytest.mark.parametrize("g", small_groupoids(4), ids=lambda g: g.name)
def test_f_image_found_for_small_groupoids(g):
    c = f_image_per(g)
    assert f_image_test(c, g) is not None
    assert f_image_test(c, g, exhaustive=True) is not None


def test_f_image_images_satisfy_cp_rule():
    for g in small_groupoids(6):
        c = f_image_per(g)
        assert cpm_per_check(c.relation, c.x_size)
        assert cpm_per_is_unital(c) and cpm_per_diagonal_domain(c)


def test_unitality_criteria_differ():
    total = CpmPer(2, Relation(4, 4, itertools.product(range(4), repeat=2)))
    assert cpm_per_diagonal_domain(total)
    assert not cpm_per_is_unital(total)


def test_per_counterexample_unital():
    c = per_counterexample()
    assert cpm_per_is_unital(c) and cpm_per_diagonal_domain(c)
    assert (2, 2) not in c.relation  # (0,2) is outside the domain


def test_cpm_per_rejects_missing_swap():
    with pytest.raises(ValueError):
        CpmPer.from_pairs(2, [((0, 1), (0, 1)), ((0, 0), (0, 0)), ((1, 1), (1, 1))])


def test_quotient_size_law():
    for g in small_groupoids(6):
        assert len(quotient(f_image_per(g))) == g.n_morphisms
