import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpstar.fhilb import (
    DEFAULT_TOL,
    FHILB,
    LinearMap,
    Tolerance,
    approx_equal,
    is_psd,
    mat_cap,
    mat_compose,
    mat_cup,
    mat_dagger,
    mat_id,
    mat_tensor,
    min_eigenvalue,
    operator_norm,
    psd_power,
)
from helpers import random_complex


def test_dagger_example():
    assert np.array_equal(mat_dagger(LinearMap([[0, 1], [0, 0]])).array, [[0, 0], [1, 0]])


def test_dagger_conjugates():
    f = LinearMap([[1j, 2]])
    assert np.array_equal(f.dagger().array, [[-1j], [2]])
    assert np.array_equal(f.transpose().array, [[1j], [2]])
    assert np.array_equal(f.conj().array, [[-1j, 2]])


def test_cup_vector():
    assert np.array_equal(mat_cup(2).array.reshape(-1), [1, 0, 0, 1])
    assert approx_equal(mat_cap(3), mat_cup(3).dagger())


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_snake(n):
    ident = mat_id(n)
    assert approx_equal(mat_cap(n).tensor(ident) @ ident.tensor(mat_cup(n)), ident)
    assert approx_equal(ident.tensor(mat_cap(n)) @ mat_cup(n).tensor(ident), ident)


def test_compose_and_tensor_agree_with_numpy(rng):
    f, g = random_complex(rng, 3, 2), random_complex(rng, 2, 4)
    assert np.allclose(mat_compose(LinearMap(g), LinearMap(f)).array, f @ g)
    assert np.allclose(mat_tensor(LinearMap(f), LinearMap(g)).array, np.kron(f, g))


def test_compose_mismatch():
    with pytest.raises(ValueError):
        LinearMap(np.eye(2)) @ LinearMap(np.eye(3))


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        LinearMap([[np.nan]])


@pytest.mark.parametrize(
    "m, expected",
    [
        (np.diag([2.0, -1.0]), False),
        (np.array([[1.0, 1.0], [1.0, 1.0]]), True),
        (np.array([[1.0, 1.0], [0.0, 1.0]]), False),
        (np.zeros((3, 3)), True),
    ],
)
def test_is_psd_examples(m, expected):
    assert is_psd(LinearMap(m)) is expected


def test_is_psd_non_square():
    with pytest.raises(ValueError):
        is_psd(LinearMap(np.zeros((2, 3))))


def test_gram_matrices_are_psd(rng):
    for _ in range(20):
        h = random_complex(rng, 3, 4)
        assert is_psd(LinearMap(h.conj().T @ h))


def test_min_eigenvalue_example():
    assert min_eigenvalue(LinearMap([[1.0, 1.0], [1.0, 1.0]])) == pytest.approx(0.0, abs=1e-12)


def test_operator_norm_examples():
    a = np.diag([0.5 + np.sqrt(2) / 2, 0.5])
    assert operator_norm(LinearMap(a)) == pytest.approx(1.2071067811865475, abs=1e-12)
    assert operator_norm(mat_id(3)) == pytest.approx(1.0)
    assert operator_norm(LinearMap(np.zeros((2, 2)))) == 0.0


def test_operator_norm_of_gram(rng):
    h = LinearMap(random_complex(rng, 3, 3))
    assert operator_norm(h.dagger() @ h) == pytest.approx(operator_norm(h) ** 2)


def test_approx_equal_examples():
    m = LinearMap(np.eye(2))
    bump = np.zeros((2, 2))
    bump[0, 0] = 1
    assert approx_equal(m, m)
    assert not approx_equal(m, LinearMap(np.eye(2) + 2 * DEFAULT_TOL * bump))
    assert approx_equal(m, LinearMap(np.eye(2) + DEFAULT_TOL / 2))
    with pytest.raises(ValueError):
        approx_equal(m, mat_id(3))


def test_explicit_tolerance():
    m = LinearMap(np.eye(2))
    assert approx_equal(m, LinearMap(np.eye(2) + 1e-4), Tolerance(1e-3))
    with pytest.raises(ValueError):
        Tolerance(-1.0)


def test_psd_power_inverse_sqrt():
    m = LinearMap(np.diag([4.0, 9.0]))
    assert approx_equal(psd_power(m, -0.5), LinearMap(np.diag([0.5, 1 / 3])))


def test_zero_dimensional_maps():
    z = LinearMap(np.zeros((0, 3)))
    assert z.shape == (0, 3)
    assert (z @ mat_id(3)).shape == (0, 3)
    assert FHILB.zero(2, 0).shape == (0, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**31 - 1))
def test_dagger_laws(a, b, c, seed):
    rng = np.random.default_rng(seed)
    f, g = LinearMap(random_complex(rng, b, a)), LinearMap(random_complex(rng, c, b))
    assert approx_equal((g @ f).dagger(), f.dagger() @ g.dagger())
    assert approx_equal(f.dagger().dagger(), f)
    assert approx_equal(f.transpose().conj(), f.dagger())
    h = LinearMap(random_complex(rng, a, c))
    assert approx_equal((g @ f).tensor(h @ g), g.tensor(h) @ f.tensor(g))
