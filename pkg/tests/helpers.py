"""Random samplers shared by the test modules."""
import numpy as np

from cpstar.fhilb import LinearMap
from cpstar.frobenius import classical_structure, normalise, pair_of_pants, tensor_algebra
from cpstar.biproducts import oplus_algebra
from cpstar.groupoids import enumerate_groupoids, groupoid_to_algebra
from cpstar.monoidal import permutation
from cpstar.rel import Relation


def random_relation(rng, src, dst, density=0.4):
    return Relation.from_matrix(rng.random((dst, src)) < density)


def random_complex(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def small_groupoids(max_morphisms):
    return [g for n in range(1, max_morphisms + 1) for g in enumerate_groupoids(n)]


def cpstar_closure(r, g, h):
    """Smallest relation containing ``r`` that is closed under inverses and domain identities."""
    pairs = set()
    for x, y in r.sorted_pairs():
        pairs |= {
            (x, y),
            (int(g.inv[x]), int(h.inv[y])),
            (int(g.ids[g.dom[x]]), int(h.ids[h.dom[y]])),
            (int(g.ids[g.cod[x]]), int(h.ids[h.cod[y]])),
        }
    return Relation(r.src, r.dst, pairs)


def random_cpstar_rel(rng, g, h, density=0.3):
    return cpstar_closure(random_relation(rng, g.n_morphisms, h.n_morphisms, density), g, h)


def fhilb_algebras():
    """Normalised FHilb algebras used across the sampled checks."""
    raw = {
        "pants1": pair_of_pants(1, "fhilb"),
        "pants2": pair_of_pants(2, "fhilb"),
        "classical2": classical_structure(2, "fhilb"),
        "classical3": classical_structure(3, "fhilb"),
        "pants2_x_classical2": tensor_algebra(pair_of_pants(2, "fhilb"), classical_structure(2, "fhilb")),
    }
    algs = {k: normalise(a)[0] for k, a in raw.items()}
    algs["pants2_plus_c"] = oplus_algebra(algs["pants2"], algs["pants1"])
    return algs


def random_kraus_map(rng, a, b, ancilla):
    """``h(x) = sum_k K_k x K_k^dagger`` as a ``b^2 x a^2`` matrix."""
    ks = [random_complex(rng, b, a) for _ in range(ancilla)]
    return LinearMap(sum(np.kron(k.conj(), k) for k in ks))


def random_cpstar_fhilb(rng, alg_a, alg_b, ancilla=2):
    """A CP* morphism obtained from a random CP map squeezed between the two F-projections."""
    from cpstar.functors import functor_F_object, reconstruct_morphism

    pa = functor_F_object(alg_a).projection
    pb = functor_F_object(alg_b).projection
    na, nb = int(round(np.sqrt(pa.shape[0]))), int(round(np.sqrt(pb.shape[0])))
    h = pb @ random_kraus_map(rng, na, nb, ancilla) @ pa
    return reconstruct_morphism(h, alg_a, alg_b), h


def pair_shuffle(backend, a, b):
    """``A* A B* B -> (A B)* (A B)``, the reordering relating F(A) (x) F(B) to F(A (x) B)."""
    return permutation(backend, [a, a, b, b], [0, 2, 1, 3])


def rel_algebra(g):
    return groupoid_to_algebra(g)
