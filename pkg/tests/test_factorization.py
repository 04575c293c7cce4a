import numpy as np
import pytest

from projpair import kernel
from projpair.errors import NotAProjectionError, NotAProjectionProductError
from projpair.factorization import canonical_factorization, factorization_compare, is_canonical
from projpair.localization import IndexSet, LocalizationPair
from projpair.pairs import position_dims
from projpair.sampling import generator, random_admissible_pair, random_pair, random_projection

from conftest import proj_onto


def test_zero_operator():
    f = canonical_factorization(np.zeros((3, 3)))
    assert not f.P0.any() and not f.Q0.any()


def test_projection_factors_as_itself():
    p = random_projection(5, 2, generator(1))
    f = canonical_factorization(p)
    assert np.linalg.norm(f.P0 - p) < 1e-10
    assert np.linalg.norm(f.Q0 - p) < 1e-10


def test_admissible_product():
    p, q = random_admissible_pair(10, generator(2))
    t = p @ q
    f = canonical_factorization(t)
    assert kernel.operator_norm(f.P0 @ f.Q0 - t) < 1e-9
    # R(P0) is the column space of T, N(Q0) its nullspace
    assert kernel.rank(f.P0) == kernel.rank(t)
    assert np.linalg.norm(f.P0 @ t - t) < 1e-10
    assert np.linalg.norm(t @ f.Q0 - t) < 1e-10


def test_non_product_rejected():
    with pytest.raises(NotAProjectionProductError) as info:
        canonical_factorization(np.array([[1.0, 1.0], [0.0, 0.0]]))
    assert info.value.residual > 1e-9


def test_is_canonical_trivial():
    q = random_projection(4, 2, generator(3))
    assert is_canonical(q, q)
    assert not is_canonical(np.eye(4), q)


def test_is_canonical_fourier_pair():
    s = IndexSet.interval(16, 4)
    lp = LocalizationPair.build(s, s)
    d11, _, _, d01 = position_dims(lp.pair)
    assert d11 == d01 == 0
    assert is_canonical(lp.P, lp.Q)


def test_is_canonical_rejects_nonprojection():
    with pytest.raises(NotAProjectionError):
        is_canonical(np.diag([0.5, 0.0]), np.eye(2))


@pytest.mark.parametrize("seed", range(8))
def test_canonical_output_is_canonical(seed):
    rng = generator(seed)
    n = int(rng.integers(2, 16))
    p, q = random_pair(n, int(rng.integers(0, n + 1)), int(rng.integers(0, n + 1)), rng)
    f = canonical_factorization(p @ q)
    assert is_canonical(f.P0, f.Q0)


def test_compare_on_canonical_pair():
    p, q = random_admissible_pair(8, generator(4))
    f = canonical_factorization(p @ q)
    c = factorization_compare(f.P0, f.Q0, samples=500, seed=1)
    assert c.max_violation <= 1e-12
    assert abs(c.norm_gap) < 1e-10


def test_compare_identity_against_projection():
    q = random_projection(6, 3, generator(5))
    c = factorization_compare(np.eye(6), q, samples=200)
    assert c.norm_gap > 0.5
    assert c.max_violation <= 1e-12


def test_compare_random_pair():
    p, q = random_pair(12, 7, 5, generator(6))
    c = factorization_compare(p, q, samples=1000, seed=0)
    assert c.max_violation <= 1e-9
    assert c.norm_gap >= -1e-9


def test_compare_is_seed_deterministic():
    p, q = random_pair(6, 3, 4, generator(7))
    a = factorization_compare(p, q, samples=50, seed=11)
    b = factorization_compare(p, q, samples=50, seed=11)
    assert a.max_violation == b.max_violation


def test_compare_with_corners():
    e = np.eye(4)
    p = proj_onto(e[0], e[1], e[2])
    q = proj_onto(e[0], e[3])
    c = factorization_compare(p, q, samples=300)
    assert c.max_violation <= 1e-9
    assert kernel.operator_norm(c.canonical.P0 - c.canonical.Q0) <= kernel.operator_norm(p - q) + 1e-9
