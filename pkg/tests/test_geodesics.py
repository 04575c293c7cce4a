import math

import numpy as np
import pytest

from projpair import kernel
from projpair.errors import NoUniqueGeodesicError, UndefinedError
from projpair.fourier import DftCalculus
from projpair.geodesics import (
    curve_length,
    geodesic_exponent,
    geodesic_point,
    grassmann_distance,
    path_length,
    reduced_min_modulus,
)
from projpair.localization import IndexSet, LocalizationPair
from projpair.pairs import ProjectionPair, halmos_decompose
from projpair.sampling import complex_gaussian, generator, random_admissible_pair, random_projection

from conftest import proj_onto, rotation_pair


def admissible(seed, lo=4, hi=24):
    rng = generator(seed)
    n = int(rng.integers(lo, hi + 1))
    return ProjectionPair(*random_admissible_pair(n, rng))


def test_equal_projections_give_zero_exponent():
    p = random_projection(5, 2, generator(0))
    ex = geodesic_exponent(ProjectionPair(p, p))
    assert ex.norm == 0.0
    assert np.linalg.norm(ex.X) < 1e-12
    assert grassmann_distance(ProjectionPair(p, p)) == 0.0


def test_rotation_pair_exponent(pi3_pair):
    ex = geodesic_exponent(pi3_pair)
    assert abs(ex.norm - math.pi / 3) < 1e-14
    assert abs(kernel.operator_norm(ex.X) - math.pi / 3) < 1e-12
    assert ex.endpoint_residual() < 1e-10
    assert abs(grassmann_distance(pi3_pair) - math.pi / 3) < 1e-14


def test_complementary_pair_has_no_geodesic():
    p = np.diag([1.0, 0.0])
    with pytest.raises(NoUniqueGeodesicError) as info:
        geodesic_exponent(ProjectionPair(p, np.eye(2) - p))
    assert (info.value.dim10, info.value.dim01) == (1, 1)
    assert grassmann_distance(ProjectionPair(p, np.eye(2) - p)) == math.pi / 2


def test_geodesic_point_endpoints(pi3_pair):
    ex = geodesic_exponent(pi3_pair)
    assert np.linalg.norm(geodesic_point(ex, 0.0) - pi3_pair.P) < 1e-14
    assert np.linalg.norm(geodesic_point(ex, 1.0) - pi3_pair.Q) < 1e-9


@pytest.mark.parametrize("seed", range(10))
def test_endpoint_and_codiagonality(seed):
    pair = admissible(seed)
    ex = geodesic_exponent(pair)
    assert ex.endpoint_residual() <= 1e-8
    assert sum(ex.codiagonal_residuals()) <= 1e-8
    assert kernel.hermitian_residual(ex.X) < 1e-14


@pytest.mark.parametrize("seed", range(10))
def test_spectrum_symmetry(seed):
    w = geodesic_exponent(admissible(seed)).spectrum()
    assert np.max(np.abs(np.sort(w) + np.sort(w)[::-1])) <= 1e-9


@pytest.mark.parametrize("seed", range(10))
def test_distance_is_arcsin_of_gap(seed):
    pair = admissible(seed)
    assert abs(math.sin(grassmann_distance(pair)) - kernel.operator_norm(pair.P - pair.Q)) < 1e-8


@pytest.mark.parametrize("seed", range(6))
def test_midpoint_splits_distance(seed):
    pair = admissible(50 + seed)
    ex = geodesic_exponent(pair)
    m = geodesic_point(ex, 0.5)
    half = ex.norm / 2
    assert abs(grassmann_distance(ProjectionPair(pair.P, m)) - half) < 1e-8
    assert abs(grassmann_distance(ProjectionPair(m, pair.Q)) - half) < 1e-8


@pytest.mark.parametrize("seed", range(6))
def test_cos_reduced_min_modulus_is_norm_qp(seed):
    pair = admissible(80 + seed)
    assert halmos_decompose(pair).dim11 == 0
    ex = geodesic_exponent(pair)
    rmm = reduced_min_modulus(ex.X)
    assert abs(math.cos(rmm) - kernel.operator_norm(pair.Q @ pair.P)) < 1e-8


def test_constant_curve_length():
    p = random_projection(4, 2, generator(1))
    assert curve_length([p, p, p], [0.0, 0.5, 1.0]) == 0.0


def test_curve_length_validation():
    p = np.eye(2)
    with pytest.raises(ValueError):
        curve_length([p], [0.0])
    with pytest.raises(ValueError):
        curve_length([p, p], [1.0, 0.0])


def test_geodesic_length_matches_norm():
    ex = geodesic_exponent(rotation_pair(math.pi / 3))
    ts = np.linspace(0, 1, 65)
    length = curve_length([geodesic_point(ex, t) for t in ts], ts)
    assert abs(length - math.pi / 3) < 1e-3
    assert abs(path_length(lambda t: geodesic_point(ex, t), richardson=True) - math.pi / 3) < 1e-8


def test_commutator_curve_length():
    calc = DftCalculus.build(8)
    p = LocalizationPair.build(IndexSet(8, (0, 1)), IndexSet(8, (0, 1))).P
    speed = kernel.operator_norm(kernel.commutator(calc.H, p))
    ts = np.linspace(0, 1, 65)
    curve = [kernel.unitary_exp(calc.H, -t) @ p @ kernel.unitary_exp(calc.H, t) for t in ts]
    assert abs(curve_length(curve, ts) - speed) < 1e-3


def _codiagonal_hermitian(p, rng):
    z = complex_gaussian(rng, p.shape)
    eye = np.eye(p.shape[0])
    y = p @ z @ (eye - p)
    return y + y.conj().T


@pytest.mark.parametrize("seed", range(5))
def test_geodesic_is_shorter_than_perturbed_curves(seed):
    rng = generator(400 + seed)
    pair = admissible(400 + seed, 4, 12)
    ex = geodesic_exponent(pair)
    y = _codiagonal_hermitian(pair.P, rng)
    y /= kernel.operator_norm(y)
    geo = path_length(lambda t: geodesic_point(ex, t), richardson=True)
    for eps in (0.3, 0.05, 1e-3):
        for freq in (1, 2):
            def curve(t):
                w = kernel.unitary_exp(y, eps * math.sin(freq * math.pi * t))
                return w @ geodesic_point(ex, t) @ w.conj().T
            assert np.linalg.norm(curve(1.0) - pair.Q) < 1e-8
            assert path_length(curve, richardson=True) >= geo - 1e-6


def test_reduced_min_modulus_trivial():
    assert abs(reduced_min_modulus(np.diag([0.0, 0.3, 1.0])) - 0.3) < 1e-15
    p = random_projection(5, 2, generator(2))
    assert abs(reduced_min_modulus(p) - 1.0) < 1e-10
    with pytest.raises(UndefinedError):
        reduced_min_modulus(np.zeros((3, 3)))


def test_reduced_min_modulus_fourier_16():
    s = IndexSet.interval(16, 4)
    pair = LocalizationPair.build(s, s).pair
    ex = geodesic_exponent(pair)
    gamma1 = halmos_decompose(pair).angles.min()
    assert abs(reduced_min_modulus(ex.X) - gamma1) < 1e-9


def test_distance_half_pi_iff_gap_one():
    e = np.eye(4)
    # R(P)∩N(Q) = span{e2}: distance π/2 and ‖P−Q‖ = 1
    p = proj_onto(e[0], e[2])
    q = proj_onto((e[0] + e[1]) / math.sqrt(2))
    pair = ProjectionPair(p, q)
    assert halmos_decompose(pair).dim10 == 1
    assert abs(grassmann_distance(pair) - math.pi / 2) < 1e-15
    assert abs(kernel.operator_norm(p - q) - 1.0) < 1e-12
