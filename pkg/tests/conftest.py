import math

import numpy as np
import pytest

from projpair.pairs import ProjectionPair
from projpair.sampling import complex_gaussian, generator


def rotation_pair(theta):
    """P = diag(1, 0), Q = projector onto (cos θ, sin θ)."""
    v = np.array([math.cos(theta), math.sin(theta)], dtype=complex)
    return ProjectionPair(np.diag([1.0, 0.0]).astype(complex), np.outer(v, v.conj()))


def random_hermitian(n, seed):
    z = complex_gaussian(generator(seed), (n, n))
    return 0.5 * (z + z.conj().T)


def proj_onto(*vectors):
    """Orthogonal projection onto the span of the given vectors (numpy oracle)."""
    a = np.array(vectors, dtype=complex).T
    q, _ = np.linalg.qr(a)
    return q @ q.conj().T


@pytest.fixture
def pi3_pair():
    return rotation_pair(math.pi / 3)
