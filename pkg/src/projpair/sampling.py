"""Seeded random projections and vectors.

All randomness comes from ``numpy.random.Generator(PCG64(seed))``; complex
Gaussian entries are drawn as real part then imaginary part, row by row.
"""
import numpy as np


def generator(seed):
    return np.random.Generator(np.random.PCG64(seed))


def _rng(rng):
    return rng if isinstance(rng, np.random.Generator) else generator(rng)


def complex_gaussian(rng, shape):
    rng = _rng(rng)
    z = rng.standard_normal(tuple(shape) + (2,))
    return z[..., 0] + 1j * z[..., 1]


def random_unit_vectors(n, count, seed):
    """``count`` independent unit vectors in C^n as the rows of an array."""
    z = complex_gaussian(generator(seed), (count, n))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def random_unitary(n, rng):
    """Haar-distributed unitary via QR with the diagonal phase fix."""
    z = complex_gaussian(rng, (n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_projection(n, rank, rng):
    u = random_unitary(n, _rng(rng))[:, :rank]
    p = u @ u.conj().T
    return 0.5 * (p + p.conj().T)


def random_pair(n, rank_p, rank_q, rng):
    rng = _rng(rng)
    return random_projection(n, rank_p, rng), random_projection(n, rank_q, rng)


def random_admissible_pair(n, rng, rank=None, trivial_h11=True):
    """Equal-rank pair in general position, so R(P)∩N(Q) = N(P)∩R(Q) = 0.

    With ``trivial_h11`` the common rank is at most n/2, which also keeps
    R(P)∩R(Q) trivial.
    """
    rng = _rng(rng)
    top = n // 2 if trivial_h11 else n - 1
    k = rank if rank is not None else int(rng.integers(1, max(top, 1) + 1))
    return random_pair(n, k, k, rng)
