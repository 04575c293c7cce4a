"""Canonical factorization of a product of two orthogonal projections.

If T = PQ for orthogonal projections P and Q, then also
``T = P_{R(T)} P_{N(T)⊥}``, and this pair is the minimal one: for every other
factorization ``‖P₀f − Q₀f‖ ≤ ‖Pf − Qf‖`` pointwise.
"""
from dataclasses import dataclass

import numpy as np

from . import kernel
from .errors import NotAProjectionProductError
from .kernel import DEFAULT_TOL, SubspaceBasis
from .sampling import random_unit_vectors


@dataclass(frozen=True)
class Factorization:
    T: np.ndarray
    P0: np.ndarray
    Q0: np.ndarray
    canonical: bool = True


def canonical_factorization(t, tol=DEFAULT_TOL):
    t = kernel.as_matrix(t, "T")
    u, _, v = kernel.svd(t)
    p0 = kernel.projector_from_basis(SubspaceBasis(t.shape[0], u))
    q0 = kernel.projector_from_basis(SubspaceBasis(t.shape[1], v))
    residual = kernel.operator_norm(p0 @ q0 - t)
    if residual > tol:
        raise NotAProjectionProductError(residual)
    return Factorization(t, p0, q0, True)


def is_canonical(p, q, tol=DEFAULT_TOL):
    """True iff R(PQ) is all of R(P) and N(PQ) = N(Q)."""
    p = kernel.require_projection(p, tol, "P")
    q = kernel.require_projection(q, tol, "Q")
    t = p @ q
    rank_t = kernel.rank(t)
    rank_p = kernel.rank(p)
    rank_q = kernel.rank(q)
    # dim N(PQ) = dim N(Q) + dim(R(Q)∩N(P)); both conditions are rank equalities
    return rank_t == rank_p and rank_t == rank_q


@dataclass(frozen=True)
class FactorizationComparison:
    max_violation: float
    norm_gap: float
    canonical: Factorization


def factorization_compare(p, q, samples=1000, seed=0, tol=DEFAULT_TOL):
    """Sample ``‖P₀f − Q₀f‖ − ‖Pf − Qf‖`` over random unit vectors f."""
    p = kernel.require_projection(p, tol, "P")
    q = kernel.require_projection(q, tol, "Q")
    fac = canonical_factorization(p @ q, tol)
    fs = random_unit_vectors(p.shape[0], samples, seed)
    d_can = fac.P0 - fac.Q0
    d_given = p - q
    gaps = np.linalg.norm(fs @ d_can.T, axis=1) - np.linalg.norm(fs @ d_given.T, axis=1)
    return FactorizationComparison(
        max_violation=float(gaps.max()) if samples else 0.0,
        norm_gap=kernel.operator_norm(d_given) - kernel.operator_norm(d_can),
        canonical=fac,
    )
