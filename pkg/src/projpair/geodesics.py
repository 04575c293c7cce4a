"""Minimal geodesics of the Grassmann manifold between two projections.

Geodesics starting at P are curves ``δ(t) = exp(itX) P exp(-itX)`` with X
Hermitian and co-diagonal with respect to P. When R(P)∩N(Q) and N(P)∩R(Q)
are both trivial there is a unique such X with ``δ(1) = Q``; in the Halmos
basis it vanishes on H11 ⊕ H00 and acts on each rotation block as
``[[0, iθ], [-iθ, 0]]``.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import kernel
from .errors import NoUniqueGeodesicError, UndefinedError
from .kernel import DEFAULT_TOL
from .pairs import CORNER_ATOL, ProjectionPair, halmos_decompose


@dataclass(frozen=True)
class GeodesicExponent:
    X: np.ndarray
    norm: float
    pair: ProjectionPair
    angles: np.ndarray

    def codiagonal_residuals(self):
        """``(‖PXP‖, ‖(1−P)X(1−P)‖, ‖QXQ‖, ‖(1−Q)X(1−Q)‖)``."""
        eye = np.eye(self.pair.dim)
        out = []
        for e in (self.pair.P, self.pair.Q):
            out.append(kernel.operator_norm(e @ self.X @ e))
            out.append(kernel.operator_norm((eye - e) @ self.X @ (eye - e)))
        return tuple(out)

    def endpoint_residual(self):
        return kernel.operator_norm(geodesic_point(self, 1.0) - self.pair.Q)

    def spectrum(self):
        return kernel.herm_eigvals(self.X)


def geodesic_exponent(pair, tol=DEFAULT_TOL, corner_atol=CORNER_ATOL):
    """The unique geodesic exponent from ``pair.P`` to ``pair.Q``."""
    decomp = halmos_decompose(pair, tol, corner_atol)
    if decomp.dim10 or decomp.dim01:
        raise NoUniqueGeodesicError(decomp.dim10, decomp.dim01)
    e = decomp.generic_p_basis.basis
    f = decomp.generic_q_complement_basis.basis
    theta = decomp.angles
    # X = Σ_k θ_k (i e_k f_k* − i f_k e_k*)
    ef = (e * theta) @ f.conj().T
    x = 1j * ef - 1j * ef.conj().T
    norm = float(theta.max()) if theta.size else 0.0
    return GeodesicExponent(x, norm, pair, theta)


def geodesic_point(exponent, t):
    """δ(t) = exp(itX) P exp(−itX)."""
    u = kernel.unitary_exp(exponent.X, t)
    pt = u @ exponent.pair.P @ u.conj().T
    return 0.5 * (pt + pt.conj().T)


def grassmann_distance(pair, tol=DEFAULT_TOL, corner_atol=CORNER_ATOL):
    """Largest principal angle, with π/2 whenever H10 or H01 is nontrivial."""
    decomp = halmos_decompose(pair, tol, corner_atol)
    if decomp.dim10 or decomp.dim01:
        return math.pi / 2
    return float(decomp.angles.max()) if decomp.angles.size else 0.0


def curve_length(samples, times):
    """Chordal estimate Σ‖γ(t_{k+1}) − γ(t_k)‖ of the Finsler length."""
    if len(samples) < 2 or len(samples) != len(times):
        raise ValueError("need at least two samples, one per time")
    times = np.asarray(times, dtype=float)
    if np.any(np.diff(times) <= 0):
        raise ValueError("sample times must be strictly increasing")
    return float(
        sum(kernel.operator_norm(samples[k + 1] - samples[k]) for k in range(len(samples) - 1))
    )


def path_length(curve, a=0.0, b=1.0, panels=64, richardson=False):
    """Length of ``curve`` (t -> projection) on [a, b] from uniform chords.

    Chordal sums underestimate with an O(h²) error, so one doubling step
    of Richardson extrapolation is available.
    """
    def chords(m):
        ts = np.linspace(a, b, m + 1)
        return curve_length([curve(t) for t in ts], ts)

    coarse = chords(panels)
    if not richardson:
        return coarse
    fine = chords(2 * panels)
    return fine + (fine - coarse) / 3.0


def reduced_min_modulus(a, tol=DEFAULT_TOL):
    """Smallest |λ| over eigenvalues of Hermitian A with |λ| > tol·‖A‖."""
    w = kernel.herm_eigvals(a, tol)
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    nonzero = np.abs(w)[np.abs(w) > tol * scale] if scale > 0 else np.zeros(0)
    if nonzero.size == 0:
        raise UndefinedError("reduced minimum modulus of the zero operator is undefined")
    return float(nonzero.min())
