"""Spectral calculus of the unitary DFT.

With ``U[j, k] = exp(-2πi jk/n)/√n`` one has U⁴ = 1 and U² is index
negation ``j -> -j mod n``. The spectral projections follow from U alone:

    E₁   = (1 + U + U² + U³)/4      E₋₁ = (1 − U + U² − U³)/4
    Eᵢ   = (1 − iU − U² + iU³)/4    E₋ᵢ = (1 + iU − U² − iU³)/4

and ``H = −π E₋₁ + (π/2) Eᵢ − (π/2) E₋ᵢ`` is the Hermitian logarithm with
``exp(iH) = U``.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import kernel
from .errors import SymmetryRequiredError, ValidationError
from .kernel import DEFAULT_TOL


def build_dft(n):
    """Unitary DFT matrix of size n."""
    if n < 1:
        raise ValidationError("DFT size must be at least 1")
    j = np.arange(n)
    # reduce jk mod n before exponentiating to keep the phases exact
    return np.exp(-2j * np.pi * (np.outer(j, j) % n) / n) / math.sqrt(n)


@dataclass(frozen=True)
class Eigenprojections:
    E1: np.ndarray
    Eneg1: np.ndarray
    Ei: np.ndarray
    Enegi: np.ndarray

    def ranks(self):
        """Traces rounded to integers, in the order (1, −1, i, −i)."""
        return tuple(int(round(np.trace(e).real)) for e in (self.E1, self.Eneg1, self.Ei, self.Enegi))

    def __iter__(self):
        return iter((self.E1, self.Eneg1, self.Ei, self.Enegi))


def _check_order_four(u, tol):
    u = kernel.as_matrix(u, "U")
    if u.shape[0] != u.shape[1]:
        raise ValidationError("U must be square")
    u2 = u @ u
    u3 = u2 @ u
    res = kernel.hs_norm(u3 @ u - np.eye(u.shape[0]))
    if res > tol:
        raise ValidationError(f"U^4 != I (residual {res:.3e})")
    return u, u2, u3


def dft_eigenprojections(u, tol=DEFAULT_TOL):
    u, u2, u3 = _check_order_four(u, tol)
    eye = np.eye(u.shape[0])
    return Eigenprojections(
        (eye + u + u2 + u3) / 4,
        (eye - u + u2 - u3) / 4,
        (eye - 1j * u - u2 + 1j * u3) / 4,
        (eye + 1j * u - u2 - 1j * u3) / 4,
    )


def validate_eigenprojections(proj, tol=DEFAULT_TOL):
    es = list(proj)
    n = es[0].shape[0]
    for e in es:
        kernel.require_projection(e, tol, "eigenprojection")
    total = kernel.hs_norm(sum(es) - np.eye(n))
    if total > tol:
        raise ValidationError(f"eigenprojections do not sum to I (residual {total:.3e})")


def dft_log(proj, tol=DEFAULT_TOL):
    """Hermitian logarithm H of U from its spectral projections."""
    validate_eigenprojections(proj, tol)
    h = -math.pi * proj.Eneg1 + (math.pi / 2) * proj.Ei - (math.pi / 2) * proj.Enegi
    return 0.5 * (h + h.conj().T)


def even_projection(u, tol=DEFAULT_TOL):
    """Projection onto index-negation-invariant vectors, (1 + U²)/2."""
    u, u2, _ = _check_order_four(u, tol)
    return (np.eye(u.shape[0]) + u2) / 2


def parity_rank(n):
    """rank of E_e: fixed points of j -> -j mod n plus one per 2-cycle."""
    fixed = 1 + (n % 2 == 0)
    return fixed + (n - fixed) // 2 if n > 1 else 1


@dataclass(frozen=True)
class DftCalculus:
    n: int
    U: np.ndarray
    projections: Eigenprojections
    H: np.ndarray
    parity: np.ndarray
    Ee: np.ndarray

    @classmethod
    def build(cls, n, tol=DEFAULT_TOL):
        u = build_dft(n)
        proj = dft_eigenprojections(u, tol)
        return cls(n, u, proj, dft_log(proj, tol), u @ u, even_projection(u, tol))

    @property
    def E1(self):
        return self.projections.E1

    @property
    def Eneg1(self):
        return self.projections.Eneg1

    @property
    def Ei(self):
        return self.projections.Ei

    @property
    def Enegi(self):
        return self.projections.Enegi

    def log_residual(self):
        """‖exp(iH) − U‖."""
        return kernel.operator_norm(kernel.unitary_exp(self.H) - self.U)


def negate_indices(members, n):
    return sorted({(-j) % n for j in members})


def is_symmetric(members, n):
    s = set(members)
    return all((-j) % n in s for j in s)


@dataclass(frozen=True)
class SymmetricIdentityCheck:
    """Both sides of the factored commutator identities for a symmetric set.

    ``residual_factored`` and ``rhs_norm`` test
    ``[H,P] = ((1+i)π/2)[U,P]E_e`` and ``‖[H,P]‖ = (π/√2)‖(P−Q)E_e‖``;
    ``residual_split`` and ``split_rhs_norm`` test the form
    ``[H,P] = (π/2)[U,P](E_e − iE_o)`` that follows from the projection
    formula for H.
    """

    residual_factored: float
    lhs_norm: float
    rhs_norm: float
    even_compression_norm: float
    residual_split: float
    split_rhs_norm: float

    def holds(self, tol=DEFAULT_TOL):
        return self.residual_factored <= tol and abs(self.lhs_norm - self.rhs_norm) <= tol


def symmetric_identity_check(n, members, calc=None):
    members = sorted(set(int(j) for j in members))
    if any(j < 0 or j >= n for j in members):
        raise ValidationError(f"index out of range for n={n}")
    if not is_symmetric(members, n):
        raise SymmetryRequiredError(f"set {members} is not invariant under j -> -j mod {n}")
    calc = calc or DftCalculus.build(n)
    u, h, ee = calc.U, calc.H, calc.Ee
    eo = np.eye(n) - ee
    p = np.zeros((n, n), dtype=np.complex128)
    p[members, members] = 1.0
    q = u.conj().T @ p @ u
    ch = kernel.commutator(h, p)
    cu = kernel.commutator(u, p)
    diff_even = (p - q) @ ee
    return SymmetricIdentityCheck(
        residual_factored=kernel.operator_norm(ch - (1 + 1j) * (math.pi / 2) * cu @ ee),
        lhs_norm=kernel.operator_norm(ch),
        rhs_norm=(math.pi / math.sqrt(2)) * kernel.operator_norm(diff_even),
        even_compression_norm=kernel.operator_norm(ee @ (p - q) @ ee),
        residual_split=kernel.operator_norm(ch - (math.pi / 2) * cu @ (ee - 1j * eo)),
        split_rhs_norm=(math.pi / 2)
        * max(kernel.operator_norm(diff_even), kernel.operator_norm((p - q) @ eo)),
    )
