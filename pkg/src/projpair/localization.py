"""Discrete time- and band-limiting pairs and their uncertainty reports.

For index sets I, J ⊂ {0, …, n−1} the time limiter is ``P_I = diag(χ_I)``
and the band limiter is ``Q_J = U* P_J U``. Every entry of the unitary DFT
has modulus ``1/√n``, so ``Tr(P_I Q_J P_I) = |I|·|J|/n`` exactly; this is the
normalization used for all Hilbert-Schmidt identities below.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .errors import IndexSetError, ValidationError
from .fourier import DftCalculus, build_dft
from .geodesics import grassmann_distance
from .kernel import DEFAULT_TOL
from .pairs import CORNER_ATOL, ProjectionPair, halmos_decompose


@dataclass(frozen=True)
class IndexSet:
    n: int
    members: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise IndexSetError("ambient dimension must be at least 1")
        m = tuple(int(j) for j in self.members)
        if any(j < 0 or j >= self.n for j in m):
            raise IndexSetError(f"index out of range [0, {self.n}) in {m}")
        if list(m) != sorted(set(m)):
            m = tuple(sorted(set(m)))
        object.__setattr__(self, "members", m)

    @classmethod
    def interval(cls, n, length, start=0):
        return cls(n, tuple((start + k) % n for k in range(length)))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def symmetric_closure(self):
        return IndexSet(self.n, tuple(set(self.members) | {(-j) % self.n for j in self.members}))

    def is_symmetric(self):
        s = set(self.members)
        return all((-j) % self.n in s for j in s)


def time_limiter(index_set):
    n = index_set.n
    p = np.zeros((n, n), dtype=np.complex128)
    idx = list(index_set.members)
    p[idx, idx] = 1.0
    return p


def band_limiter(index_set, u):
    u = kernel.as_matrix(u, "U")
    if u.shape != (index_set.n, index_set.n):
        raise ValidationError(f"DFT of shape {u.shape} does not match n={index_set.n}")
    cols = u[list(index_set.members), :]
    q = cols.conj().T @ cols
    return 0.5 * (q + q.conj().T)


@dataclass(frozen=True)
class LocalizationPair:
    n: int
    I: IndexSet
    J: IndexSet
    P: np.ndarray
    Q: np.ndarray

    @classmethod
    def build(cls, I, J, u=None):
        if I.n != J.n:
            raise ValidationError("index sets live in different dimensions")
        u = build_dft(I.n) if u is None else u
        return cls(I.n, I, J, time_limiter(I), band_limiter(J, u))

    @property
    def pair(self):
        return ProjectionPair(self.P, self.Q)


@dataclass(frozen=True)
class LocalizationReport:
    n: int
    set_i: tuple
    set_j: tuple
    gammas: np.ndarray
    norm_pq: float
    hs_sq: float
    expected_hs_sq: float
    corner_dims: tuple
    distance: float
    lambda1: float
    commutator_norm: float = None
    angle_cos_sq_sum: float = field(default=0.0, repr=False)


def localization_report(n, I, J, tol=DEFAULT_TOL, corner_atol=CORNER_ATOL, calc=None):
    """Full spectral report for the pair (P_I, Q_J) at dimension n."""
    if I.n != n or J.n != n:
        raise ValidationError(f"index sets must live in dimension {n}")
    if calc is None:
        calc = DftCalculus.build(n, tol) if list(I.members) == list(J.members) else None
    u = calc.U if calc is not None else build_dft(n)
    lp = LocalizationPair.build(I, J, u)
    p, q = lp.P, lp.Q
    rows = list(I.members)
    qi = q[rows, :]  # P_I Q_J keeps only the rows in I
    norm_pq = kernel.operator_norm(qi) if rows else 0.0
    compressed = q[np.ix_(rows, rows)]
    lambda1 = float(kernel.herm_eigvals(0.5 * (compressed + compressed.conj().T))[-1]) if rows else 0.0
    hs_sq = float(np.trace(p @ q @ p).real)

    decomp = halmos_decompose(lp.pair, tol, corner_atol)
    gammas = np.array(decomp.angles)
    distance = grassmann_distance(lp.pair, tol, corner_atol)
    cos_sq = float(np.sum(np.cos(gammas) ** 2)) + decomp.dim11

    comm = None
    if list(I.members) == list(J.members):
        comm = kernel.operator_norm(kernel.commutator(calc.H, p))

    return LocalizationReport(
        n=n,
        set_i=I.members,
        set_j=J.members,
        gammas=gammas,
        norm_pq=norm_pq,
        hs_sq=hs_sq,
        expected_hs_sq=len(I) * len(J) / n,
        corner_dims=decomp.corner_dims,
        distance=distance,
        lambda1=lambda1,
        commutator_norm=comm,
        angle_cos_sq_sum=cos_sq,
    )


@dataclass(frozen=True)
class ConcentrationReport:
    eps_i: float
    eps_j: float
    bound: float
    norm_pq: float
    satisfied: bool
    ds_product_bound: float
    ds_satisfied: bool


def concentration_check(n, I, J, f, tol=DEFAULT_TOL):
    """Off-support masses of f and its transform against ‖P_I Q_J‖.

    The inequality ``‖P_I Q_J‖ ≥ 1 − ε_I − ε_J`` always holds, so a false
    ``satisfied`` flag means a bug upstream.
    """
    f = np.asarray(f, dtype=np.complex128).reshape(-1)
    if f.size != n:
        raise ValidationError(f"vector of length {f.size} does not match n={n}")
    norm = float(np.linalg.norm(f))
    if abs(norm - 1.0) > tol:
        raise ValidationError(f"f must have unit norm, got {norm:.12g}")
    u = build_dft(n)
    lp = LocalizationPair.build(I, J, u)
    outside_i = np.ones(n, dtype=bool)
    outside_i[list(I.members)] = False
    outside_j = np.ones(n, dtype=bool)
    outside_j[list(J.members)] = False
    fh = u @ f
    eps_i = float(np.vdot(f[outside_i], f[outside_i]).real)
    eps_j = float(np.vdot(fh[outside_j], fh[outside_j]).real)
    bound = 1.0 - eps_i - eps_j
    norm_pq = kernel.operator_norm(lp.Q[list(I.members), :]) if len(I) else 0.0
    ds = n * max(bound, 0.0) ** 2
    return ConcentrationReport(
        eps_i=eps_i,
        eps_j=eps_j,
        bound=bound,
        norm_pq=norm_pq,
        satisfied=norm_pq >= bound - tol,
        ds_product_bound=ds,
        ds_satisfied=len(I) * len(J) >= ds - tol * max(1.0, ds),
    )


def top_singular_vector(n, I, J):
    """Right singular vector of P_I Q_J for the largest singular value."""
    lp = LocalizationPair.build(I, J)
    _, s, v = kernel.svd(lp.P @ lp.Q)
    if s.size == 0:
        raise ValidationError("P_I Q_J is zero; no top singular vector")
    return v[:, 0]


def uncertainty_sweep(ns, fill, tol=DEFAULT_TOL, corner_atol=CORNER_ATOL):
    """One report per n with I = J = the first ⌊fill·n⌋ indices, ordered by n."""
    if not 0.0 < fill < 1.0:
        raise ValidationError("fill must lie strictly between 0 and 1")
    rows = []
    for n in sorted(ns):
        if n < 4:
            raise ValidationError(f"sweep dimensions must be at least 4, got {n}")
        size = math.floor(fill * n)
        if size == 0:
            raise ValidationError(f"fill {fill} leaves an empty set at n={n}")
        s = IndexSet.interval(n, size)
        rows.append(localization_report(n, s, s, tol, corner_atol))
    return rows
