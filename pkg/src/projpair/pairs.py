"""Halmos decomposition of a pair of orthogonal projections.

Given P and Q the space splits as

    H = H11 ⊕ H00 ⊕ H10 ⊕ H01 ⊕ (L × L)

with H11 = R(P)∩R(Q), H00 = N(P)∩N(Q), H10 = R(P)∩N(Q), H01 = N(P)∩R(Q).
On the generic part L × L the pair is a direct sum of 2×2 rotation blocks

    P = [[1, 0], [0, 0]],   Q = [[c², cs], [cs, s²]],   c = cos θ, s = sin θ,

with 0 < θ < π/2. On the generic part P − Q has the eigenvalue pairs ±sin θ;
its kernel is H11 ⊕ H00, and H10, H01 sit at +1 and −1.
"""
from dataclasses import dataclass

import numpy as np

from . import kernel
from .errors import InternalConsistencyError, ValidationError
from .kernel import DEFAULT_TOL, SubspaceBasis

CORNER_ATOL = 1e-8


@dataclass(frozen=True)
class ProjectionPair:
    P: np.ndarray
    Q: np.ndarray

    def __post_init__(self):
        p = kernel.as_matrix(self.P, "P")
        q = kernel.as_matrix(self.Q, "Q")
        if p.shape != q.shape:
            raise ValidationError(f"P and Q differ in shape: {p.shape} vs {q.shape}")
        object.__setattr__(self, "P", p)
        object.__setattr__(self, "Q", q)

    @property
    def dim(self):
        return self.P.shape[0]

    @classmethod
    def checked(cls, p, q, tol=DEFAULT_TOL):
        """Validate two approximate projections and snap each to the nearest exact one."""
        kernel.require_projection(p, tol, "P")
        kernel.require_projection(q, tol, "Q")
        return cls(kernel.nearest_projection(p, tol), kernel.nearest_projection(q, tol))


@dataclass(frozen=True)
class AngleSpectrum:
    """Distinct angles with multiplicities; ``halfpi_multiplicity`` is the rank at π/2."""

    gammas: np.ndarray
    multiplicities: tuple
    halfpi_multiplicity: int = 0


@dataclass(frozen=True)
class HalmosDecomposition:
    basis11: SubspaceBasis
    basis00: SubspaceBasis
    basis10: SubspaceBasis
    basis01: SubspaceBasis
    generic_p_basis: SubspaceBasis
    generic_q_complement_basis: SubspaceBasis
    angles: np.ndarray

    @property
    def dim11(self):
        return self.basis11.dim

    @property
    def dim00(self):
        return self.basis00.dim

    @property
    def dim10(self):
        return self.basis10.dim

    @property
    def dim01(self):
        return self.basis01.dim

    @property
    def corner_dims(self):
        return (self.dim11, self.dim00, self.dim10, self.dim01)

    @property
    def ambient_dim(self):
        return self.basis11.ambient_dim

    def assembled_basis(self):
        """Unitary whose columns are H11, H00, H10, H01, then the two copies of L."""
        return np.hstack(
            [
                self.basis11.basis,
                self.basis00.basis,
                self.basis10.basis,
                self.basis01.basis,
                self.generic_p_basis.basis,
                self.generic_q_complement_basis.basis,
            ]
        )

    def block_forms(self):
        """The model matrices of P and Q in the assembled basis."""
        d11, d00, d10, d01 = self.corner_dims
        k = self.angles.size
        c = np.cos(self.angles)
        s = np.sin(self.angles)
        p_diag = np.concatenate([np.ones(d11), np.zeros(d00), np.ones(d10), np.zeros(d01)])
        q_diag = np.concatenate([np.ones(d11), np.zeros(d00), np.zeros(d10), np.ones(d01)])
        m = p_diag.size
        n = m + 2 * k
        p = np.zeros((n, n), dtype=np.complex128)
        q = np.zeros((n, n), dtype=np.complex128)
        p[:m, :m] = np.diag(p_diag)
        q[:m, :m] = np.diag(q_diag)
        gp = slice(m, m + k)
        gq = slice(m + k, n)
        p[gp, gp] = np.eye(k)
        q[gp, gp] = np.diag(c * c)
        q[gp, gq] = np.diag(c * s)
        q[gq, gp] = np.diag(c * s)
        q[gq, gq] = np.diag(s * s)
        return p, q

    def block_residuals(self, pair):
        w = self.assembled_basis()
        bp, bq = self.block_forms()
        rp = kernel.operator_norm(w.conj().T @ pair.P @ w - bp)
        rq = kernel.operator_norm(w.conj().T @ pair.Q @ w - bq)
        return rp, rq


def _eigh_sym(a, tol):
    return kernel.herm_eig(0.5 * (a + a.conj().T), tol)


def _orthonormal(vectors, tol):
    """Orthonormal basis of the span of well-conditioned columns."""
    if vectors.shape[1] == 0:
        return vectors
    gram = _eigh_sym(vectors.conj().T @ vectors, tol)
    keep = gram.eigenvalues > 0.5 * gram.eigenvalues[-1]
    return (vectors @ gram.eigenvectors[:, keep]) / np.sqrt(gram.eigenvalues[keep])


def _complement_in(basis, used, tol):
    """Orthonormal basis of the part of span(basis) orthogonal to ``used``."""
    m = basis.shape[1]
    if m == 0:
        return basis
    coords = basis.conj().T @ used
    proj = np.eye(m) - coords @ coords.conj().T
    spec = _eigh_sym(proj, tol)
    return basis @ spec.eigenvectors[:, spec.eigenvalues > 0.5]


def _split_level(abs_w):
    """A cut near 1/√2 that falls in a gap of the |eigenvalue| list."""
    cut = 1.0 / np.sqrt(2.0)
    pts = np.sort(abs_w[(abs_w > 0.5) & (abs_w < 0.85)])
    if pts.size == 0:
        return cut
    edges = np.concatenate([[0.5], pts, [0.85]])
    gaps = np.diff(edges)
    k = int(np.argmax(gaps))
    return 0.5 * (edges[k] + edges[k + 1])


def halmos_decompose(pair, tol=DEFAULT_TOL, corner_atol=CORNER_ATOL):
    """Halmos decomposition of ``pair`` (a :class:`ProjectionPair`).

    Small angles are read from the eigenvalues ``±sin θ`` of P − Q, whose
    eigenvectors v give ``e = Pv/‖Pv‖`` and ``f = −(1−P)v/‖(1−P)v‖``. Near
    π/2 the sine carries no information about cos θ, so the P-range parts of
    the positive eigenvectors and the N(P)-parts of the negative ones are
    paired through the SVD of ``F* Q E``, whose singular values
    ``cos θ sin θ`` are accurate to rounding. Corners are the eigenvalue-0
    space of P − Q (split by P) and the null directions of that pairing.
    """
    p = kernel.require_projection(pair.P, tol, "P")
    q = kernel.require_projection(pair.Q, tol, "Q")
    n = pair.dim
    spec = _eigh_sym(p - q, tol)
    w = spec.eigenvalues
    if w.size and (w[0] < -1 - corner_atol or w[-1] > 1 + corner_atol):
        raise InternalConsistencyError(
            f"spectrum of P-Q leaves [-1, 1]: [{w[0]:.3e}, {w[-1]:.3e}]"
        )
    v = spec.eigenvectors
    cut = _split_level(np.abs(w))
    zero = np.abs(w) <= corner_atol
    small_pos = (w > corner_atol) & (w < cut)
    small_neg = (w < -corner_atol) & (w > -cut)
    big_pos = w >= cut
    big_neg = w <= -cut
    if small_pos.sum() != small_neg.sum():
        raise InternalConsistencyError(
            f"unpaired spectrum of P-Q: {small_pos.sum()} positive, {small_neg.sum()} negative"
        )

    # split N(P-Q) = H11 ⊕ H00 by compressing P onto it
    b0 = v[:, zero]
    if b0.shape[1]:
        sub = _eigh_sym(b0.conj().T @ p @ b0, tol)
        rot = b0 @ sub.eigenvectors
        ones = sub.eigenvalues > 0.5
        b11, b00 = rot[:, ones], rot[:, ~ones]
    else:
        b11 = b00 = np.zeros((n, 0), dtype=np.complex128)

    vs = v[:, small_pos]
    e_small = p @ vs
    e_small = e_small / np.linalg.norm(e_small, axis=0)
    f_small = vs - p @ vs
    f_small = -f_small / np.linalg.norm(f_small, axis=0)
    th_small = np.arcsin(np.clip(w[small_pos], 0.0, 1.0))

    eye = np.eye(n)
    e_span = _orthonormal(p @ v[:, big_pos], tol)
    f_span = _orthonormal((eye - p) @ v[:, big_neg], tol)
    if e_span.shape[1] and f_span.shape[1]:
        y, sigma, z = kernel.svd(f_span.conj().T @ q @ e_span)
    else:
        y = np.zeros((f_span.shape[1], 0))
        z = np.zeros((e_span.shape[1], 0))
        sigma = np.zeros(0)
    live = sigma > corner_atol
    e_big = e_span @ z[:, live]
    f_big = f_span @ y[:, live]
    b10 = _complement_in(e_span, e_big, tol)
    b01 = _complement_in(f_span, f_big, tol)
    qe = q @ e_big
    th_big = np.arctan2(np.linalg.norm(e_big - qe, axis=0), np.linalg.norm(qe, axis=0))

    angles = np.concatenate([th_small, th_big])
    order = np.argsort(angles, kind="stable")
    decomp = HalmosDecomposition(
        SubspaceBasis(n, b11),
        SubspaceBasis(n, b00),
        SubspaceBasis(n, b10),
        SubspaceBasis(n, b01),
        SubspaceBasis(n, np.hstack([e_small, e_big])[:, order]),
        SubspaceBasis(n, np.hstack([f_small, f_big])[:, order]),
        angles[order],
    )
    total = sum(decomp.corner_dims) + 2 * angles.size
    if total != n:
        raise InternalConsistencyError(f"decomposition dimensions sum to {total}, expected {n}")
    return decomp


def angle_spectrum(decomp, atol=1e-10):
    """Cluster the generic angles into distinct values with multiplicities.

    Matched H10/H01 pairs act as rotation blocks at exactly π/2, so
    ``halfpi_multiplicity`` is ``min(dim10, dim01)``.
    """
    gammas = []
    mults = []
    for theta in decomp.angles:
        if gammas and theta - gammas[-1] <= atol:
            mults[-1] += 1
        else:
            gammas.append(float(theta))
            mults.append(1)
    return AngleSpectrum(np.array(gammas), tuple(mults), min(decomp.dim10, decomp.dim01))


def principal_angles(pair, tol=DEFAULT_TOL):
    """All principal angles between R(P) and R(Q), ascending, in [0, π/2].

    Independent of :func:`halmos_decompose`: cosines are the singular values
    of ``B_P* B_Q`` for orthonormal range bases. Angles below π/4 are read
    from the sines instead (singular values of the part of the smaller basis
    outside the other range), since arccos loses half the digits near 1.
    """
    bp = kernel.range_basis(pair.P, tol).basis
    bq = kernel.range_basis(pair.Q, tol).basis
    k = min(bp.shape[1], bq.shape[1])
    if k == 0:
        return np.zeros(0)
    cosines = np.clip(kernel.singular_values(bp.conj().T @ bq), 0.0, 1.0)
    small, other = (bq, pair.P) if bq.shape[1] <= bp.shape[1] else (bp, pair.Q)
    sines = np.clip(np.sort(kernel.singular_values(small - other @ small)), 0.0, 1.0)
    from_cos = np.arccos(cosines)
    from_sin = np.arcsin(sines)
    return np.sort(np.where(from_sin < np.pi / 4, from_sin, from_cos))


def position_dims(pair, tol=DEFAULT_TOL, corner_atol=CORNER_ATOL):
    """``(dim H11, dim H00, dim H10, dim H01)``."""
    return halmos_decompose(pair, tol, corner_atol).corner_dims


@dataclass(frozen=True)
class KKMCheck:
    lhs: float
    rhs: float
    residual: float
    branch: str
    norm_p_nq: float
    norm_q_np: float


def kkm_identity_check(pair, tol=DEFAULT_TOL):
    """Compare ‖P−Q‖ with max{‖P(1−Q)‖, ‖Q(1−P)‖} and classify the branch.

    ``first``: ‖P(1−Q)‖ < 1 and ‖Q(1−P)‖ = 1; ``second``: the reverse;
    ``third``: both equal 1; ``generic-strict``: both below 1, which only
    happens when ‖P−Q‖ < 1.
    """
    p = kernel.require_projection(pair.P, tol, "P")
    q = kernel.require_projection(pair.Q, tol, "Q")
    eye = np.eye(pair.dim)
    a = kernel.operator_norm(p @ (eye - q))
    b = kernel.operator_norm(q @ (eye - p))
    lhs = kernel.operator_norm(p - q)
    rhs = max(a, b)
    one = 1.0 - tol
    if a < one <= b:
        branch = "first"
    elif b < one <= a:
        branch = "second"
    elif a >= one and b >= one:
        branch = "third"
    else:
        branch = "generic-strict"
    return KKMCheck(lhs, rhs, abs(lhs - rhs), branch, a, b)
