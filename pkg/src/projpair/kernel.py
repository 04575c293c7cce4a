"""Dense complex linear algebra used by every other module.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.
Eigenvectors come from one Hermitian eigensolver, a cyclic Jacobi iteration
(see :mod:`projpair._backend`), and the SVD is derived from it. Queries that
need only eigenvalues (norms, spectra) take a cheaper tridiagonal route.
"""
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import (
    ConvergenceError,
    NotAProjectionError,
    NotHermitianError,
    ValidationError,
)

DEFAULT_TOL = 1e-9
JACOBI_TOL = 1e-13
MAX_SWEEPS = 60
RANK_RTOL = 1e-12
# below this size a full Jacobi solve is cheaper than tridiagonal bisection
EIGVALS_CROSSOVER = 96 if _backend.NAME == "compiled" else 24


def as_matrix(a, name="matrix"):
    """Coerce ``a`` to a finite 2-d complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValidationError(f"{name} must be 2-dimensional, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError(f"{name} has non-finite entries")
    return m


def _square(a, name="matrix"):
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {m.shape}")
    return m


def hermitian_residual(a):
    return float(np.linalg.norm(a - a.conj().T))


def require_hermitian(a, tol=DEFAULT_TOL, name="matrix"):
    m = _square(a, name)
    asym = hermitian_residual(m)
    if asym > tol * max(1.0, float(np.linalg.norm(m))):
        raise NotHermitianError(asym, f"{name} is not Hermitian (asymmetry {asym:.3e})")
    return m


def projection_residual(p):
    """Frobenius size of ``P - P*`` plus ``P² - P``."""
    return hermitian_residual(p) + float(np.linalg.norm(p @ p - p))


def is_projection(p, tol=DEFAULT_TOL):
    p = np.asarray(p)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        return False
    return projection_residual(p) <= tol * max(1.0, float(np.linalg.norm(p)))


def require_projection(p, tol=DEFAULT_TOL, name="matrix"):
    m = _square(p, name)
    res = projection_residual(m)
    if res > tol * max(1.0, float(np.linalg.norm(m))):
        raise NotAProjectionError(res, f"{name} is not an orthogonal projection (residual {res:.3e})")
    return m


@dataclass(frozen=True)
class HermitianSpectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


@dataclass(frozen=True)
class SubspaceBasis:
    ambient_dim: int
    basis: np.ndarray

    @property
    def dim(self):
        return self.basis.shape[1]

    @classmethod
    def empty(cls, n):
        return cls(n, np.zeros((n, 0), dtype=np.complex128))


def normalize_phases(v, rtol=1e-12):
    """Rotate each column so its first non-negligible entry is real positive."""
    v = np.array(v, dtype=np.complex128, copy=True)
    if v.size == 0:
        return v
    thresh = rtol * np.max(np.abs(v), axis=0)
    for k in range(v.shape[1]):
        nz = np.flatnonzero(np.abs(v[:, k]) > thresh[k])
        if nz.size:
            z = v[nz[0], k]
            v[:, k] *= np.conj(z) / abs(z)
    return v


def herm_eig(a, tol=DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    m = require_hermitian(a, tol)
    n = m.shape[0]
    if n == 0:
        return HermitianSpectrum(np.zeros(0), np.zeros((0, 0), dtype=np.complex128))
    w, v, sweeps = _backend.jacobi_eigh(m, _backend.round_robin(n), JACOBI_TOL, MAX_SWEEPS)
    if sweeps >= MAX_SWEEPS:
        raise ConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps (n={n})")
    order = np.argsort(w, kind="stable")
    return HermitianSpectrum(w[order], normalize_phases(v[:, order]), sweeps)


def _tridiagonalize(a):
    """Householder reduction of Hermitian ``a`` to real tridiagonal ``(d, |e|)``.

    Off-diagonal phases are dropped; a diagonal unitary similarity removes
    them, so the spectrum is unchanged.
    """
    a = np.array(a, dtype=np.complex128, copy=True)
    n = a.shape[0]
    off = np.zeros(max(n - 1, 0))
    for k in range(n - 2):
        x = a[k + 1 :, k]
        tail = float(np.linalg.norm(x[1:]))
        if tail == 0.0:
            off[k] = abs(x[0])
            continue
        xnorm = float(np.hypot(abs(x[0]), tail))
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * xnorm
        v /= np.linalg.norm(v)
        sub = a[k + 1 :, k + 1 :]
        pv = sub @ v
        kk = np.vdot(v, pv).real
        w = 2.0 * pv - 2.0 * kk * v
        sub -= np.outer(v, w.conj()) + np.outer(w, v.conj())
        off[k] = xnorm
    if n >= 2:
        off[n - 2] = abs(a[n - 1, n - 2])
    return a.diagonal().real.copy(), off


def herm_eigvals(a, tol=DEFAULT_TOL):
    """Eigenvalues of a Hermitian matrix, ascending, without eigenvectors.

    Householder tridiagonalization followed by Sturm-count bisection on all
    eigenvalues at once; absolute accuracy is a few ulps of ``‖A‖``.
    """
    m = require_hermitian(a, tol)
    n = m.shape[0]
    if n == 0:
        return np.zeros(0)
    if n == 1:
        return np.array([m[0, 0].real])
    if n < EIGVALS_CROSSOVER:
        return herm_eig(m, tol).eigenvalues
    d, e = _tridiagonalize(0.5 * (m + m.conj().T))
    e2 = e * e
    radius = np.concatenate([[0.0], e]) + np.concatenate([e, [0.0]])
    lo0, hi0 = float(np.min(d - radius)), float(np.max(d + radius))
    scale = max(abs(lo0), abs(hi0))
    if scale == 0.0:
        return np.zeros(n)
    pivmin = np.finfo(float).tiny / np.finfo(float).eps * max(1.0, float(e2.max(initial=0.0)))
    target = np.arange(n)
    lo = np.full(n, lo0 - 2 * np.finfo(float).eps * scale)
    hi = np.full(n, hi0 + 2 * np.finfo(float).eps * scale)
    iters = int(np.ceil(np.log2((hi0 - lo0 + 4 * np.finfo(float).eps * scale) / (np.finfo(float).eps * scale)))) + 2
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        q = d[0] - mid
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count = (q < 0).astype(np.intp)
        for i in range(1, n):
            q = d[i] - mid - e2[i - 1] / q
            q = np.where(np.abs(q) < pivmin, -pivmin, q)
            count += q < 0
        below = count > target
        hi = np.where(below, mid, hi)
        lo = np.where(below, lo, mid)
    return 0.5 * (lo + hi)


def eigenspace(a, value, atol, tol=DEFAULT_TOL, spectrum=None):
    """Orthonormal basis of the eigenvectors of ``a`` with eigenvalue within ``atol`` of ``value``."""
    spec = spectrum if spectrum is not None else herm_eig(a, tol)
    sel = np.abs(spec.eigenvalues - value) <= atol
    return SubspaceBasis(spec.eigenvectors.shape[0], spec.eigenvectors[:, sel])


def range_basis(p, tol=DEFAULT_TOL):
    """Orthonormal basis of R(P) for an orthogonal projection P."""
    p = require_projection(p, tol)
    spec = herm_eig(p, tol)
    return SubspaceBasis(p.shape[0], spec.eigenvectors[:, spec.eigenvalues > 0.5])


def nearest_projection(p, tol=DEFAULT_TOL):
    """Spectral projection onto the eigenvalues of ``P`` above 1/2.

    For a matrix that passes the projection test this is the closest exact
    orthogonal projection; it removes input noise before structure is read off.
    Matrices already exact to rounding are returned unchanged.
    """
    m = require_projection(p, tol)
    if projection_residual(m) <= 1e-13 * max(1.0, float(np.linalg.norm(m))):
        return m
    basis = range_basis(m, tol)
    return projector_from_basis(basis, max(tol, 1e-10))


def svd(a):
    """Compact SVD ``(U, s, V)`` with ``A ≈ U diag(s) V*``, s descending.

    Built from the Hermitian dilation ``[[0, A], [A*, 0]]``, whose positive
    eigenvalues are the singular values of A. Singular values at or below
    ``RANK_RTOL·‖A‖`` are dropped.
    """
    a = as_matrix(a)
    m, n = a.shape
    if m == 0 or n == 0:
        return np.zeros((m, 0), complex), np.zeros(0), np.zeros((n, 0), complex)
    dil = np.zeros((m + n, m + n), dtype=np.complex128)
    dil[:m, m:] = a
    dil[m:, :m] = a.conj().T
    spec = herm_eig(dil)
    w = spec.eigenvalues[::-1]
    vecs = spec.eigenvectors[:, ::-1]
    top = w[0] if w.size else 0.0
    keep = w > RANK_RTOL * top if top > 0 else np.zeros_like(w, dtype=bool)
    keep[min(m, n):] = False
    s = w[keep]
    u = vecs[:m, keep] * np.sqrt(2.0)
    v = vecs[m:, keep] * np.sqrt(2.0)
    return u, s, v


def singular_values(a):
    """All ``min(m, n)`` singular values, descending, negligible ones as 0."""
    a = as_matrix(a)
    _, s, _ = svd(a)
    out = np.zeros(min(a.shape))
    out[: s.size] = s
    return out


def rank(a):
    return int(svd(a)[1].size)


def operator_norm(a):
    """Largest singular value (spectral norm).

    Hermitian input is handled through its own spectrum, anything else
    through the Gram matrix of its smaller side.
    """
    a = as_matrix(a)
    if a.size == 0:
        return 0.0
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return 0.0
    if a.shape[0] == a.shape[1] and hermitian_residual(a) <= 1e-14 * scale:
        w = herm_eigvals(a)
        return float(max(abs(w[0]), abs(w[-1])))
    gram = a.conj().T @ a if a.shape[1] <= a.shape[0] else a @ a.conj().T
    top = herm_eigvals(0.5 * (gram + gram.conj().T))[-1]
    return float(np.sqrt(max(top, 0.0)))


def hs_norm(a):
    """Hilbert-Schmidt (Frobenius) norm, sqrt(Tr A*A)."""
    a = as_matrix(a)
    return float(np.sqrt(np.vdot(a, a).real))


def unitary_exp(x, t=1.0, tol=DEFAULT_TOL, spectrum=None):
    """``exp(i t X)`` for Hermitian X, via its eigendecomposition."""
    spec = spectrum if spectrum is not None else herm_eig(x, tol)
    v = spec.eigenvectors
    return (v * np.exp(1j * t * spec.eigenvalues)) @ v.conj().T


def projector_from_basis(basis, tol=DEFAULT_TOL):
    """``B B*`` for an orthonormal basis B."""
    b = basis.basis if isinstance(basis, SubspaceBasis) else as_matrix(basis)
    k = b.shape[1]
    if k:
        gram_err = float(np.linalg.norm(b.conj().T @ b - np.eye(k)))
        if gram_err > tol * max(1.0, np.sqrt(k)):
            raise ValidationError(f"basis is not orthonormal (residual {gram_err:.3e})")
    return b @ b.conj().T


def subspace_intersection(p, q, tol=DEFAULT_TOL):
    """Orthonormal basis of R(P)∩R(Q): the eigenvalue-2 eigenspace of P+Q."""
    p = require_projection(p, tol, "P")
    q = require_projection(q, tol, "Q")
    if p.shape != q.shape:
        raise ValidationError(f"shape mismatch {p.shape} vs {q.shape}")
    s = p + q
    return eigenspace(0.5 * (s + s.conj().T), 2.0, max(tol, 1e-8), tol)


def commutator(a, b):
    """``AB - BA``."""
    a = _square(a, "A")
    b = _square(b, "B")
    if a.shape != b.shape:
        raise ValidationError(f"shape mismatch {a.shape} vs {b.shape}")
    return a @ b - b @ a


# -- matrix file format -------------------------------------------------------

HEADER = "# complex-matrix"


def write_matrix(path, a):
    """Write a matrix as CSV: header ``# complex-matrix rows cols``, then re,im pairs."""
    a = as_matrix(a)
    rows, cols = a.shape
    lines = [f"{HEADER} {rows} {cols}"]
    for row in a:
        fields = []
        for z in row:
            fields.append(repr(float(z.real)))
            fields.append(repr(float(z.imag)))
        lines.append(",".join(fields))
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_matrix(path):
    with open(path, encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 4 or " ".join(header[:2]) != HEADER:
            raise ValidationError(f"{path}: missing '{HEADER} rows cols' header")
        try:
            rows, cols = int(header[2]), int(header[3])
        except ValueError as exc:
            raise ValidationError(f"{path}: bad header dimensions") from exc
        body = [line for line in fh if line.strip()]
    if len(body) != rows:
        raise ValidationError(f"{path}: expected {rows} rows, found {len(body)}")
    out = np.empty((rows, cols), dtype=np.complex128)
    for i, line in enumerate(body):
        vals = [float(x) for x in line.split(",")]
        if len(vals) != 2 * cols:
            raise ValidationError(f"{path}: row {i} has {len(vals)} fields, expected {2 * cols}")
        out[i] = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    return as_matrix(out)
