# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi sweeps for dense complex Hermitian matrices.

Mirrors :mod:`projpair._jacobi_py` operation for operation; both backends
consume the same round-robin schedule so they agree to rounding error.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, hypot

cnp.import_array()

ctypedef double complex cplx


cdef inline double _offdiag_sq(cplx[:, ::1] a, Py_ssize_t n) nogil:
    cdef Py_ssize_t i, j
    cdef double acc = 0.0
    cdef cplx z
    for i in range(n):
        for j in range(n):
            if i != j:
                z = a[i, j]
                acc += z.real * z.real + z.imag * z.imag
    return acc


cdef inline void _rotate_rows(cplx[:, ::1] a, Py_ssize_t p, Py_ssize_t q,
                              double c, cplx se, Py_ssize_t n) nogil:
    # rows <- W* rows with W = [[c, s e], [-s conj(e), c]]; explicit real
    # arithmetic so the compiler does not route through __muldc3
    cdef Py_ssize_t k
    cdef double xr = se.real, xi = se.imag
    cdef double *rp = <double *> &a[p, 0]
    cdef double *rq = <double *> &a[q, 0]
    cdef double pr, pi, qr, qi
    for k in range(n):
        pr = rp[2 * k]
        pi = rp[2 * k + 1]
        qr = rq[2 * k]
        qi = rq[2 * k + 1]
        rp[2 * k] = c * pr - (xr * qr - xi * qi)
        rp[2 * k + 1] = c * pi - (xr * qi + xi * qr)
        rq[2 * k] = (xr * pr + xi * pi) + c * qr
        rq[2 * k + 1] = (xr * pi - xi * pr) + c * qi


cdef inline void _herm_transpose(cplx[:, ::1] src, cplx[:, ::1] dst,
                                 Py_ssize_t n) nogil:
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(n):
            dst[j, i] = src[i, j].conjugate()


def jacobi_eigh(cnp.ndarray a_in, cnp.ndarray schedule_in, double tol,
                int max_sweeps):
    """Diagonalize Hermitian ``a_in``; return ``(eigenvalues, V, sweeps)``.

    Eigenvalues come back in schedule order (unsorted); V has the
    eigenvectors as columns.
    """
    cdef Py_ssize_t n = a_in.shape[0]
    cdef cnp.ndarray a_arr = np.array(a_in, dtype=np.complex128, order="C", copy=True)
    cdef cnp.ndarray b_arr = np.empty_like(a_arr)
    cdef cnp.ndarray g_arr = np.eye(n, dtype=np.complex128)
    cdef cnp.ndarray h_arr = np.empty_like(g_arr)
    cdef cplx[:, ::1] a = a_arr
    cdef cplx[:, ::1] b = b_arr
    cdef cplx[:, ::1] g = g_arr
    cdef cplx[:, ::1] h = h_arr
    cdef cnp.ndarray sched_arr = np.ascontiguousarray(schedule_in, dtype=np.intp)
    cdef Py_ssize_t[:, :, ::1] sched = sched_arr
    cdef Py_ssize_t rounds = sched_arr.shape[0]
    cdef Py_ssize_t width = sched_arr.shape[1]
    cdef Py_ssize_t r, k, p, q, i, j
    cdef double[::1] cs = np.empty(width, dtype=np.float64)
    cdef cplx[::1] ses = np.empty(width, dtype=np.complex128)
    cdef double app, aqq, mag, zeta, t, c, s, scale_sq
    cdef cplx apq, e
    cdef int sweep = 0

    scale_sq = 0.0
    for i in range(n):
        for j in range(n):
            scale_sq += a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag
    if scale_sq == 0.0 or n < 2:
        w = np.array([a_arr[i, i].real for i in range(n)])
        return w, g_arr, 0

    with nogil:
        while sweep < max_sweeps:
            if _offdiag_sq(a, n) <= tol * tol * scale_sq:
                break
            for r in range(rounds):
                for k in range(width):
                    p = sched[r, k, 0]
                    q = sched[r, k, 1]
                    apq = a[p, q]
                    mag = hypot(apq.real, apq.imag)
                    if mag == 0.0:
                        cs[k] = 1.0
                        ses[k] = 0.0
                        continue
                    app = a[p, p].real
                    aqq = a[q, q].real
                    zeta = (aqq - app) / (2.0 * mag)
                    if zeta >= 0.0:
                        t = 1.0 / (zeta + sqrt(1.0 + zeta * zeta))
                    else:
                        t = -1.0 / (-zeta + sqrt(1.0 + zeta * zeta))
                    c = 1.0 / sqrt(1.0 + t * t)
                    s = t * c
                    e = apq / mag
                    cs[k] = c
                    ses[k] = s * e
                for k in range(width):
                    _rotate_rows(a, sched[r, k, 0], sched[r, k, 1], cs[k], ses[k], n)
                _herm_transpose(a, b, n)
                for k in range(width):
                    _rotate_rows(b, sched[r, k, 0], sched[r, k, 1], cs[k], ses[k], n)
                    _rotate_rows(g, sched[r, k, 0], sched[r, k, 1], cs[k], ses[k], n)
                a, b = b, a
            # one symmetrization per sweep keeps rounding drift Hermitian
            for i in range(n):
                a[i, i] = a[i, i].real
                for j in range(i + 1, n):
                    e = 0.5 * (a[i, j] + a[j, i].conjugate())
                    a[i, j] = e
                    a[j, i] = e.conjugate()
            sweep += 1

    w = np.empty(n, dtype=np.float64)
    for i in range(n):
        w[i] = a[i, i].real
    _herm_transpose(g, h, n)
    return w, h_arr, sweep
