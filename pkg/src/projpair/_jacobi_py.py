"""Pure numpy fallback for the cyclic Jacobi sweeps.

Every round of the schedule is a set of disjoint rotations, so the whole
round is applied at once with fancy indexing. The arithmetic is the same as
in the compiled core, round by round.
"""
import numpy as np


def jacobi_eigh(a_in, schedule, tol, max_sweeps):
    a = np.array(a_in, dtype=np.complex128, order="C", copy=True)
    n = a.shape[0]
    g = np.eye(n, dtype=np.complex128)
    scale_sq = float(np.vdot(a, a).real)
    if scale_sq == 0.0 or n < 2:
        return a.diagonal().real.copy(), g, 0

    offmask = ~np.eye(n, dtype=bool)
    sweep = 0
    while sweep < max_sweeps:
        off = a[offmask]
        if float(np.vdot(off, off).real) <= tol * tol * scale_sq:
            break
        for rnd in schedule:
            ps = rnd[:, 0]
            qs = rnd[:, 1]
            apq = a[ps, qs]
            mag = np.abs(apq)
            live = mag != 0.0
            safe = np.where(live, mag, 1.0)
            app = a[ps, ps].real
            aqq = a[qs, qs].real
            zeta = (aqq - app) / (2.0 * safe)
            t = np.where(zeta >= 0.0, 1.0, -1.0) / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            c = np.where(live, c, 1.0)[:, None]
            se = np.where(live, s * (apq / safe), 0.0)[:, None]
            sec = se.conj()

            rp, rq = a[ps], a[qs]
            a[ps] = c * rp - se * rq
            a[qs] = sec * rp + c * rq
            a = a.conj().T.copy()
            rp, rq = a[ps], a[qs]
            a[ps] = c * rp - se * rq
            a[qs] = sec * rp + c * rq
            rp, rq = g[ps], g[qs]
            g[ps] = c * rp - se * rq
            g[qs] = sec * rp + c * rq
        a = 0.5 * (a + a.conj().T)
        np.fill_diagonal(a, a.diagonal().real)
        sweep += 1

    return a.diagonal().real.copy(), g.conj().T.copy(), sweep
