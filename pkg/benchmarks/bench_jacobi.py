"""Time the compiled and numpy Jacobi kernels on random Hermitian matrices.

    python3 benchmarks/bench_jacobi.py --sizes 32,64,128,256 --repeat 3
"""
import argparse
import time

import numpy as np

from projpair import _backend
from projpair.kernel import JACOBI_TOL, MAX_SWEEPS
from projpair.sampling import complex_gaussian, generator


def random_hermitian(n, seed):
    z = complex_gaussian(generator(seed), (n, n))
    return 0.5 * (z + z.conj().T)


def time_backend(fn, a, repeat):
    sched = _backend.round_robin(a.shape[0])
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        w, v, sweeps = fn(a, sched, JACOBI_TOL, MAX_SWEEPS)
        best = min(best, time.perf_counter() - t0)
    resid = np.linalg.norm(a @ v - v * w) / np.linalg.norm(a)
    return best, sweeps, resid


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="16,32,64,128,256")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    names = sorted(_backend.BACKENDS)
    print(f"{'n':>5} " + " ".join(f"{nm + ' s':>12} {'sweeps':>6} {'resid':>9}" for nm in names)
          + (f" {'speedup':>8}" if len(names) == 2 else ""))
    for n in (int(x) for x in args.sizes.split(",")):
        a = random_hermitian(n, args.seed)
        row = {nm: time_backend(_backend.BACKENDS[nm], a, args.repeat) for nm in names}
        line = f"{n:>5} " + " ".join(f"{row[nm][0]:>12.4f} {row[nm][1]:>6d} {row[nm][2]:>9.1e}" for nm in names)
        if len(names) == 2:
            line += f" {row['python'][0] / row['compiled'][0]:>8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
