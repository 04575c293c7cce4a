"""Command-line front end: ``projpair {pair,geodesic,dft,sweep,factorize}``.

Exit statuses:

    0  success
    2  usage error (bad flags)
    3  invalid input (index set, matrix contents, non-projection)
    4  file I/O failure
    5  no unique geodesic between the given projections
    6  matrix is not a product of two orthogonal projections
    7  numerical failure (non-convergence, internal consistency)
"""
import argparse
import os
import re
import sys

import numpy as np

from . import kernel
from .errors import (
    ConvergenceError,
    InternalConsistencyError,
    NoUniqueGeodesicError,
    NotAProjectionProductError,
    IndexSetError,
    ProjPairError,
    UndefinedError,
    ValidationError,
)
from .factorization import factorization_compare, is_canonical
from .fourier import DftCalculus, parity_rank
from .geodesics import geodesic_exponent, grassmann_distance, reduced_min_modulus
from .kernel import DEFAULT_TOL
from .localization import IndexSet, LocalizationPair, localization_report, uncertainty_sweep
from .pairs import ProjectionPair
from .report import pair_record, render

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_IO = 4
EXIT_NO_GEODESIC = 5
EXIT_NOT_PRODUCT = 6
EXIT_NUMERIC = 7

TOL_ENV = "PROJPAIR_TOL"

_TOKEN = re.compile(r"^\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?$")


def parse_index_set(spec, n, require_nonempty=False):
    """Parse ``"0..4,7,9:sym"``: indices, half-open ranges, optional negation closure."""
    text = spec.strip()
    sym = text.endswith(":sym")
    if sym:
        text = text[: -len(":sym")]
    members = set()
    if text.strip():
        for token in text.split(","):
            m = _TOKEN.match(token)
            if not m:
                raise IndexSetError(f"malformed index-set token {token!r} in {spec!r}")
            lo = int(m.group(1))
            hi = int(m.group(2)) if m.group(2) is not None else lo + 1
            if hi < lo:
                raise IndexSetError(f"empty-reversed range {token!r}")
            if hi > n:
                raise IndexSetError(f"index {hi - 1} out of range for n={n}")
            members.update(range(lo, hi))
    result = IndexSet(n, tuple(members))
    if sym:
        result = result.symmetric_closure()
    if require_nonempty and not len(result):
        raise IndexSetError(f"index set {spec!r} is empty")
    return result


def _default_tol():
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise SystemExit(f"projpair: {TOL_ENV}={raw!r} is not a number")
    return tol


def _positive(text):
    val = float(text)
    if not val > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return val


def _count_list(text):
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def build_parser():
    parser = argparse.ArgumentParser(prog="projpair", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv"), default="text")
    common.add_argument("--tol", type=_positive, default=None,
                        help=f"tolerance (default ${TOL_ENV} or {DEFAULT_TOL:g})")
    common.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pair", parents=[common], help="localization report for (P_I, Q_J)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set-i", required=True)
    p.add_argument("--set-j", required=True)

    g = sub.add_parser("geodesic", parents=[common], help="geodesic exponent between two projections")
    g.add_argument("--n", type=int)
    g.add_argument("--set-i")
    g.add_argument("--set-j")
    g.add_argument("--p", dest="p_file", help="matrix file for P")
    g.add_argument("--q", dest="q_file", help="matrix file for Q")

    d = sub.add_parser("dft", parents=[common], help="spectral calculus of the unitary DFT")
    d.add_argument("--n", type=int, required=True)

    s = sub.add_parser("sweep", parents=[common], help="uncertainty sweep over dimensions")
    s.add_argument("--ns", type=_count_list, default=[16, 32, 64, 128])
    s.add_argument("--fill", type=float, default=0.25)

    f = sub.add_parser("factorize", parents=[common], help="canonical factorization of PQ")
    f.add_argument("--p", dest="p_file", required=True)
    f.add_argument("--q", dest="q_file", required=True)
    f.add_argument("--samples", type=int, default=1000)
    return parser


def _require_n(n):
    if n is None or n < 1:
        raise ValidationError("--n must be a positive integer")
    return n


def _cmd_pair(args, tol):
    n = _require_n(args.n)
    i = parse_index_set(args.set_i, n, require_nonempty=True)
    j = parse_index_set(args.set_j, n, require_nonempty=True)
    return [pair_record(localization_report(n, i, j, tol))]


def _load_pair(args, tol):
    if args.p_file or args.q_file:
        if not (args.p_file and args.q_file):
            raise ValidationError("--p and --q must be given together")
        p = kernel.read_matrix(args.p_file)
        q = kernel.read_matrix(args.q_file)
        return ProjectionPair.checked(p, q, tol)
    n = _require_n(args.n)
    if args.set_i is None or args.set_j is None:
        raise ValidationError("give either --p/--q files or --n with --set-i/--set-j")
    lp = LocalizationPair.build(parse_index_set(args.set_i, n), parse_index_set(args.set_j, n))
    return lp.pair


def _cmd_geodesic(args, tol):
    pair = _load_pair(args, tol)
    ex = geodesic_exponent(pair, tol)
    w = ex.spectrum()
    try:
        gap = reduced_min_modulus(ex.X, tol)
    except UndefinedError:
        gap = None
    return [
        {
            "n": pair.dim,
            "norm_x": ex.norm,
            "spectrum": list(w),
            "endpoint_residual": ex.endpoint_residual(),
            "codiagonal_residual": sum(ex.codiagonal_residuals()),
            "symmetry_residual": float(np.max(np.abs(w + w[::-1]))) if w.size else 0.0,
            "distance": grassmann_distance(pair, tol),
            "reduced_min_modulus": gap,
        }
    ]


def _cmd_dft(args, tol):
    n = _require_n(args.n)
    calc = DftCalculus.build(n, tol)
    e = calc.projections
    ranks = e.ranks()
    recon = e.E1 - e.Eneg1 + 1j * e.Ei - 1j * e.Enegi
    return [
        {
            "n": n,
            "rank_e1": ranks[0],
            "rank_eneg1": ranks[1],
            "rank_ei": ranks[2],
            "rank_enegi": ranks[3],
            "rank_even": parity_rank(n),
            "norm_h": kernel.operator_norm(calc.H),
            "log_residual": calc.log_residual(),
            "reconstruction_residual": kernel.operator_norm(recon - calc.U),
            "sum_residual": kernel.operator_norm(sum(e) - np.eye(n)),
        }
    ]


def _cmd_sweep(args, tol):
    return [pair_record(r) for r in uncertainty_sweep(args.ns, args.fill, tol)]


def _cmd_factorize(args, tol):
    p = kernel.read_matrix(args.p_file)
    q = kernel.read_matrix(args.q_file)
    pair = ProjectionPair.checked(p, q, tol)
    cmp = factorization_compare(pair.P, pair.Q, args.samples, args.seed, tol)
    fac = cmp.canonical
    return [
        {
            "n": pair.dim,
            "rank_t": kernel.rank(fac.T),
            "input_canonical": is_canonical(pair.P, pair.Q, tol),
            "factor_residual": kernel.operator_norm(fac.P0 @ fac.Q0 - fac.T),
            "norm_p_minus_q": kernel.operator_norm(pair.P - pair.Q),
            "norm_p0_minus_q0": kernel.operator_norm(fac.P0 - fac.Q0),
            "norm_gap": cmp.norm_gap,
            "max_violation": cmp.max_violation,
            "samples": args.samples,
            "seed": args.seed,
        }
    ]


COMMANDS = {
    "pair": _cmd_pair,
    "geodesic": _cmd_geodesic,
    "dft": _cmd_dft,
    "sweep": _cmd_sweep,
    "factorize": _cmd_factorize,
}


def _status_for(exc):
    if isinstance(exc, NoUniqueGeodesicError):
        return EXIT_NO_GEODESIC
    if isinstance(exc, NotAProjectionProductError):
        return EXIT_NOT_PRODUCT
    if isinstance(exc, (ConvergenceError, InternalConsistencyError, UndefinedError)):
        return EXIT_NUMERIC
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_INPUT


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    tol = args.tol if args.tol is not None else _default_tol()
    try:
        records = COMMANDS[args.command](args, tol)
        text = render(records, args.format)
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            stdout.write(text)
    except (ProjPairError, OSError, ValueError) as exc:
        print(f"projpair {args.command}: error: {exc}", file=sys.stderr)
        return _status_for(exc)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
