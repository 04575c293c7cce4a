import io
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from projpair import cli, kernel
from projpair.errors import IndexSetError
from projpair.report import format_number, parse_csv, parse_text, render, to_csv, to_text
from projpair.sampling import generator, random_admissible_pair


def run_cli(*args, env=None):
    full_env = dict(os.environ, **(env or {}))
    return subprocess.run(
        [sys.executable, "-m", "projpair", *args], capture_output=True, env=full_env, check=False
    )


def call(*args):
    out = io.StringIO()
    status = cli.run(list(args), stdout=out)
    return status, out.getvalue()


@pytest.fixture(scope="module")
def matrices(tmp_path_factory):
    d = tmp_path_factory.mktemp("mats")
    p, q = random_admissible_pair(6, generator(3), rank=2)
    paths = {}
    for name, m in {"p": p, "q": q, "e1": np.diag([1.0, 0]), "e2": np.diag([0.0, 1]),
                    "bad": np.array([[1.0, 1], [0, 0]])}.items():
        paths[name] = str(d / f"{name}.csv")
        kernel.write_matrix(paths[name], m)
    return paths


# -- index sets --------------------------------------------------------------

def test_parse_index_set_examples():
    assert cli.parse_index_set("0..4", 16).members == (0, 1, 2, 3)
    assert cli.parse_index_set("1,3,5", 8).members == (1, 3, 5)
    assert cli.parse_index_set("1,2:sym", 8).members == (1, 2, 6, 7)
    assert cli.parse_index_set("0..2,5..7", 8).members == (0, 1, 5, 6)
    assert cli.parse_index_set("", 8).members == ()


def test_parse_index_set_sym_is_symmetric():
    s = cli.parse_index_set("0..3,9:sym", 12)
    assert s.is_symmetric()


@pytest.mark.parametrize("spec", ["x", "1,,2", "3..1", "1..", "-1", "8", "0..9"])
def test_parse_index_set_errors(spec):
    with pytest.raises(IndexSetError):
        cli.parse_index_set(spec, 8)


def test_parse_index_set_nonempty():
    with pytest.raises(IndexSetError):
        cli.parse_index_set(":sym", 8, require_nonempty=True)


# -- serialization -----------------------------------------------------------

def test_format_number():
    assert format_number(4.0) == "4"
    assert format_number(-0.0) == "0"
    assert format_number(math.pi) == "3.14159265359"
    assert format_number(True) == "true"
    assert format_number(np.int64(7)) == "7"


def test_text_and_csv_roundtrip():
    recs = [{"n": 3, "xs": [0.1, 1 / 3], "flag": False, "gap": None},
            {"n": 4, "xs": [], "flag": True, "gap": 2e-17}]
    back = parse_text(to_text(recs))
    assert back[0] == {"n": [3.0], "xs": [0.1, float("%.12g" % (1 / 3))], "flag": False, "gap": None}
    assert back[1]["xs"] == []
    assert parse_csv(to_csv(recs)) == back
    assert render(recs, "csv") == to_csv(recs)


# -- commands ----------------------------------------------------------------

def test_pair_command_trace_identity():
    status, out = call("pair", "--n", "64", "--set-i", "0..16", "--set-j", "0..16")
    assert status == 0
    rec = parse_text(out)[0]
    assert rec["hs_sq"] == [4.0]
    assert list(rec) == ["n", "set_i", "set_j", "gammas", "norm_pq", "hs_sq", "expected_hs_sq",
                         "corner_dims", "distance", "commutator_norm"]


def test_pair_command_different_sets_has_no_commutator():
    status, out = call("pair", "--n", "8", "--set-i", "0,1", "--set-j", "1,2:sym")
    assert status == 0
    assert parse_text(out)[0]["commutator_norm"] is None


def test_dft_n1():
    status, out = call("dft", "--n", "1")
    assert status == 0
    rec = parse_text(out)[0]
    for key in ("norm_h", "log_residual", "reconstruction_residual", "sum_residual"):
        assert rec[key] == [0.0]
    assert rec["rank_e1"] == [1.0]


def test_dft_n16():
    rec = parse_text(call("dft", "--n", "16")[1])[0]
    assert rec["norm_h"] == [float("%.12g" % math.pi)]
    assert rec["log_residual"][0] < 1e-9
    ranks = [rec[k][0] for k in ("rank_e1", "rank_eneg1", "rank_ei", "rank_enegi")]
    assert sum(ranks) == 16


def test_geodesic_equal_inputs(matrices):
    status, out = call("geodesic", "--p", matrices["p"], "--q", matrices["p"])
    assert status == 0
    rec = parse_text(out)[0]
    assert rec["norm_x"] == [0.0]
    assert rec["endpoint_residual"] == [0.0]
    assert rec["reduced_min_modulus"] is None


def test_geodesic_from_files(matrices):
    rec = parse_text(call("geodesic", "--p", matrices["p"], "--q", matrices["q"])[1])[0]
    assert rec["endpoint_residual"][0] < 1e-9
    assert rec["norm_x"] == rec["distance"]
    w = rec["spectrum"]
    assert len(w) == 6
    assert np.allclose(sorted(w), sorted(-x for x in w), atol=1e-9)


def test_geodesic_from_index_sets():
    rec = parse_text(call("geodesic", "--n", "16", "--set-i", "0..4", "--set-j", "0..4")[1])[0]
    assert abs(rec["norm_x"][0] - 1.56597221731) < 1e-10


def test_sweep_csv():
    status, out = call("sweep", "--ns", "32,16", "--format", "csv")
    assert status == 0
    rows = parse_csv(out)
    assert [r["n"] for r in rows] == [[16.0], [32.0]]
    assert out.splitlines()[0].startswith("n,set_i,set_j,gammas")


def test_factorize(matrices):
    status, out = call("factorize", "--p", matrices["p"], "--q", matrices["q"], "--samples", "200")
    assert status == 0
    rec = parse_text(out)[0]
    assert rec["max_violation"][0] <= 1e-9
    assert rec["samples"] == [200.0]


def test_output_file(tmp_path):
    target = tmp_path / "r.txt"
    status, out = call("dft", "--n", "4", "--output", str(target))
    assert status == 0 and out == ""
    assert target.read_text().startswith("n: 4\n")


# -- exit statuses -----------------------------------------------------------

def test_exit_usage():
    assert run_cli("pair", "--n", "8").returncode == cli.EXIT_USAGE
    assert run_cli("bogus").returncode == cli.EXIT_USAGE


def test_exit_bad_index_set():
    r = run_cli("pair", "--n", "8", "--set-i", "9", "--set-j", "0")
    assert r.returncode == cli.EXIT_INPUT
    assert b"error" in r.stderr and r.stdout == b""


def test_exit_empty_set_where_required():
    assert call("pair", "--n", "8", "--set-i", "", "--set-j", "0")[0] == cli.EXIT_INPUT


def test_exit_missing_file(tmp_path):
    assert call("factorize", "--p", str(tmp_path / "no"), "--q", str(tmp_path / "no"))[0] == cli.EXIT_IO


def test_exit_unwritable_output(tmp_path):
    assert call("dft", "--n", "2", "--output", str(tmp_path / "missing" / "x"))[0] == cli.EXIT_IO


def test_exit_not_projection(matrices):
    assert call("factorize", "--p", matrices["bad"], "--q", matrices["e1"])[0] == cli.EXIT_INPUT


def test_exit_no_geodesic(matrices):
    assert call("geodesic", "--p", matrices["e1"], "--q", matrices["e2"])[0] == cli.EXIT_NO_GEODESIC


def test_exit_not_product(monkeypatch):
    from projpair.errors import NotAProjectionProductError

    def boom(args, tol):
        raise NotAProjectionProductError(1.0)
    monkeypatch.setitem(cli.COMMANDS, "dft", boom)
    assert call("dft", "--n", "2")[0] == cli.EXIT_NOT_PRODUCT


def test_exit_numerical(monkeypatch):
    from projpair.errors import ConvergenceError

    def boom(args, tol):
        raise ConvergenceError("no")
    monkeypatch.setitem(cli.COMMANDS, "dft", boom)
    assert call("dft", "--n", "2")[0] == cli.EXIT_NUMERIC


def test_tolerance_env_override(tmp_path):
    nearly = str(tmp_path / "nearly.csv")
    exact = str(tmp_path / "exact.csv")
    kernel.write_matrix(nearly, np.diag([1.0 + 1e-7, 0.0]))
    kernel.write_matrix(exact, np.diag([1.0, 0.0]))
    args = ("geodesic", "--p", nearly, "--q", exact)
    assert run_cli(*args).returncode == cli.EXIT_INPUT
    assert run_cli(*args, env={"PROJPAIR_TOL": "1e-6"}).returncode == 0
    assert run_cli(*args, "--tol", "1e-6").returncode == 0
    assert run_cli(*args, "--tol", "1e-12", env={"PROJPAIR_TOL": "1e-6"}).returncode == cli.EXIT_INPUT


def test_tolerance_must_be_positive():
    assert run_cli("dft", "--n", "2", "--tol", "-1").returncode == cli.EXIT_USAGE


def test_subprocess_determinism(matrices):
    cmds = [
        ("pair", "--n", "16", "--set-i", "0..4", "--set-j", "0..4"),
        ("dft", "--n", "8"),
        ("sweep", "--ns", "16,32", "--format", "csv"),
        ("factorize", "--p", matrices["p"], "--q", matrices["q"], "--seed", "5"),
    ]
    for cmd in cmds:
        a, b = run_cli(*cmd), run_cli(*cmd)
        assert a.returncode == 0
        assert a.stdout == b.stdout
