"""CLI flags, exit codes, and byte-deterministic output."""

import json

import pytest

from hspex.cli import main
from hspex.hypergraph import serialize, complete_r_graph
from conftest import bowtie3, cycle, path3


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, g in {
        "p3": path3(),
        "k3": complete_r_graph(3, 2),
        "c4": cycle(4),
        "bowtie": bowtie3(),
    }.items():
        f = tmp_path / f"{name}.hg"
        f.write_text(serialize(g))
        paths[name] = str(f)
    two = tmp_path / "2k3.hg"
    two.write_text("2 6 6\n0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n")
    paths["2k3"] = str(two)
    empty = tmp_path / "empty.hg"
    empty.write_text("2 3 0\n")
    paths["empty"] = str(empty)
    bad = tmp_path / "bad.hg"
    bad.write_text("3 3 1\n0 0 1\n")
    paths["bad"] = str(bad)
    return paths


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestRho:
    def test_path(self, capsys, files):
        code, out, _ = run(capsys, ["rho", "--input", files["p3"], "--p", "2"])
        assert code == 0
        assert "1.41421356" in out

    def test_empty_graph(self, capsys, files):
        code, out, _ = run(capsys, ["rho", "--input", files["empty"], "--p", "2"])
        assert code == 0 and "rho = 0" in out

    def test_parse_error_exit_1(self, capsys, files):
        code, _, err = run(capsys, ["rho", "--input", files["bad"], "--p", "2"])
        assert code == 1 and "line 2" in err

    def test_missing_file_exit_1(self, capsys, tmp_path):
        code, _, err = run(
            capsys, ["rho", "--input", str(tmp_path / "nope.hg"), "--p", "2"]
        )
        assert code == 1

    def test_json_mode_parses(self, capsys, files):
        code, out, _ = run(
            capsys, ["rho", "--input", files["p3"], "--p", "2", "--json"]
        )
        data = json.loads(out)
        assert abs(data["rho"] - 2**0.5) < 1e-8
        assert len(data["x"]) == 3

    def test_no_convergence_exit_2(self, capsys, files):
        code, out, _ = run(
            capsys,
            ["rho", "--input", files["p3"], "--p", "1.5",
             "--max-iter", "2", "--starts", "1", "--json"],
        )
        assert code == 2
        assert "NoConvergence" in json.loads(out)["flags"]


class TestCheck:
    def test_tight_failure_exit_3(self, capsys, files):
        code, out, _ = run(
            capsys, ["check", "tight", "--input", files["2k3"], "--k", "1"]
        )
        assert code == 3
        assert json.loads(out)["witness"] == [0, 1, 2]

    def test_bridge_holds_exit_0(self, capsys, files):
        code, out, _ = run(
            capsys,
            ["check", "bridge", "--input", files["p3"], "--edge", "0,1", "--k", "1"],
        )
        assert code == 0
        data = json.loads(out)
        assert data["A"] == [0] and data["B"] == [1, 2]

    def test_plateau_exit_0(self, capsys, files):
        code, out, _ = run(
            capsys,
            [
                "check", "plateau", "--input", files["bowtie"],
                "--edge", "0,1,2", "--lambda", "2,1",
            ],
        )
        assert code == 0 and json.loads(out)["result"] is True

    def test_missing_flag_exit_1(self, capsys, files):
        code, _, err = run(capsys, ["check", "tight", "--input", files["2k3"]])
        assert code == 1

    def test_unknown_edge_exit_1(self, capsys, files):
        code, _, err = run(
            capsys,
            ["check", "bridge", "--input", files["p3"], "--edge", "0,2", "--k", "1"],
        )
        assert code == 1


class TestExtremalSaturate:
    def test_extremal_lambda(self, capsys, files):
        code, out, _ = run(
            capsys,
            ["extremal", "--forbid", files["k3"], "--n", "5", "--p", "2",
             "--starts", "4"],
        )
        assert code == 0
        data = json.loads(out)
        assert abs(data["value"] - 6**0.5) < 1e-8
        assert data["argmax_keys"]

    def test_extremal_pi(self, capsys, files):
        code, out, _ = run(capsys, ["extremal", "--forbid", files["k3"], "--n", "5"])
        data = json.loads(out)
        assert data["value"] == 6.0

    def test_too_large_exit_4(self, capsys, files):
        code, _, err = run(
            capsys, ["extremal", "--forbid", files["k3"], "--n", "20", "--p", "2"]
        )
        assert code == 4 and "guard" in err

    def test_extremal_full_audit(self, capsys, files):
        code, out, _ = run(
            capsys,
            ["extremal", "--forbid", files["k3"], "--n", "4", "--p", "2",
             "--starts", "4", "--full"],
        )
        assert code == 0
        assert abs(json.loads(out)["value"] - 2.0) < 1e-8

    def test_saturate(self, capsys, files):
        code, out, _ = run(
            capsys, ["saturate", "--forbid", files["k3"], "--n", "4", "--order", "lex"]
        )
        assert code == 0
        assert out == "2 4 3\n0 1\n0 2\n0 3\n"

    def test_saturate_random_seeded(self, capsys, files):
        argv = ["saturate", "--forbid", files["k3"], "--n", "5",
                "--order", "random", "--seed", "3"]
        _, out1, _ = run(capsys, argv)
        _, out2, _ = run(capsys, argv)
        assert out1 == out2


class TestExperiment:
    def test_density_trend_files(self, capsys, files, tmp_path):
        out_dir = str(tmp_path / "reports")
        code, _, err = run(
            capsys,
            ["experiment", "density-trend", "--forbid", files["k3"],
             "--n", "4..6", "--out", out_dir],
        )
        assert code == 0
        assert (tmp_path / "reports" / "density-trend-0.json").exists()
        assert (tmp_path / "reports" / "density-trend-0.csv").exists()

    def test_byte_identical_json(self, capsys, files, tmp_path):
        argv = [
            "experiment", "ratio-scaling", "--forbid", files["k3"],
            "--p", "2", "--n", "4..5", "--seed", "7",
            "--out", str(tmp_path), "--json",
        ]
        _, out1, _ = run(capsys, argv)
        _, out2, _ = run(capsys, argv)
        assert out1 == out2

    def test_plateau_construct(self, capsys, files, tmp_path):
        code, _, err = run(
            capsys,
            ["experiment", "plateau-construct", "--forbid", files["bowtie"],
             "--k", "2", "--ell", "2", "--out", str(tmp_path)],
        )
        assert code == 0 and "pass" in err

    def test_degree_bound_small(self, capsys, tmp_path):
        code, _, err = run(
            capsys,
            ["experiment", "degree-bound", "--count", "3", "--seed", "5",
             "--out", str(tmp_path)],
        )
        assert code == 0
        assert (tmp_path / "degree-bound-5.json").exists()

    def test_coarseness_probe(self, capsys, files, tmp_path):
        code, _, err = run(
            capsys,
            ["experiment", "coarseness-probe", "--forbid", files["k3"],
             "--p", "2", "--n", "4..5", "--out", str(tmp_path)],
        )
        assert code == 0 and "exploratory" in err

    def test_env_thread_cap_accepted(self, capsys, files, monkeypatch):
        monkeypatch.setenv("HSPEX_THREADS", "2")
        code, _, _ = run(capsys, ["extremal", "--forbid", files["k3"], "--n", "4"])
        assert code == 0
