import json
import subprocess
import sys

import pytest

from helpers import TRIANGLE
from specmix.cli import main
from specmix.errors import NoConvergence
from specmix.graph import parse_graph
from specmix.sweep import ExperimentConfig, instance_graph


@pytest.fixture
def triangle(tmp_path):
    path = tmp_path / "triangle.txt"
    path.write_text(TRIANGLE)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def body(out):
    header, rest = out.split("\n", 1)
    assert header.startswith("# specmix ")
    return json.loads(header.split(" ", 3)[3]), rest


def test_spectrum(capsys, triangle):
    code, out, _ = run(capsys, "spectrum", "-g", triangle, "--eps", "2")
    cfg, rest = body(out)
    assert code == 0 and cfg["eps"] == 2.0
    assert "inertia 1 0 2" in rest and "signature 1" in rest


def test_detpoly(capsys, triangle):
    code, out, _ = run(capsys, "detpoly", "-g", triangle)
    lines = body(out)[1].splitlines()
    assert code == 0 and lines[0] == "0 2 -2"
    assert len(lines) == 2 and lines[1].startswith("root in (0.99")


def test_perturb_and_bounds(capsys, triangle):
    code, out, _ = run(capsys, "perturb", "-g", triangle)
    report = json.loads(body(out)[1])
    assert code == 0 and report["positive_definite_small_eps"] is True
    code, out, _ = run(capsys, "bounds", "-g", triangle)
    bounds = json.loads(body(out)[1])
    assert (bounds["bound_kernel"], bounds["bound_signature"], bounds["combined"]) == (2, 4, 2)


def test_sweep(capsys, triangle, tmp_path):
    code, out, err = run(capsys, "sweep", "-g", triangle, "--eps-min", "0.01", "--eps-max", "2",
                         "--eps-step", "0.01")
    rows = [line.split(",") for line in out.splitlines() if not line.startswith("#")][1:]
    sigs = [int(r[5]) for r in rows if r[6] == "0"]
    assert code == 0 and sigs[0] == 3 and sigs[-1] == 1
    assert "transitions_observed 1" in err
    path = tmp_path / "out.csv"
    run(capsys, "sweep", "-g", triangle, "--eps-max", "1", "--eps-step", "0.1", "--csv", str(path))
    assert path.read_text().splitlines()[1] == "instance,eps,n_neg,n_zero,n_pos,signature,near_singular"


def test_threads_from_environment(capsys, triangle, monkeypatch):
    monkeypatch.setenv("SPECMIX_THREADS", "3")
    _, out, _ = run(capsys, "sweep", "-g", triangle, "--eps-max", "1", "--eps-step", "0.5")
    assert body(out)[0]["threads"] == 3


def test_conjecture(capsys, tmp_path):
    js = tmp_path / "summary.json"
    dump = tmp_path / "graphs"
    code, out, _ = run(capsys, "conjecture", "--mode", "graph", "--instances", "4", "--seed", "7",
                       "--eps-step", "0.5", "--json", str(js), "--dump-graphs", str(dump))
    cfg, _ = body(out)
    assert code == 0 and cfg["seed"] == 7 and cfg["n_min"] == 5
    summary = json.loads(js.read_text())
    assert summary["monotonicity_violations"] == [] and summary["all_within_bounds"]
    config = ExperimentConfig(instances=4, seed=7, eps_step=0.5)
    for k in range(4):
        assert parse_graph((dump / f"instance_{k:03d}.txt").read_text()) == instance_graph(config, k)


def test_conjecture_matrix(capsys):
    code, out, _ = run(capsys, "conjecture", "--mode", "matrix", "--instances", "2", "--eps-step", "1")
    assert code == 0 and json.loads(body(out)[1])["config"]["mode"] == "matrix"


def test_dynamics(capsys, tmp_path):
    path = tmp_path / "paths.txt"
    path.write_text("n 6\ng 1 2\ng 2 3\ng 4 5\ng 5 6\nh 1 3\nh 4 6\nh 3 4\n")
    prefix = tmp_path / "traj.csv"
    code, out, _ = run(capsys, "dynamics", "-g", str(path), "--eps", "0.01", "--trials", "2",
                       "--csv", str(prefix))
    report = json.loads(body(out)[1])
    assert code == 0 and report["empirical"] == ["decays", "decays"]
    assert (tmp_path / "traj_1.csv").read_text().startswith("t,norm,potential")


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--instances", "5")
    assert code == 0 and "FAIL" not in out and out.count("PASS") == 6


@pytest.mark.parametrize("argv, code", [
    ([], 1),
    (["bogus"], 1),
    (["spectrum", "--eps", "1"], 1),
    (["spectrum", "-g", "/nonexistent/file", "--eps", "1"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_input_errors(capsys, tmp_path, triangle):
    bad = tmp_path / "bad.txt"
    bad.write_text("n 2\ng 1 2\nh 2 1\n")
    code, _, err = run(capsys, "bounds", "-g", str(bad))
    assert code == 2 and "line 3" in err
    assert run(capsys, "spectrum", "-g", triangle, "--eps", "-1")[0] == 2


def test_numerical_failure_exit(capsys, triangle, monkeypatch):
    import specmix.cli

    def fail(m):
        raise NoConvergence("forced")

    monkeypatch.setattr(specmix.cli, "sym_eigenvalues", fail)
    code, _, err = run(capsys, "spectrum", "-g", triangle, "--eps", "1")
    assert code == 3 and "NoConvergence" in err


def test_identically_singular(capsys, tmp_path):
    empty_h = tmp_path / "path.txt"
    empty_h.write_text("n 3\ng 1 2\ng 2 3\n")
    code, out, _ = run(capsys, "detpoly", "-g", str(empty_h))
    assert code == 0 and "identically singular" in out


def test_module_entry_point(triangle):
    proc = subprocess.run([sys.executable, "-m", "specmix", "detpoly", "-g", triangle],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.splitlines()[1] == "0 2 -2"
