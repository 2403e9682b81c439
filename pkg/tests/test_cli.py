import os, sys

current_dir = os.path.dirname(os.path.realpath(__file__))
project_dir = os.path.abspath(os.path.join(current_dir, '..'))

sys.path.append(project_dir)

import json

from Analysis import SWEEP_COLUMNS
from Cli import run_command


def _run(capsys, *argv):
    code = run_command([str(arg) for arg in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_prints_ground_energy(tmp_path, capsys):
    out = tmp_path / "solve.csv"
    code, stdout, _ = _run(capsys, "solve", "--dim", 1, "--degree", 2, "--extent", 200, "--output", out)
    assert code == 0
    assert "E0/t = -2.30940108" in stdout
    lines = out.read_text().splitlines()
    assert lines[0] == "index,E_over_t,E_bind_over_t,residual"
    index, _, binding, residual = lines[1].split(",")
    assert index == "0"
    assert float(binding) > 0
    assert float(residual) < 1e-8
    manifest = json.loads((tmp_path / "solve.manifest.json").read_text())
    assert manifest["command"] == "solve"
    assert manifest["parameters"]["spec"]["extent"] == 200
    assert manifest["outputs"] == [str(out)]


def test_outputs_are_byte_identical_across_runs(tmp_path, capsys):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (first, second):
        assert _run(capsys, "solve", "--dim", 2, "--degree", 3, "--extent", 10, "--output", path)[0] == 0
    assert first.read_bytes() == second.read_bytes()


def test_analytic_row(tmp_path, capsys):
    out = tmp_path / "analytic.csv"
    code, stdout, _ = _run(capsys, "analytic", "--degree", 3, 2, "--output", out)
    assert code == 0
    assert "alpha=0.804718956" in stdout
    assert "E/t=-2.68328157" in stdout
    assert "g_tilde_M=0.894427191" in stdout
    lines = out.read_text().splitlines()
    assert lines[0] == "M,alpha,E_over_t,E_bind_over_t,g_tilde_M,junction_fraction"
    assert len(lines) == 3


def test_analytic_potentials(tmp_path, capsys):
    out = tmp_path / "potential.csv"
    code, _, _ = _run(capsys, "analytic", "--potential-tilde", 1.0, "--output", out)
    assert code == 0
    row = out.read_text().splitlines()[1].split(",")
    assert row[-1] == "0.5"


def test_wavefunction_and_graph_dumps(tmp_path, capsys):
    psi, graph = tmp_path / "psi.csv", tmp_path / "graph.csv"
    code, _, _ = _run(capsys, "solve", "--dim", 2, "--degree", 2, "--extent", 8, "--reduce-sheets",
                      "--wavefunction", psi, "--dump-graph", graph, "--output", tmp_path / "s.csv")
    assert code == 0
    assert len(psi.read_text().splitlines()) == 2 * 64 - 1 + 1
    assert len(graph.read_text().splitlines()) == 2 * 64 - 1 + 1


def test_profile_writes_fit_report(tmp_path, capsys):
    out = tmp_path / "profile.csv"
    code, stdout, _ = _run(capsys, "profile", "--dim", 1, "--degree", 3, "--extent", 60, "--output", out)
    assert code == 0
    report = json.loads((tmp_path / "profile.fit.json").read_text())
    assert abs(report["gamma"] - 0.804718956) < 1e-5
    assert abs(report["energy_decomposition"]["junction_fraction"] - 0.8) < 1e-8
    assert out.read_text().startswith("radius,mean_amplitude,orbit_spread,multiplicity\n")


def test_sweep_m(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code, stdout, _ = _run(capsys, "sweep-m", "--dim", 1, "--extent", 60, "--degrees", 3, 2, "--threads", 2,
                           "--output", out)
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].split(",") == SWEEP_COLUMNS
    assert [line.split(",")[1] for line in lines[1:]] == ["2", "3"]
    assert "2 points, 2 bound" in stdout


def test_extrapolate_classifies(tmp_path, capsys):
    code, stdout, _ = _run(capsys, "extrapolate", "--dim", 1, "--degree", 2, "--extents", 40, 60, 80,
                           "--output", tmp_path / "x.csv")
    assert code == 0
    assert stdout.startswith("Bound")
    report = json.loads((tmp_path / "x.json").read_text())
    assert report["classification"] == "Bound"
    assert report["E_bind_fit"]["powers"] == [0, 2]
    assert report["r_avg_over_L_fit"]["powers"] == [0, 1]


def test_extrapolate_single_form(tmp_path, capsys):
    code, _, _ = _run(capsys, "extrapolate", "--dim", 1, "--degree", 2, "--extents", 40, 60, 80, "--form",
                      "quadratic", "--output", tmp_path / "x.csv")
    assert code == 0
    report = json.loads((tmp_path / "x.json").read_text())
    assert report["E_bind_fit"]["powers"] == report["r_avg_over_L_fit"]["powers"] == [0, 1, 2]
    manifest = json.loads((tmp_path / "x.manifest.json").read_text())
    assert manifest["parameters"]["bound"]["energy_form"] == "quadratic"


def test_equivalence_command(tmp_path, capsys):
    out = tmp_path / "eq.csv"
    code, stdout, _ = _run(capsys, "equivalence", "--dim", 1, "--extent", 50, "--degrees", 2, 3, "--tol-g", 1e-6,
                           "--output", out)
    assert code == 0
    assert "log-log slope" in stdout
    assert out.read_text().splitlines()[0] == "M,g_M_over_t,gamma_singularity,gamma_potential,E_bind_over_t"


def test_config_file_with_flag_override(tmp_path, capsys):
    config = tmp_path / "run.cfg"
    config.write_text("dim = 1\ndegree = 2\nextent = 50\n")
    code, _, _ = _run(capsys, "solve", "--config", config, "--extent", 60, "--output", tmp_path / "c.csv")
    assert code == 0
    manifest = json.loads((tmp_path / "c.manifest.json").read_text())
    assert manifest["parameters"]["spec"]["extent"] == 60
    assert manifest["parameters"]["spec"]["degree"] == 2


def test_exit_codes(tmp_path, capsys):
    assert _run(capsys, "solve", "--dim", 1, "--extent", 20, "--bogus")[0] == 2
    code, _, err = _run(capsys, "solve", "--dim", 1, "--extent", 2, "--output", tmp_path / "bad.csv")
    assert code == 2
    assert "extent" in err
    code, _, err = _run(capsys, "solve", "--dim", 1, "--degree", 2, "--extent", 200, "--max-iterations", 2,
                        "--output", tmp_path / "slow.csv")
    assert code == 3
    assert "ConvergenceError" in err
    assert not (tmp_path / "slow.csv").exists()

    config = tmp_path / "bad.cfg"
    config.write_text("colour = blue\n")
    assert _run(capsys, "solve", "--config", config, "--dim", 1, "--extent", 20)[0] == 2


def test_corrupted_cache_exit_code(tmp_path, capsys):
    cache = tmp_path / "cache"
    argv = ["solve", "--dim", 1, "--degree", 2, "--extent", 40, "--cache-dir", cache, "--output", tmp_path / "o.csv"]
    assert _run(capsys, *argv)[0] == 0
    vec = next(name for name in os.listdir(cache) if name.endswith(".vec"))
    (cache / vec).write_bytes(b"\x00" * 16)
    code, _, err = _run(capsys, *argv)
    assert code == 4
    assert "CacheError" in err


def test_solve_several_states(tmp_path, capsys):
    out = tmp_path / "chain.csv"
    code, stdout, _ = _run(capsys, "solve", "--dim", 1, "--extent", 30, "--boundary", "open", "--k", 3,
                           "--output", out)
    assert code == 0
    assert len(out.read_text().splitlines()) == 4
    assert "bound states = 0/3" in stdout
