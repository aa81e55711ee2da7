import json
import subprocess
import sys

import pytest

from rainbowsat.cli import dispatch
from rainbowsat.codes import cyclic_family, format_family, load_family
from rainbowsat.graph import ColoredGraph, format_graph, is_rainbow_saturated, load_graph


@pytest.fixture
def cyclic3(tmp_path):
    p = tmp_path / "cyclic3.code"
    p.write_text(format_family(cyclic_family(3)))
    return p


@pytest.fixture
def empty3(tmp_path):
    p = tmp_path / "empty3.graph"
    p.write_text(format_graph(ColoredGraph.empty(3, 3)))
    return p


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_code_verify(capsys, cyclic3):
    code, out = run(capsys, "code", "verify", "--in", str(cyclic3), "--s", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1 and payload["ok"] is True


def test_code_verify_failure(capsys, tmp_path):
    p = tmp_path / "bad.code"
    p.write_text("3 3\n1 2 3\n3 2 1\n")
    code, out = run(capsys, "code", "verify", "--in", str(p), "--s", "2")
    assert code == 1 and json.loads(out)["violation"] == [[1, 2, 3], [3, 2, 1]]


def test_graph_verify_unsaturated(capsys, empty3):
    code, out = run(capsys, "graph", "verify", "--in", str(empty3), "--s", "3")
    assert code == 1
    assert json.loads(out)["blocking_pair"] == {"pair": [1, 2], "color": 1}


def test_rsat_exact(capsys):
    code, out = run(capsys, "rsat", "exact", "--n", "3", "--s", "3", "--t", "3")
    assert code == 0 and json.loads(out)["minimum"] == 3


def test_rsat_budget_exit_code(capsys):
    code, out = run(capsys, "rsat", "exact", "--n", "4", "--s", "3", "--t", "3", "--budget", "10")
    assert code == 3 and json.loads(out)["error"] == "resource"


def test_rsat_env_budget_and_flag_precedence(capsys, monkeypatch):
    monkeypatch.setenv("RAINBOW_SAT_BUDGET", "10")
    assert run(capsys, "rsat", "exact", "--n", "4", "--s", "3", "--t", "3")[0] == 3
    assert run(capsys, "rsat", "exact", "--n", "4", "--s", "3", "--t", "3", "--budget", "100000")[0] == 0


def test_parameter_errors(capsys):
    assert run(capsys, "nosuch")[0] == 2
    assert run(capsys, "code", "construct", "--t", "3", "--s", "2", "--k", "4")[0] == 2
    assert run(capsys, "bounds", "--n", "10", "--s", "3", "--t", "2")[0] == 2
    assert run(capsys, "code", "exact", "--t", "3", "--s", "2", "--k", "10")[0] == 3


def test_code_pipeline_roundtrip(capsys, tmp_path, cyclic3):
    prod = tmp_path / "prod.code"
    assert run(capsys, "code", "product", "--in", str(cyclic3), "--in", str(cyclic3), "--out", str(prod))[0] == 0
    X = load_family(prod)
    assert len(X) == 9 and X.k == 6
    code, out = run(capsys, "code", "rate", "--in", str(prod), "--s", "2", "--figure", str(tmp_path / "rate.png"))
    assert code == 0
    payload = json.loads(out)
    assert payload["jensen_ok"] and payload["log_base"] == "e"
    assert payload["rate"] == float(f"{payload['rate']:.12g}")
    assert (tmp_path / "rate.png").stat().st_size > 0


def test_construct_greedy_exact_outputs(capsys, tmp_path):
    for argv, size in [
        (["code", "construct", "--t", "3", "--s", "2", "--k", "6"], 6),
        (["code", "construct", "--kind", "cyclic", "--t", "3", "--s", "2", "--k", "3"], 3),
        (["code", "exact", "--t", "3", "--s", "2", "--k", "4"], 4),
        (["code", "exact", "--t", "3", "--s", "2", "--k", "4", "--symmetry"], 4),
    ]:
        out = tmp_path / "x.code"
        assert run(capsys, *argv, "--out", str(out))[0] == 0
        assert len(load_family(out)) == size


def test_greedy_seed_reproducible(capsys, tmp_path):
    a, b = tmp_path / "a.code", tmp_path / "b.code"
    for p in (a, b):
        run(capsys, "code", "greedy", "--t", "3", "--s", "2", "--k", "5", "--seed", "11", "--restarts", "4", "--out", str(p))
    assert a.read_bytes() == b.read_bytes()


def test_graph_build_extend_verify(capsys, tmp_path, cyclic3):
    g0, g1 = tmp_path / "g0.graph", tmp_path / "g1.graph"
    assert run(capsys, "graph", "build", "--code", str(cyclic3), "--out", str(g0), "--figure", str(tmp_path / "g0.png"))[0] == 0
    assert load_graph(g0).edge_count == 9
    assert run(capsys, "graph", "extend", "--in", str(g0), "--s", "3", "--out", str(g1))[0] == 0
    assert is_rainbow_saturated(load_graph(g1), 3).saturated
    code, out = run(capsys, "graph", "verify", "--in", str(g1), "--s", "3")
    assert code == 0 and json.loads(out)["saturated"]
    assert (tmp_path / "g0.png").exists()


def test_graph_report(capsys, cyclic3, tmp_path):
    code, out = run(capsys, "graph", "report", "--t", "3", "--n", "6", "--code", str(cyclic3), "--out", str(tmp_path / "r.graph"))
    payload = json.loads(out)
    assert code == 0 and payload["edges"] <= payload["edge_bound"] == 12


def test_witness_check(capsys, tmp_path, cyclic3):
    g = tmp_path / "g.graph"
    run(capsys, "graph", "build", "--code", str(cyclic3), "--out", str(g))
    code, out = run(capsys, "witness", "check", "--in", str(g), "--s", "3", "--d", "3", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["passed"] and payload["schema"] == 1
    for key in ("A", "B", "d_v", "d_prime_v", "encodings", "relabeling", "qualifying_pairs", "counting_lhs"):
        assert key in payload


def test_witness_check_unsaturated(capsys, empty3):
    assert run(capsys, "witness", "check", "--in", str(empty3), "--s", "3", "--d", "1")[0] == 1


def test_bounds(capsys, tmp_path):
    code, out = run(capsys, "bounds", "--n", "1000", "--s", "3", "--t", "3", "--figure", str(tmp_path / "b.png"))
    payload = json.loads(out)
    assert code == 0 and payload["coefficient"] == pytest.approx(2.16404256133, abs=1e-10)
    assert (tmp_path / "b.png").exists()


def test_console_script_entry(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "rainbowsat.cli", "bounds", "--n", "5", "--s", "3", "--t", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["trivial_upper"] == 10
