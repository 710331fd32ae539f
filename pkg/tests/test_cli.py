import json

import pytest

from oigraph.cli import main
from oigraph.gf import GF
from oigraph.geometry import space_make
from oigraph.graph import build_graph, graph_from_json
from oigraph.verify import STATUS_FAIL, STATUS_PASS, CheckRecord, VerifyReport


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_counts_line(capsys):
    code, out, err = run(capsys, "build", "--nu", "2", "--delta", "0", "--field", "3")
    assert code == 0
    assert out == "Oi(4, 3): 210 vertices, 873 edges, 24 loops\n"


def test_build_json_artifact_round_trip(tmp_path, capsys):
    path = tmp_path / "g.json"
    code, out, _ = run(
        capsys, "build", "--nu", "1", "--delta", "1", "--disc", "z", "--field", "3",
        "--out", str(path),
    )
    assert code == 0
    assert out == "Oi(3, 3)[z]: 26 vertices, 37 edges, 4 loops\n"
    g = graph_from_json(path.read_text())
    assert g == build_graph(space_make(1, 1, GF(3), "z"))


def test_build_json_stdout_keeps_counts_on_stderr(capsys):
    code, out, err = run(
        capsys, "build", "--nu", "1", "--delta", "0", "--field", "3", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert len(payload["vertices"]) == 4
    assert "4 vertices" in err


def test_build_dot_deterministic(capsys):
    args = ("build", "--nu", "1", "--delta", "0", "--field", "3", "--format", "dot")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    assert "// generated by oigraph" in first
    _, bare, _ = run(capsys, *args, "--no-header")
    assert "//" not in bare


def test_build_even_characteristic_usage_error(capsys):
    code, _, err = run(capsys, "build", "--nu", "1", "--delta", "0", "--field", "2")
    assert code == 2
    assert "odd prime power" in err


def test_build_budget_exit(capsys):
    code, _, err = run(
        capsys, "build", "--nu", "2", "--delta", "0", "--field", "3", "--budget", "100"
    )
    assert code == 3
    assert "budget" in err


def test_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv("OIGRAPH_BUDGET", "50")
    code, _, _ = run(capsys, "build", "--nu", "2", "--delta", "0", "--field", "3")
    assert code == 3


def test_classify_dim1_rows(capsys):
    code, out, _ = run(
        capsys, "classify", "--nu", "2", "--delta", "0", "--field", "3", "--dim", "1"
    )
    assert code == 0
    payload = json.loads(out)
    rows = payload["rows"]
    assert len(rows) == 3
    assert sum(r["count"] for r in rows) == 40


def test_classify_csv(capsys):
    code, out, _ = run(
        capsys, "classify", "--nu", "2", "--delta", "0", "--field", "3", "--dim", "1",
        "--format", "csv",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# oigraph classify")
    assert lines[1] == "dim,type,count"
    assert len(lines) == 5


def test_classify_deterministic(capsys):
    args = ("classify", "--nu", "1", "--delta", "1", "--field", "3")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_orbits_json(capsys):
    code, out, _ = run(capsys, "orbits", "--nu", "1", "--delta", "1", "--field", "3")
    assert code == 0
    payload = json.loads(out)
    assert sum(o["size"] for o in payload["orbits"]) == 26
    assert len(payload["orbits"]) == 6


def test_diameter_infinite(capsys):
    code, out, _ = run(capsys, "diameter", "--nu", "1", "--delta", "0", "--field", "3")
    assert code == 0
    assert json.loads(out) == {"space": "Oi(2, 3)", "diameter": "infinite"}


def test_diameter_finite(capsys):
    code, out, _ = run(capsys, "diameter", "--nu", "2", "--delta", "0", "--field", "3")
    assert code == 0
    assert json.loads(out)["diameter"] == 4


def test_aut_formula(capsys):
    code, out, _ = run(
        capsys, "aut", "--method", "formula", "--nu", "1", "--delta", "0", "--field", "9"
    )
    assert code == 0
    assert json.loads(out) == {"order": 768}


def test_aut_formula_uncovered(capsys):
    code, _, err = run(
        capsys, "aut", "--method", "formula", "--nu", "1", "--delta", "1", "--field", "3"
    )
    assert code == 2
    assert "uncovered" in err


def test_aut_generated(capsys):
    code, out, _ = run(capsys, "aut", "--nu", "2", "--delta", "0", "--field", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] == 576
    assert set(payload) == {"order", "base", "transversal-sizes"}
    prod = 1
    for s in payload["transversal-sizes"]:
        prod *= s
    assert prod == 576
    assert len(payload["base"]) == len(payload["transversal-sizes"])


def test_aut_search(capsys):
    code, out, _ = run(
        capsys, "aut", "--method", "search", "--nu", "1", "--delta", "0", "--field", "5"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] == 16
    assert set(payload) == {"order", "generators", "node-count", "runtime"}
    assert all(sorted(gen) == list(range(6)) for gen in payload["generators"])


def test_unknown_command(capsys):
    assert main(["frobnicate"]) == 2


def _stub_report(ok):
    status = STATUS_PASS if ok else STATUS_FAIL
    rec = CheckRecord("stub", "derived oracle", 1, 1 if ok else 2, status, 0.1)
    return VerifyReport(suite="core", records=[rec])


def test_verify_exit_codes(capsys, monkeypatch):
    import oigraph.cli as cli_mod

    monkeypatch.setattr(cli_mod, "run_suite", lambda *a, **k: _stub_report(True))
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "0 failed" in out

    monkeypatch.setattr(cli_mod, "run_suite", lambda *a, **k: _stub_report(False))
    code, out, _ = run(capsys, "verify")
    assert code == 1
    assert "expected 1, computed 2" in out


def test_verify_json_format(capsys, monkeypatch):
    import oigraph.cli as cli_mod

    monkeypatch.setattr(cli_mod, "run_suite", lambda *a, **k: _stub_report(True))
    code, out, _ = run(capsys, "verify", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["suite"] == "core"
    assert payload["checks"][0]["name"] == "stub"


def test_verify_forwards_flags(capsys, monkeypatch):
    import oigraph.cli as cli_mod

    seen = {}

    def fake(suite, budget=None, threads=1):
        seen.update(suite=suite, budget=budget, threads=threads)
        return _stub_report(True)

    monkeypatch.setattr(cli_mod, "run_suite", fake)
    code, _, _ = run(capsys, "verify", "--suite", "extended", "--budget", "5000", "--threads", "3")
    assert code == 0
    assert seen == {"suite": "extended", "budget": 5000, "threads": 3}
