import csv
import json
import subprocess
import sys
from importlib import resources

import pytest

from cbgfvs import cli, properties
from cbgfvs.graph import BipartiteGraph, complete_bipartite, cycle_graph, path_graph
from cbgfvs.graphio import format_graph, parse_graph


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    report = json.loads(out) if out.strip().startswith("{") else None
    return code, report, err


def write(tmp_path, name, g):
    path = tmp_path / name
    path.write_text(format_graph(g))
    return str(path)


@pytest.fixture
def schema():
    jsonschema = pytest.importorskip("jsonschema")
    doc = json.loads(resources.files("cbgfvs").joinpath("report.schema.json").read_text())
    return lambda report: jsonschema.validate(report, doc)


def test_recognize(tmp_path, capsys, schema):
    code, rep, _ = run(capsys, "recognize", write(tmp_path, "c4.txt", cycle_graph(4)))
    assert code == 0
    schema(rep)
    assert rep["payload"] == {"chordal_bipartite": True, "certificate": ["a1b1", "a1b2", "a2b1", "a2b2"]}
    assert rep["command"] == "recognize" and rep["seeds"] == [0]

    code, rep, _ = run(capsys, "recognize", write(tmp_path, "c6.txt", cycle_graph(6)))
    assert code == 0
    assert rep["payload"] == {"chordal_bipartite": False, "certificate": None, "longest_induced_cycle": 6}


def test_malformed_input(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("p cbg 1 1 1\ne a1 bb\n")
    code, rep, err = run(capsys, "recognize", str(path))
    assert code == 2 and rep is None
    assert "line 2, column 1" in err
    code, _, err = run(capsys, "fvs", str(tmp_path / "missing.txt"))
    assert code == 2 and "cannot read" in err


def test_fvs(tmp_path, capsys, schema):
    code, rep, _ = run(capsys, "fvs", write(tmp_path, "k33.txt", complete_bipartite(3, 3)))
    assert code == 0
    schema(rep)
    assert rep["payload"]["size"] == 2 and rep["payload"]["certified"]
    code, rep, _ = run(capsys, "fvs", write(tmp_path, "tree.txt", path_graph(9)))
    assert rep["payload"]["size"] == 0

    c6 = write(tmp_path, "c6.txt", cycle_graph(6))
    code, rep, err = run(capsys, "fvs", c6)
    assert code == 3 and "chordal bipartite" in err
    code, rep, _ = run(capsys, "fvs", c6, "--engine", "oracle")
    assert code == 0 and rep["payload"]["size"] == 1 and rep["payload"]["engine"] == "oracle"

    big = write(tmp_path, "big.txt", BipartiteGraph(11, 11))
    code, _, _ = run(capsys, "fvs", big, "--engine", "oracle")
    assert code == 4


def test_separators(tmp_path, capsys, schema):
    code, rep, _ = run(capsys, "separators", write(tmp_path, "p4.txt", path_graph(4)))
    assert code == 0 and rep["payload"]["count"] == 2
    schema(rep)
    code, rep, _ = run(capsys, "separators", write(tmp_path, "c4.txt", cycle_graph(4)), "--verify")
    assert code == 0 and rep["payload"]["violations"] == 0
    assert all(s["complete_bipartite"] for s in rep["payload"]["separators"])
    code, rep, _ = run(capsys, "separators", write(tmp_path, "k11.txt", complete_bipartite(1, 1)))
    assert rep["payload"]["separators"] == []


def test_embed(tmp_path, capsys, schema):
    code, rep, _ = run(capsys, "embed", write(tmp_path, "p4.txt", path_graph(4)))
    assert code == 0
    schema(rep)
    assert rep["payload"]["forest"] == ["{b1,b2} x1", "  {b1} x1"]
    code, _, _ = run(capsys, "embed", write(tmp_path, "c6.txt", cycle_graph(6)))
    assert code == 3


def test_check_exit_codes(tmp_path, capsys, schema):
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing\n")
    code, _, err = run(capsys, "check", str(empty))
    assert code == 2 and "no corpus specs" in err

    ok = tmp_path / "ok.txt"
    ok.write_text("convex a=5 b=5 seed=0..3\ntree n=8 seed=1\n")
    code, rep, _ = run(capsys, "check", str(ok), "--suite", "recognition")
    assert code == 0
    schema(rep)
    assert rep["payload"]["properties"]["recognition.agree"]["pass"] == 5


def test_check_reports_injected_fault(tmp_path, capsys, monkeypatch):
    from cbgfvs.fvs import FvsResult

    def broken(g, **kw):
        return FvsResult.from_mask(g, 0, engine="dp")

    monkeypatch.setattr(properties, "solve_fvs", broken)
    manifest = tmp_path / "m.txt"
    manifest.write_text("complete_bipartite p=2 q=2\n")
    code, rep, _ = run(capsys, "check", str(manifest), "--suite", "fvs")
    assert code == 1
    bad = rep["payload"]["properties"]["fvs.exact"]
    assert bad["fail"] == 1
    assert parse_graph(bad["counterexample"]["graph"]) == complete_bipartite(2, 2)


def test_check_exhaustive_eight(tmp_path, capsys):
    manifest = tmp_path / "m.txt"
    manifest.write_text("exhaustive max=8\n")
    code, rep, _ = run(capsys, "check", str(manifest))
    props = rep["payload"]["properties"]
    failing = {name for name, t in props.items() if t["fail"]}
    # the prefix form of the threshold property is false; every other property holds
    assert failing == {"fvs.threshold_prefix"}
    assert props["fvs.threshold_suffix"]["fail"] == 0
    assert code == 1


def test_bench(tmp_path, capsys, schema):
    out = tmp_path / "bench"
    code, rep, _ = run(capsys, "bench", "--sizes", "1,20,40", "--out", str(out))
    assert code == 0
    schema(rep)
    rows = rep["payload"]["rows"]
    assert rows[0]["n"] == 1 and rows[0]["fvs_size"] == 0
    assert all(r["max_contexts"] <= r["context_cap"] for r in rows)
    assert (out / "bench_convex_seed0.png").stat().st_size > 0
    with open(out / "bench_convex_seed0.csv") as fh:
        assert [int(r["n"]) for r in csv.DictReader(fh)] == [1, 20, 40]


def test_bench_errors(tmp_path, capsys):
    code, _, _ = run(capsys, "bench", "--family", "nope", "--sizes", "10", "--out", str(tmp_path))
    assert code == 2
    code, _, _ = run(capsys, "bench", "--sizes", "a,b", "--out", str(tmp_path))
    assert code == 2
    code, rep, _ = run(capsys, "bench", "--sizes", "30", "--cap-factor", "0", "--out", str(tmp_path))
    assert code == 4
    breach = rep["payload"]["cap_breach"]
    assert breach["n"] == 30 and parse_graph(breach["graph"]).n == 30


def test_generate_and_seed_env(tmp_path, capsys, monkeypatch):
    code = cli.main(["generate", "convex", "a=4", "b=4", "--format", "text", "--seed", "3"])
    text = capsys.readouterr().out
    assert code == 0 and parse_graph(text).n == 8

    monkeypatch.setenv("CBG_FVS_SEED", "3")
    code, rep, _ = run(capsys, "generate", "convex", "a=4", "b=4")
    assert rep["seeds"] == [3]
    assert parse_graph(rep["payload"]["graph"]) == parse_graph(text)

    monkeypatch.setenv("CBG_FVS_SEED", "x")
    code, _, err = run(capsys, "generate", "convex", "a=4", "b=4")
    assert code == 2 and "CBG_FVS_SEED" in err


def test_text_format(tmp_path, capsys):
    code = cli.main(["fvs", write(tmp_path, "c4.txt", cycle_graph(4)), "--format", "text"])
    out = capsys.readouterr().out
    assert code == 0
    assert "  size: 1" in out.splitlines()


def test_payload_is_deterministic(tmp_path, capsys):
    path = write(tmp_path, "k.txt", complete_bipartite(3, 4))
    _, first, _ = run(capsys, "fvs", path)
    _, second, _ = run(capsys, "fvs", path)
    first.pop("timing_ms")
    second.pop("timing_ms")
    assert first == second


def test_module_entry_point(tmp_path):
    path = write(tmp_path, "c4.txt", cycle_graph(4))
    proc = subprocess.run([sys.executable, "-m", "cbgfvs", "recognize", path], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["chordal_bipartite"] is True
    assert proc.stderr == ""
