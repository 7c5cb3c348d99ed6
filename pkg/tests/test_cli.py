import json
import subprocess
import sys

import numpy as np
import pytest

from helpers import make, params, random_graph
from multimode.cli import main
from multimode.fileio import ParseError, format_graph, parse_graph, parse_vectors, read_graph
from multimode.graph import build_graph


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def strip_timing(recs):
    return [{k: v for k, v in r.items() if k != "ms"} for r in recs]


@pytest.fixture
def edge_file(tmp_path):
    p = tmp_path / "edge.txt"
    p.write_text("c one edge\np multimode 1 2 1 0\ne 0 0 1\n")
    return p


@pytest.fixture
def ov_no_file(tmp_path):
    p = tmp_path / "vec.txt"
    p.write_text("a 11\nb 10\n")
    return p


# ---------------------------------------------------------------- file format

def test_round_trip_keeps_ids_and_edges():
    rng = np.random.default_rng(0)
    for directed in (False, True):
        case = random_graph(rng, 15, 3, 0.2, M=5, directed=directed)
        text = format_graph(case.g, ["hello"])
        back = parse_graph(text).graph
        assert (back.n, back.k, back.directed) == (case.g.n, case.g.k, case.g.directed)
        assert back.all_edges() == case.g.all_edges()
        assert format_graph(back, ["hello"]) == text


def test_default_weight_is_one():
    g = parse_graph("p multimode 2 3 2 1\ne 0 0 1\ne 1 1 2 4\n").graph
    assert g.all_edges() == [(0, 0, 1, 1), (1, 1, 2, 4)]


@pytest.mark.parametrize(
    "text,line",
    [
        ("e 0 0 1\n", 1),
        ("p multimode 1 2 1 0\ne 0 0 5\n", 2),
        ("p multimode 1 2 2 0\ne 0 0 1\n", 1),
        ("p multimode 1 2 1 0\ne 0 0 1 -3\n", 2),
        ("p multimode 1 2 1 2\n", 1),
        ("p multimode 1 2 0 0\nx foo\n", 2),
        ("p multimode 1 2 1 0\ne 1 0 1\n", 2),
        ("p multimode 1 2 1 0\ne 0 0 one\n", 2),
        ("c nothing\n", 0),
    ],
)
def test_parse_errors_report_lines(text, line):
    with pytest.raises(ParseError) as exc:
        parse_graph(text, "f.txt")
    assert exc.value.line == line
    assert str(exc.value).startswith(f"f.txt:{line}:")


def test_parse_labels_and_vectors():
    gf = parse_graph("p multimode 1 1 0 0\nl radius = inf\nl diameter >= 4\n")
    assert [str(lb) for lb in gf.labels] == ["radius = inf", "diameter >= 4"]
    A, B = parse_vectors("c x\na 101\nb 011\nb 000\n")
    assert A == [[1, 0, 1]] and B == [[0, 1, 1], [0, 0, 0]]
    with pytest.raises(ParseError):
        parse_vectors("a 10\nb 1\n")


# ---------------------------------------------------------------- commands

def test_exact_single_edge(edge_file, capsys):
    code, out, _ = run(["exact", edge_file], capsys)
    (rec,) = records(out)
    assert code == 0
    assert rec["diameter"] == 1 and rec["radius"] == 1
    assert "ms" in rec


def test_exact_apsp_dump(edge_file, capsys):
    _, out, _ = run(["exact", edge_file, "--apsp"], capsys)
    assert records(out)[0]["apsp"] == [[0, 1], [1, 0]]


def test_gen_then_exact_matches_label(tmp_path, ov_no_file, capsys):
    out_path = tmp_path / "g.txt"
    code, out, _ = run(["gen", "--family", "diam-2mode-undirected", "--ov-file", ov_no_file, "--out", out_path], capsys)
    assert code == 0
    assert (tmp_path / "g.txt.label").read_text() == "l diameter = 2\n"
    code, out, _ = run(["exact", out_path], capsys)
    (rec,) = records(out)
    assert rec["diameter"] == 2 and rec["labels_hold"] == [True]
    code, out, _ = run(["approx-diam", out_path, "--algo", "3approx"], capsys)
    (rec,) = records(out)
    assert 1 <= rec["estimate"] <= 2 and rec["certified"] == rec["estimate"]


def test_gen_random_to_stdout(capsys):
    code, out, _ = run(["gen", "--family", "radius-logmode", "--random", "4", "3", "0.5", "--seed", "2"], capsys)
    assert code == 0
    gf = parse_graph(out)
    assert gf.graph.k == 5 and len(gf.labels) == 1


@pytest.mark.parametrize("algo", ["3approx", "2approx", "2.5approx"])
def test_approx_diam_sandwich_and_determinism(tmp_path, capsys, algo):
    case = random_graph(np.random.default_rng(3), 30, 2, 0.05)
    p = tmp_path / "g.txt"
    p.write_text(format_graph(case.g))
    D = params(case).diameter
    outs = []
    for _ in range(2):
        code, out, _ = run(["approx-diam", p, "--algo", algo, "--seed", 7], capsys)
        assert code == 0
        outs.append(strip_timing(records(out)))
    assert outs[0] == outs[1]
    assert outs[0][0]["estimate"] <= D


def test_approx_diam_3mode_with_range(tmp_path, capsys):
    case = random_graph(np.random.default_rng(4), 20, 3, 0.05)
    p = tmp_path / "g.txt"
    p.write_text(format_graph(case.g))
    code, out, _ = run(["approx-diam", p, "--algo", "3mode", "--range", "1:50"], capsys)
    assert code == 0 and records(out)[0]["estimate"] <= params(case).diameter


def test_approx_radius(tmp_path, capsys):
    case = random_graph(np.random.default_rng(5), 25, 2, 0.05)
    p = tmp_path / "g.txt"
    p.write_text(format_graph(case.g))
    code, out, _ = run(["approx-radius", p], capsys)
    (rec,) = records(out)
    R = params(case).radius
    assert code == 0 and R <= rec["estimate"] <= 3 * R


def test_directed_tasks(tmp_path, capsys):
    p = tmp_path / "d.txt"
    p.write_text(format_graph(make(3, 2, True, [(0, 0, 1, 1), (0, 1, 2, 1), (1, 2, 1, 1), (1, 1, 0, 1)]).g))
    results = {}
    for task in ("finite-diam", "dag-diam", "dag-finite-ecc", "min-ecc"):
        code, out, _ = run(["directed", p, "--task", task], capsys)
        assert code == 0
        results[task] = records(out)[0]
    assert results["finite-diam"]["finite"] is True
    assert 1 <= results["dag-diam"]["estimate"] <= 2
    assert results["dag-finite-ecc"]["finite_ecc"] == [0, 1, 2]
    assert results["min-ecc"]["finite_min_ecc"] == [0, 1, 2]


def test_reduce_writes_offset_comment(tmp_path, capsys):
    src = tmp_path / "p3.txt"
    src.write_text(format_graph(build_graph(3, 1, False, [(0, 0, 1, 1), (0, 1, 2, 1)])))
    dst = tmp_path / "std.txt"
    code, out, _ = run(["reduce", src, "--target", "diameter", "--out", dst], capsys)
    assert code == 0 and records(out)[0]["offset"] == 8
    gf = read_graph(dst)
    assert "offset 2W=8" in gf.comments
    code, out, _ = run(["exact", dst], capsys)
    assert records(out)[0]["diameter"] == 10


def test_bench_csv(edge_file, capsys):
    code, out, _ = run(["bench", edge_file, edge_file, "--algo", "exact", "--repeat", 2], capsys)
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "file,algo,n,m,repeat,median_ms,result"
    assert len(lines) == 3 and lines[1].endswith(",1")


def test_human_flag_either_side(edge_file, capsys):
    for argv in (["--human", "exact", edge_file], ["exact", edge_file, "--human"]):
        code, out, _ = run(argv, capsys)
        assert code == 0 and out.startswith("command")


# ---------------------------------------------------------------- exit codes

def test_exit_code_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("p multimode 1 2 3 0\ne 0 0 1\n")
    code, _, err = run(["exact", bad], capsys)
    assert code == 1 and "bad.txt:1:" in err


def test_exit_code_unknown_flag(edge_file, capsys):
    code, _, _ = run(["exact", edge_file, "--bogus"], capsys)
    assert code == 1


def test_exit_code_missing_file(tmp_path, capsys):
    code, _, _ = run(["exact", tmp_path / "missing.txt"], capsys)
    assert code == 1


def test_exit_code_wrong_graph_kind(edge_file, capsys):
    code, _, _ = run(["approx-diam", edge_file, "--algo", "3approx"], capsys)
    assert code == 1


def test_exit_code_internal_assertion(edge_file, capsys, monkeypatch):
    import multimode.cli as cli

    monkeypatch.setattr(cli, "kmode_distance", lambda g, a, b: 99)
    code, _, err = run(["exact", edge_file], capsys)
    assert code == 2 and "internal" in err


def test_module_entry_point(edge_file):
    proc = subprocess.run([sys.executable, "-m", "multimode", "exact", str(edge_file)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["diameter"] == 1
