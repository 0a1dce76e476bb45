import io
import json
from fractions import Fraction

import numpy as np
import pytest

from lyndonruns import cli, harness
from lyndonruns.oracle import naive_runs, naive_tree_of_text


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_runs_tsv():
    code, out = run("runs", "--text", "aababaababb", "--format", "tsv")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 7
    assert lines[0] == "1\t2\t1\t2/1"
    assert {tuple(map(int, line.split("\t")[:3])) for line in lines} == naive_runs("aababaababb")


def test_runs_json():
    code, out = run("runs", "--text", "aababaababb")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 7 and (doc["sigma_num"], doc["sigma_den"]) == (29, 2)
    total = sum(Fraction(r["exponent_num"], r["exponent_den"]) for r in doc["runs"])
    assert total == Fraction(29, 2)
    assert [(r["start"], r["end"]) for r in doc["runs"]] == sorted((r["start"], r["end"]) for r in doc["runs"])


def test_runs_unary():
    code, out = run("runs", "--text", "aaaa")
    assert json.loads(out)["runs"] == [{"start": 1, "end": 4, "period": 1, "exponent_num": 4, "exponent_den": 1}]


def test_runs_from_file(tmp_path):
    data = bytes(np.random.default_rng(1).integers(0, 256, 1 << 16, dtype=np.uint8))
    path = tmp_path / "big.bin"
    path.write_bytes(data)
    code, out = run("runs", "--input", str(path), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["n"] == len(data) and doc["count"] < doc["n"]


def test_runs_file_matches_oracle():
    data = b"abaababaabaababaababaabaababaabaab" * 3
    code, out = run("runs", "--text", data.decode(), "--format", "tsv")
    got = {tuple(map(int, line.split("\t")[:3])) for line in out.splitlines()}
    assert got == naive_runs(data)


@pytest.mark.parametrize(
    "argv",
    [
        ("runs", "--text", ""),
        ("runs", "--input", "/nonexistent/file"),
        ("runs",),
        ("runs", "--text", "é"),
        ("bogus",),
        ("lyndon", "--text", "ab", "--factorize"),
        ("bench", "--size", "0"),
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, out = run(*argv)
    assert code == 2 and out == ""
    assert capsys.readouterr().err


@pytest.mark.parametrize("order, ends", [("0", [3, 3, 3]), ("1", [1, 2, 4])])
def test_lyndon(order, ends):
    code, out = run("lyndon", "--text", "aab", "--order", order)
    assert code == 0
    assert [tuple(map(int, line.split("\t"))) for line in out.splitlines()] == list(enumerate(ends, 1))


def test_lyndon_both_orders():
    code, out = run("lyndon", "--text", "aab")
    assert out == "1\t3\t1\n2\t3\t2\n3\t3\t4\n"


@pytest.mark.parametrize("text, order, expected", [("bab", "0", "b|ab"), ("bab", "1", "ba|b"), ("banana", "0", "b|an|an|a")])
def test_lyndon_factorize(text, order, expected):
    assert run("lyndon", "--text", text, "--order", order, "--factorize") == (0, expected + "\n")


def _count_dot_nodes(dot):
    body = [line.strip() for line in dot.splitlines()[2:-1]]
    return sum("->" not in line for line in body)


def test_tree_dot_ab():
    code, out = run("tree", "--text", "ab", "--order", "0", "--dot")
    assert code == 0 and _count_dot_nodes(out) == 7


def test_tree_json_a():
    code, out = run("tree", "--text", "a", "--order", "0")
    doc = json.loads(out)

    def count(node):
        return 1 + (count(node["left"]) + count(node["right"]) if "left" in node else 0)

    def shape(node):
        return node["start"] if "left" not in node else (shape(node["left"]), shape(node["right"]))

    assert count(doc["tree"]) == 5
    assert shape(doc["tree"]) == naive_tree_of_text("a", 0)


def test_tree_example_matches_oracle():
    code, out = run("tree", "--text", "aababaababb", "--order", "0")
    doc = json.loads(out)

    def shape(node):
        return node["start"] if "left" not in node else (shape(node["left"]), shape(node["right"]))

    assert shape(doc["tree"]) == naive_tree_of_text("aababaababb", 0)


def test_period(tmp_path):
    q = tmp_path / "q.txt"
    q.write_text("2 6\n4 9\n5 5\n")
    assert run("period", "--text", "aababaababb", "--queries", str(q)) == (0, "2 6 2\n4 9 3\n5 5 -\n")


@pytest.mark.parametrize("content, lineno", [("1 2\n3\n", 2), ("a b\n", 1), ("1 2 3\n", 1), ("5 2\n", 1)])
def test_period_malformed(tmp_path, capsys, content, lineno):
    q = tmp_path / "q.txt"
    q.write_text(content)
    code, _ = run("period", "--text", "aababaababb", "--queries", str(q))
    assert code == 2
    assert f"line {lineno}" in capsys.readouterr().err


def test_verify_exit_codes(monkeypatch):
    code, out = run("verify", "--mode", "exhaustive", "--sigma", "1", "--max-len", "8")
    assert code == 0 and json.loads(out)["ok"]
    monkeypatch.setattr(harness, "_check_runs", lambda w, runs: "forced")
    code, out = run("verify", "--max-len", "3", "--checks", "runs")
    doc = json.loads(out)
    assert code == 1 and not doc["ok"] and doc["checks"]["runs"]["counterexample"]["string"] == [0]


def test_verify_over_budget():
    assert run("verify", "--sigma", "2", "--max-len", "14", "--budget", "100")[0] == 2


def test_density():
    code, out = run("density", "--min-len", "13", "--max-len", "13")
    assert code == 0 and json.loads(out)["max_runs_by_length"]["13"]["runs"] == 8


def test_bench_table():
    code, out = run("bench", "--kind", "all", "--size", "2048")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 1 + len(harness.BENCH_KINDS)
    assert [line.split()[0] for line in lines[1:]] == list(harness.BENCH_KINDS)
