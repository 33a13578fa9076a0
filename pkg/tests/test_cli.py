import json
import subprocess
import sys

import pytest

from kfox.cli import main, parse_k_range
from kfox.constructions import prism
from kfox.formats import to_graph6


def run(*argv, stdin=""):
    proc = subprocess.run(
        [sys.executable, "-m", "kfox", *argv], input=stdin, capture_output=True, text=True
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_gen_pipe_analyze():
    _, g6, _ = run("gen", "prism")
    code, out, err = run("analyze", "--k", "3", stdin=g6)
    assert code == 0 and err == ""
    data = json.loads(out)
    assert data["kappa"] == 3 and data["separator_count"] == 6
    assert data["contractible"] == [[0, 3], [1, 4], [2, 5]]


def test_gen_wheel_pipe_fox_gives_spoke_star():
    _, g6, _ = run("gen", "wheel", "5")
    code, out, _ = run("fox", "--k", "3", stdin=g6)
    data = json.loads(out)
    assert code == 0 and data["fox"]
    assert sorted(data["tree"]) == [[i, 5] for i in range(5)]


def test_not_a_fox(capsys):
    assert main(["fox", "--k", "3", to_graph6(prism())]) == 0
    assert json.loads(capsys.readouterr().out)["message"] == "not a fox"


def test_trees_min_dfs(capsys):
    assert main(["trees", "--mode", "dfs", "--k", "3", "--min", to_graph6(prism())]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["min"] == 1 and len(data["tree"]) == 5 and data["root"] is not None
    assert main(["trees", to_graph6(prism())]) == 0
    assert json.loads(capsys.readouterr().out)["count"] == 75


def test_fragments_command(tmp_path, capsys):
    tree = tmp_path / "tree.txt"
    tree.write_text("0 1\n1 2\n0 3\n3 4\n3 5\n")
    assert main(["fragments", to_graph6(prism()), "--tree", str(tree), "--k", "3", "--root", "0"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert set(data) >= {"s_fragments", "s_ends", "s_atoms", "r_family", "colors", "classifications"}
    assert {c["color"] for c in data["colors"]} <= {"contractible", "green", "red"}


def test_gen_families(capsys):
    for argv in (["wheel", "5"], ["prism-plus"], ["lex-apex", "5", "5"], ["complete", "5"], ["cycle", "6"], ["expand", "C~"]):
        assert main(["gen", *argv]) == 0
    lines = capsys.readouterr().out.split()
    assert len(lines) == 6 and lines[-1] == "K{CY?SBG?G_F"


def test_verify_exit_codes(tmp_path):
    out = tmp_path / "r.json"
    code, stdout, err = run("verify", "--theorem", "T1", "--max-n", "6", "--jobs", "1", "--out", str(out))
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["violations"] == []
    assert "0 violations" in err
    code, _, _ = run("verify", "--theorem", "T1", "--max-n", "6", "--jobs", "1", "--negative-control")
    assert code == 1


def test_verify_with_corpus_file(tmp_path, capsys):
    corpus = tmp_path / "c.g6"
    corpus.write_text("C~\nE{Sw\nE{sw\n")
    assert main(["verify", "--theorem", "T1", "--corpus", str(corpus), "--jobs", "1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["corpus_size"] == 3 and report["skipped"] == 3


def test_convert(capsys):
    assert main(["convert", "--to", "dot", "--k", "3", to_graph6(prism())]) == 0
    assert "style=dashed" in capsys.readouterr().out
    assert main(["convert", "--to", "edges", "C~"]) == 0
    edges = capsys.readouterr().out
    code, out, _ = run("convert", "--from", "edges", "--to", "g6", stdin=edges)
    assert code == 0 and out.strip() == "C~"


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["analyze", "E{S"], "byte offset 3"),
        (["analyze", "~?A@"], "64"),
        (["gen", "wheel", "x"], "integer"),
        (["fox", "--k", "3", "Dhc"], "not 3-connected"),
    ],
)
def test_errors_exit_2(argv, needle, capsys):
    assert main(argv) == 2
    captured = capsys.readouterr()
    assert captured.out == "" and needle in captured.err


def test_usage_errors_exit_2():
    code, out, _ = run("nonsense")
    assert code == 2 and out == ""
    code, _, err = run("analyze", "C~", "--file", "x.g6")
    assert code == 2 and "not both" in err


def test_k_range_parser():
    assert parse_k_range("3..5") == [3, 4, 5]
    assert parse_k_range("3,5") == [3, 5]
    assert parse_k_range("4") == [4]


def test_tree_cap_exceeded_exits_2(capsys):
    assert main(["trees", "--cap", "10", "C~"]) == 2
    assert "cap" in capsys.readouterr().err
