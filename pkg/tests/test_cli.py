"""End-to-end command line runs, including the documented exit codes."""

import json

import pytest

from hypercut.cli import main
from hypercut.core import TerminalSet
from hypercut.gen import random_instance, star_chain
from hypercut.io import serialize_hypergraph


@pytest.fixture()
def instance_file(tmp_path):
    def write(name, g, T):
        path = tmp_path / name
        path.write_text(serialize_hypergraph(g, T))
        return str(path)

    return write


def test_sparsify_then_verify_round_trip(tmp_path, instance_file, capsys):
    g, T, c = random_instance(3)
    inp = instance_file("in.txt", g, T)
    out = str(tmp_path / "h.txt")
    proj = str(tmp_path / "pi.txt")
    code = main(["sparsify", inp, "--c", str(c), "--out", out, "--proj", proj])
    assert code == 0
    stats = json.loads(capsys.readouterr().out.strip())
    assert stats["m_out"] <= stats["m"]
    code = main(["verify", inp, out, proj, "--c", str(c)])
    assert code == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_flags_a_wrong_sparsifier(tmp_path, instance_file):
    from hypercut.core import Hypergraph

    # a path separable at value 1; merging everything is wrong
    g = Hypergraph(4, [[0, 1], [1, 2], [2, 3]])
    inp = instance_file("in.txt", g, TerminalSet.of({0, 3}))
    wrong = tmp_path / "wrong.txt"
    wrong.write_text("1 0\n0\n")
    proj = tmp_path / "pi.txt"
    proj.write_text("4 1\n0 0 0 0\n")
    code = main(["verify", inp, str(wrong), str(proj), "--c", "2"])
    assert code == 1


def test_malformed_input_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n2 0 9\n0\n")
    assert main(["stats", str(bad)]) == 2
    assert "parse error" in capsys.readouterr().err
    assert main(["stats", str(tmp_path / "missing.txt")]) == 2


def test_oversized_slow_instance_exits_3(instance_file):
    g, T, c = star_chain((8,) * 4)
    inp = instance_file("big.txt", g, T)
    assert main(["sparsify", inp, "--c", str(c), "--method", "slow"]) == 3


def test_slow_method_writes_the_reduced_instance(tmp_path, instance_file, capsys):
    g, T, c = random_instance(5, n_max=5, m_max=6, t_max=2)
    inp = instance_file("in.txt", g, T)
    out = str(tmp_path / "h.txt")
    proj = str(tmp_path / "pi.txt")
    code = main(
        ["sparsify", inp, "--c", str(c), "--method", "slow", "--out", out,
         "--proj", proj]
    )
    assert code == 0
    stats = json.loads(capsys.readouterr().out.strip())
    if stats["reduced_degree_one"]:
        reduced = out + ".reduced"
        assert main(["verify", reduced, out, proj, "--c", str(c)]) == 0


def test_enumerate_cuts_and_dot_export(tmp_path, instance_file, capsys):
    from hypercut.gen import regression_fixture

    fx = regression_fixture()
    inp = instance_file("fx.txt", fx.graph, fx.terminals)
    dot = tmp_path / "aux.dot"
    code = main(["enumerate-cuts", inp, "--c", str(fx.c), "--dot", str(dot)])
    assert code == 0
    out = capsys.readouterr().out
    assert "total=" in out and "value=" in out
    assert dot.read_text().startswith("graph aux {")


def test_decompose_and_stats_commands(instance_file, capsys):
    g, T, _ = random_instance(9)
    inp = instance_file("in.txt", g, T)
    assert main(["decompose", inp, "--phi", "1/4"]) == 0
    out = capsys.readouterr().out
    assert "parts=" in out
    assert main(["stats", inp]) == 0
    assert capsys.readouterr().out.split() == [
        str(g.n), str(g.m), str(g.rank()), str(g.total_size())
    ]


def test_sparsify_output_is_deterministic(tmp_path, instance_file):
    g, T, c = random_instance(12)
    inp = instance_file("in.txt", g, T)
    outs = []
    for tag in ("a", "b"):
        out = tmp_path / f"h{tag}.txt"
        proj = tmp_path / f"pi{tag}.txt"
        assert main(
            ["sparsify", inp, "--c", str(c), "--out", str(out), "--proj", str(proj),
             "--stats", str(tmp_path / f"s{tag}.json")]
        ) == 0
        outs.append(out.read_text() + proj.read_text())
    assert outs[0] == outs[1]


def test_threads_flag_is_accepted(instance_file):
    g, T, _ = random_instance(2)
    inp = instance_file("in.txt", g, T)
    assert main(["--threads", "4", "stats", inp]) == 0
