"""The verifier must accept correct sparsifiers and reject broken ones."""

import pytest

from hypercut.core import Hypergraph, ProjectionMap, TerminalSet, contract
from hypercut.gen import random_instance, triangle_chain
from hypercut.verify import verify_sparsifier


@pytest.mark.parametrize("seed", range(20))
def test_identity_always_passes(seed):
    g, T, c = random_instance(seed)
    report = verify_sparsifier(g, T, g, ProjectionMap.identity(g.n), c)
    assert report.passed
    assert report.checked == 2 ** (len(T.terminals) - 1) - 1


def test_collapsing_a_real_cut_is_caught():
    # a path with terminals at both ends: mincut value 1, but contracting
    # everything pretends the terminals are inseparable
    g = Hypergraph(4, [[0, 1], [1, 2], [2, 3]])
    T = TerminalSet.of({0, 3})
    res = contract(g, range(g.m))
    report = verify_sparsifier(g, T, res.graph, res.projection, c=2)
    assert not report.passed
    assert report.failures
    (a, b, want, got) = report.failures[0]
    assert want != got


def test_extra_connectivity_is_caught():
    # H claims the terminals are fully connected while G keeps them apart
    g = Hypergraph(2, [[0, 1]])
    T = TerminalSet.of({0, 1})
    h = Hypergraph(2, [[0, 1], [0, 1], [0, 1]])
    report = verify_sparsifier(g, T, h, ProjectionMap.identity(2), c=2)
    assert not report.passed


def test_exhaustive_mode_enforces_the_terminal_limit():
    g = Hypergraph(14, [[i, i + 1] for i in range(13)])
    T = TerminalSet.of(range(14))
    with pytest.raises(ValueError):
        verify_sparsifier(g, T, g, ProjectionMap.identity(14), 1)
    report = verify_sparsifier(
        g, T, g, ProjectionMap.identity(14), 1, mode="sampled", samples=50
    )
    assert report.passed
    assert report.checked == 50


def test_sampled_mode_is_deterministic_per_seed():
    g, T, c = triangle_chain(60, k=8)
    res = contract(g, range(0, g.m, 7))
    kw = dict(mode="sampled", samples=40, seed=3)
    r1 = verify_sparsifier(g, T, res.graph, res.projection, c, **kw)
    r2 = verify_sparsifier(g, T, res.graph, res.projection, c, **kw)
    assert r1.passed == r2.passed
    assert r1.failures == r2.failures


def test_dimension_mismatches_are_rejected():
    g = Hypergraph(3, [[0, 1], [1, 2]])
    T = TerminalSet.of({0, 2})
    with pytest.raises(ValueError):
        verify_sparsifier(g, T, g, ProjectionMap.identity(2), 1)
    h = Hypergraph(2, [[0, 1]])
    with pytest.raises(ValueError):
        verify_sparsifier(g, T, h, ProjectionMap.identity(3), 1)


def test_report_renders_a_summary_line():
    g = Hypergraph(2, [[0, 1]])
    T = TerminalSet.of({0, 1})
    report = verify_sparsifier(g, T, g, ProjectionMap.identity(2), 1)
    import json

    line = json.loads(report.to_line())
    assert line["passed"] is True and line["failures"] == 0
    assert "PASS" in report.to_text()
    assert "pairs checked" in report.to_text()
