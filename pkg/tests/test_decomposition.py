"""Conductance computations and the certified recursive decomposition."""

from fractions import Fraction
from itertools import combinations

import pytest

from hypercut.core import Hypergraph, boundary, induced_subgraph
from hypercut.decomposition import (
    INFINITE,
    conductance,
    expander_decompose,
    graph_conductance,
)
from hypercut.gen import random_instance


def _naive_conductance(g, S):
    bd = len(boundary(g, S))
    inc_s = sum(1 for e in g.edges if e & S)
    inc_rest = sum(1 for e in g.edges if e - S)
    denom = min(inc_s, inc_rest)
    return INFINITE if denom == 0 else Fraction(bd, denom)


@pytest.mark.parametrize("seed", range(30))
def test_conductance_matches_the_definition(seed):
    g, _, _ = random_instance(seed)
    for size in range(1, g.n):
        for S in combinations(range(min(g.n, 6)), min(size, 3)):
            Ss = frozenset(S)
            if 0 < len(Ss) < g.n:
                assert conductance(g, Ss) == _naive_conductance(g, Ss)


def test_conductance_validates_the_subset():
    g = Hypergraph(3, [[0, 1, 2]])
    with pytest.raises(ValueError):
        conductance(g, set())
    with pytest.raises(ValueError):
        conductance(g, {0, 1, 2})
    with pytest.raises(ValueError):
        conductance(g, {7})


@pytest.mark.parametrize("seed", range(30))
def test_graph_conductance_is_the_exhaustive_minimum(seed):
    g, _, _ = random_instance(seed, n_max=7)
    value, witness = graph_conductance(g)
    best = INFINITE
    for mask in range(1, (1 << g.n) - 1):
        S = frozenset(v for v in range(g.n) if mask >> v & 1)
        cur = conductance(g, S)
        if cur < best:
            best = cur
    assert value == best
    if witness is not None:
        assert conductance(g, witness) == value
    else:
        assert value == INFINITE


def test_graph_conductance_refuses_large_graphs_without_heuristic():
    g = Hypergraph(30, [[i, i + 1] for i in range(29)])
    with pytest.raises(ValueError):
        graph_conductance(g)
    value, witness = graph_conductance(g, heuristic=True)
    assert witness is not None
    assert conductance(g, witness) == value


def test_decompose_validates_phi():
    g = Hypergraph(2, [[0, 1]])
    with pytest.raises(ValueError):
        expander_decompose(g, Fraction(0))
    with pytest.raises(ValueError):
        expander_decompose(g, Fraction(3, 2))


@pytest.mark.parametrize("seed", range(30))
@pytest.mark.parametrize("phi", [Fraction(1, 8), Fraction(1, 3)])
def test_decomposition_partitions_and_certifies(seed, phi):
    g, _, _ = random_instance(seed)
    result = expander_decompose(g, phi)
    flat = sorted(v for part in result.parts for v in part)
    assert flat == list(range(g.n))
    membership = {v: i for i, part in enumerate(result.parts) for v in part}
    want_crossing = frozenset(
        i for i, e in enumerate(g.edges) if len({membership[v] for v in e}) > 1
    )
    assert result.crossing_edges == want_crossing
    assert len(result.certified) == len(result.parts)
    for part, certified in zip(result.parts, result.certified):
        if not certified or len(part) < 2:
            continue
        sub, _, _ = induced_subgraph(g, part)
        # certified means the induced part really is a phi-expander
        value, _ = graph_conductance(sub, limit=12)
        assert value >= phi
