"""Thresholded mincut queries against the exhaustive bipartition oracle."""

import pytest

from hypercut.core import Hypergraph, boundary
from hypercut.flow import (
    OVER_THRESHOLD,
    SplitDigraph,
    a_minimal_mincut,
    brute_force_mincut,
    is_connected,
    mincut_value,
)
from hypercut.gen import random_instance


def _pair(T):
    terms = sorted(T.terminals)
    return frozenset(terms[:1]), frozenset(terms[1:])


@pytest.mark.parametrize("seed", range(60))
def test_mincut_value_matches_oracle(seed):
    g, T, c = random_instance(seed)
    A, B = _pair(T)
    want, _ = brute_force_mincut(g, A, B)
    got = mincut_value(g, A, B, c)
    if want > c:
        assert got is OVER_THRESHOLD
    else:
        assert got == want


@pytest.mark.parametrize("seed", range(60))
def test_a_minimal_side_is_the_intersection_of_all_mincut_sides(seed):
    g, T, c = random_instance(seed)
    A, B = _pair(T)
    cut = a_minimal_mincut(g, A, B, c)
    want, sides = brute_force_mincut(g, A, B)
    if want > c:
        assert cut is None
        return
    assert cut is not None
    assert cut.value == want
    assert cut.side == frozenset.intersection(*sides)
    assert cut.boundary_edges == boundary(g, cut.side)


def test_prebuilt_network_is_reusable():
    g, T, c = random_instance(7)
    net = SplitDigraph(g, c)
    A, B = _pair(T)
    assert mincut_value(g, A, B, c, net=net) == mincut_value(g, A, B, c, net=net)
    assert a_minimal_mincut(g, A, B, c, net=net) == a_minimal_mincut(g, A, B, c)


def test_over_threshold_is_falsy_and_distinct_from_zero():
    assert not OVER_THRESHOLD
    assert OVER_THRESHOLD != 0
    assert repr(OVER_THRESHOLD) == "OVER_THRESHOLD"


def test_pair_validation():
    g = Hypergraph(3, [[0, 1]])
    with pytest.raises(ValueError):
        mincut_value(g, set(), {1}, 1)
    with pytest.raises(ValueError):
        mincut_value(g, {0}, {0}, 1)
    with pytest.raises(ValueError):
        mincut_value(g, {0}, {5}, 1)


def test_is_connected():
    g = Hypergraph(5, [[0, 1], [1, 2], [3, 4]])
    assert is_connected(g, {0, 1, 2})
    assert is_connected(g, {3, 4})
    assert not is_connected(g, {0, 3})
    assert is_connected(g, {2})
    with pytest.raises(ValueError):
        is_connected(g, set())
