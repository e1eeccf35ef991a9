"""Instance generators for tests, benchmarks, and fixtures."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .core import Hypergraph, TerminalSet

__all__ = [
    "random_instance",
    "random_connected_instance",
    "RegressionFixture",
    "regression_fixture",
    "blob_chain",
    "star_chain",
    "triangle_chain",
]


def random_instance(
    seed: int,
    n_max: int = 10,
    m_max: int = 16,
    r_max: int = 4,
    t_max: int = 5,
    cs: Tuple[int, ...] = (1, 2, 3),
) -> Tuple[Hypergraph, TerminalSet, int]:
    """A seeded random hypergraph with terminals and a threshold."""
    rng = random.Random(seed)
    n = rng.randint(2, n_max)
    m = rng.randint(1, m_max)
    edges = []
    for _ in range(m):
        k = rng.randint(2, min(r_max, n))
        edges.append(rng.sample(range(n), k))
    t = rng.randint(2, min(t_max, n)) if n >= 2 else 2
    terminals = frozenset(rng.sample(range(n), t))
    c = rng.choice(cs)
    return Hypergraph(n, edges), TerminalSet(terminals), c


def random_connected_instance(
    seed: int,
    n_max: int = 10,
    m_max: int = 16,
    r_max: int = 4,
    t_max: int = 5,
    cs: Tuple[int, ...] = (1, 2, 3),
) -> Tuple[Hypergraph, TerminalSet, int]:
    """Like random_instance, but with a spanning path mixed in."""
    rng = random.Random(seed)
    n = rng.randint(2, n_max)
    order = list(range(n))
    rng.shuffle(order)
    edges: List[List[int]] = [
        [order[i], order[i + 1]] for i in range(n - 1)
    ]
    extra = rng.randint(0, max(0, m_max - len(edges)))
    for _ in range(extra):
        k = rng.randint(2, min(r_max, n))
        edges.append(rng.sample(range(n), k))
    t = rng.randint(2, min(t_max, n))
    terminals = frozenset(rng.sample(range(n), t))
    c = rng.choice(cs)
    return Hypergraph(n, edges), TerminalSet(terminals), c


@dataclass(frozen=True)
class RegressionFixture:
    """Seven-vertex instance where unpruned reasoning goes wrong.

    Terminals are vertices 0, 1, 6 and c = 2.  The labeled edges a, b
    (attaching the first two terminals) are genuinely essential, while
    d, e are not: the partition ({0,1} vs {6}) admits a mincut whose
    smaller side {0,1} is disconnected, so the partition must be pruned,
    and without pruning d and e are misclassified as essential.
    """

    graph: Hypergraph
    terminals: TerminalSet
    c: int
    labels: Dict[str, int]


def regression_fixture() -> RegressionFixture:
    edges = [
        [0, 2, 3],  # a
        [1, 2, 3],  # b
        [2, 3],  # c0
        [3, 4],  # d
        [3, 5],  # e
        [4, 5],  # f1
        [4, 6],  # f2
        [5, 6],  # f3
        [4, 5, 6],  # f4
    ]
    labels = {
        "a": 0,
        "b": 1,
        "c0": 2,
        "d": 3,
        "e": 4,
        "f1": 5,
        "f2": 6,
        "f3": 7,
        "f4": 8,
    }
    return RegressionFixture(
        Hypergraph(7, edges), TerminalSet(frozenset({0, 1, 6})), 2, labels
    )


def blob_chain(n: int, k: int = 4) -> Tuple[Hypergraph, TerminalSet, int]:
    """k terminal hubs in a chain, linked by parallel edge pairs (c = 2).

    Each hub is a center with a ring of leaves attached through 3-vertex
    edges; consecutive centers are joined by two parallel 2-vertex
    edges.  Growing n only grows the rings, so the sparsifier size stays
    put: the six linking edges are the only essential ones.
    """
    if k < 2 or n < 4 * k:
        raise ValueError("need at least 4 vertices per hub")
    sizes = [n // k + (1 if i < n % k else 0) for i in range(k)]
    edges: List[List[int]] = []
    centers = []
    base = 0
    for size in sizes:
        center = base
        leaves = list(range(base + 1, base + size))
        centers.append(center)
        for i in range(len(leaves)):
            edges.append([center, leaves[i], leaves[(i + 1) % len(leaves)]])
        base += size
    for a, b in zip(centers, centers[1:]):
        edges.append([a, b])
        edges.append([a, b])
    return Hypergraph(n, edges), TerminalSet(frozenset(centers)), 2


def star_chain(
    leaf_counts: Sequence[int], c: int = 1
) -> Tuple[Hypergraph, TerminalSet, int]:
    """Star centers joined in a path, each with pendant terminal leaves.

    Centers are vertices ``0..k-1``; center i carries ``leaf_counts[i]``
    degree-1 leaves, all of which are terminals.  Every terminal having
    degree 1 makes the family directly usable by the splitting pipeline,
    and the single bridge between consecutive centers keeps the instance
    easy to break apart whenever both sides hold enough terminals.
    """
    k = len(leaf_counts)
    if k < 1 or any(count < 1 for count in leaf_counts):
        raise ValueError("need at least one center, each with a leaf")
    edges: List[List[int]] = []
    terminals: List[int] = []
    vid = k
    for center, count in enumerate(leaf_counts):
        for _ in range(count):
            edges.append([center, vid])
            terminals.append(vid)
            vid += 1
    for a in range(k - 1):
        edges.append([a, a + 1])
    return Hypergraph(vid, edges), TerminalSet(frozenset(terminals)), c


def triangle_chain(n: int, k: int = 50) -> Tuple[Hypergraph, TerminalSet, int]:
    """A chain of overlapping triangles with k spread terminals (c = 2)."""
    if n < 3:
        raise ValueError("need at least 3 vertices")
    edges: List[List[int]] = []
    for i in range(n - 2):
        edges.append([i, i + 1])
        edges.append([i, i + 2])
        edges.append([i, i + 1, i + 2])
    step = max(1, n // k)
    terminals = frozenset(range(0, n, step))
    terminals = frozenset(sorted(terminals)[:k])
    return Hypergraph(n, edges), TerminalSet(terminals), 2
