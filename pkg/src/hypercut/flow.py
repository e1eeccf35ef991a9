"""Exact hypergraph mincut queries via a split-digraph max-flow reduction.

Each vertex v and each hyperedge e of the hypergraph becomes a pair of
nodes (in, out) in a directed graph.  Hyperedge pairs carry capacity 1,
vertex pairs and incidence arcs carry capacity c + 1, so any finite cut
of value at most c consists purely of hyperedge arcs and corresponds to
a hyperedge cut of the same value.  Flow augmentation stops once c + 1
units have been pushed, at which point the thresholded answer is known.

The residual graph after a maximum flow also yields the unique (A, B)
mincut whose A side is minimal: the original vertices whose split nodes
stay reachable from A.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

from .core import Hypergraph, boundary

__all__ = [
    "OVER_THRESHOLD",
    "Cut",
    "SplitDigraph",
    "mincut_value",
    "a_minimal_mincut",
    "brute_force_mincut",
    "is_connected",
]


class _OverThreshold:
    """Sentinel for 'mincut value exceeds the threshold c'."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "OVER_THRESHOLD"

    def __bool__(self) -> bool:
        return False


OVER_THRESHOLD = _OverThreshold()

MincutAnswer = Union[int, _OverThreshold]


@dataclass(frozen=True)
class Cut:
    """One side of a bipartition with its boundary."""

    side: FrozenSet[int]
    boundary_edges: FrozenSet[int]
    value: int

    def __post_init__(self):
        if self.value != len(self.boundary_edges):
            raise ValueError("cut value must equal its boundary size")


class SplitDigraph:
    """Flow network for (A, B)-mincut queries on one hypergraph.

    Node numbering: vertex v -> in-node 2v, out-node 2v+1; hyperedge j ->
    in-node 2n+2j, out-node 2n+2j+1.  Arcs are stored as parallel flat
    arrays with explicit reverse-arc pairing so residual bookkeeping is
    an index flip.
    """

    def __init__(self, graph: Hypergraph, c: int):
        if c < 0:
            raise ValueError("threshold must be non-negative")
        self.graph = graph
        self.c = c
        n, m = graph.n, graph.m
        self.num_nodes = 2 * (n + m)
        self.arc_to: List[int] = []
        self.arc_cap: List[int] = []
        self.head: List[List[int]] = [[] for _ in range(self.num_nodes)]
        big = c + 1
        for v in range(n):
            self._add_arc(2 * v, 2 * v + 1, big)
        self.edge_arc: List[int] = []
        for j, e in enumerate(graph.edges):
            e_in, e_out = 2 * n + 2 * j, 2 * n + 2 * j + 1
            self.edge_arc.append(len(self.arc_to))
            self._add_arc(e_in, e_out, 1)
            for v in e:
                self._add_arc(2 * v + 1, e_in, big)
                self._add_arc(e_out, 2 * v, big)

    def _add_arc(self, u: int, v: int, cap: int) -> None:
        self.head[u].append(len(self.arc_to))
        self.arc_to.append(v)
        self.arc_cap.append(cap)
        self.head[v].append(len(self.arc_to))
        self.arc_to.append(u)
        self.arc_cap.append(0)

    def vertex_in(self, v: int) -> int:
        return 2 * v

    def vertex_out(self, v: int) -> int:
        return 2 * v + 1

    def max_flow_thresholded(
        self, sources: Iterable[int], sinks: Iterable[int]
    ) -> Tuple[int, List[int]]:
        """Push flow until exhaustion or c + 1 units, whichever first.

        Sources are vertex out-nodes, sinks vertex in-nodes.  Returns the
        amount pushed and the residual capacity array (the caller may
        inspect residual reachability afterwards).
        """
        cap = list(self.arc_cap)
        to = self.arc_to
        head = self.head
        src = list(sources)
        snk = set(sinks)
        limit = self.c + 1
        flow = 0
        while flow < limit:
            # BFS for a shortest augmenting path from any source
            parent_arc = [-1] * self.num_nodes
            seen = [False] * self.num_nodes
            q = deque()
            for s in src:
                seen[s] = True
                q.append(s)
            hit = -1
            while q:
                u = q.popleft()
                if u in snk:
                    hit = u
                    break
                for a in head[u]:
                    if cap[a] > 0 and not seen[to[a]]:
                        seen[to[a]] = True
                        parent_arc[to[a]] = a
                        q.append(to[a])
            if hit < 0:
                break
            # bottleneck along the path
            bottleneck = limit - flow
            u = hit
            while parent_arc[u] >= 0:
                a = parent_arc[u]
                bottleneck = min(bottleneck, cap[a])
                u = to[a ^ 1]
            u = hit
            while parent_arc[u] >= 0:
                a = parent_arc[u]
                cap[a] -= bottleneck
                cap[a ^ 1] += bottleneck
                u = to[a ^ 1]
            flow += bottleneck
        return flow, cap

    def residual_reachable(
        self, sources: Iterable[int], cap: List[int]
    ) -> List[bool]:
        seen = [False] * self.num_nodes
        q = deque()
        for s in sources:
            if not seen[s]:
                seen[s] = True
                q.append(s)
        to, head = self.arc_to, self.head
        while q:
            u = q.popleft()
            for a in head[u]:
                if cap[a] > 0 and not seen[to[a]]:
                    seen[to[a]] = True
                    q.append(to[a])
        return seen


def _check_pair(graph: Hypergraph, A: FrozenSet[int], B: FrozenSet[int]) -> None:
    if not A or not B:
        raise ValueError("both terminal sides must be nonempty")
    if A & B:
        raise ValueError("terminal sides must be disjoint")
    for v in A | B:
        if not (0 <= v < graph.n):
            raise ValueError(f"vertex id {v} out of range")


def mincut_value(
    graph: Hypergraph,
    A: Iterable[int],
    B: Iterable[int],
    cap: int,
    net: Optional[SplitDigraph] = None,
) -> MincutAnswer:
    """Exact (A, B)-mincut value when <= cap, else OVER_THRESHOLD.

    ``net`` may hold a prebuilt SplitDigraph for the same graph and cap;
    queries never mutate it, so one network serves many pairs.
    """
    As, Bs = frozenset(A), frozenset(B)
    _check_pair(graph, As, Bs)
    if net is None:
        net = SplitDigraph(graph, cap)
    flow, _ = net.max_flow_thresholded(
        (net.vertex_out(v) for v in As), {net.vertex_in(v) for v in Bs}
    )
    return flow if flow <= cap else OVER_THRESHOLD


def a_minimal_mincut(
    graph: Hypergraph,
    A: Iterable[int],
    B: Iterable[int],
    cap: int,
    net: Optional[SplitDigraph] = None,
) -> Optional[Cut]:
    """The unique (A, B)-mincut whose A side is contained in all others.

    Returns None when the mincut value exceeds cap.  The side is the set
    of vertices whose split nodes remain residual-reachable from A after
    a maximum flow, which is the intersection of every mincut's A side.
    """
    As, Bs = frozenset(A), frozenset(B)
    _check_pair(graph, As, Bs)
    if net is None:
        net = SplitDigraph(graph, cap)
    flow, resid = net.max_flow_thresholded(
        (net.vertex_out(v) for v in As), {net.vertex_in(v) for v in Bs}
    )
    if flow > cap:
        return None
    seen = net.residual_reachable((net.vertex_out(v) for v in As), resid)
    side = frozenset(
        v for v in range(graph.n) if seen[net.vertex_in(v)] or seen[net.vertex_out(v)]
    ) | As
    bd = boundary(graph, side)
    return Cut(side, bd, len(bd))


_ORACLE_LIMIT = 20


def brute_force_mincut(
    graph: Hypergraph, A: Iterable[int], B: Iterable[int], limit: int = _ORACLE_LIMIT
) -> Tuple[int, List[FrozenSet[int]]]:
    """Exhaustively scan all bipartitions consistent with (A, B).

    Returns the minimum boundary size and every minimizing A side.
    Refuses graphs beyond the oracle size limit.
    """
    As, Bs = frozenset(A), frozenset(B)
    _check_pair(graph, As, Bs)
    if graph.n > limit:
        raise ValueError(f"oracle limited to n <= {limit}")
    free = [v for v in range(graph.n) if v not in As and v not in Bs]
    best = None
    sides: List[FrozenSet[int]] = []
    for mask in range(1 << len(free)):
        side = set(As)
        for i, v in enumerate(free):
            if mask >> i & 1:
                side.add(v)
        val = len(boundary(graph, side))
        if best is None or val < best:
            best = val
            sides = [frozenset(side)]
        elif val == best:
            sides.append(frozenset(side))
    assert best is not None
    return best, sides


def is_connected(graph: Hypergraph, X: Iterable[int]) -> bool:
    """True iff the sub-hypergraph induced on X is connected."""
    Xs = frozenset(X)
    if not Xs:
        raise ValueError("connectivity of an empty vertex set is undefined")
    for v in Xs:
        if not (0 <= v < graph.n):
            raise ValueError(f"vertex id {v} out of range")
    start = next(iter(Xs))
    seen = {start}
    q = deque([start])
    while q:
        u = q.popleft()
        for i in graph.incident(u):
            for v in graph.edges[i]:
                if v in Xs and v not in seen:
                    seen.add(v)
                    q.append(v)
    return len(seen) == len(Xs)
