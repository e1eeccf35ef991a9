"""Conductance and a certified recursive expander decomposition.

Conductance of a side S is its boundary size over the incident-edge
count of the lighter side; a graph is a phi-expander when no proper
subset has conductance below phi.  The decomposition splits along any
witness of low conductance until each part certifies.  Certification is
exhaustive for small parts, and a connected part with at most 1/phi
edges certifies by counting alone (any nontrivial side has boundary at
least 1 and incident-edge count at most the edge total).  Larger parts
are split heuristically along a BFS sweep; if no low-conductance sweep
cut exists, the part is kept and flagged uncertified so downstream
consumers can fall back to assumption-free enumeration.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Optional, Tuple, Union

import numpy as np

from .core import Hypergraph, induced_subgraph

__all__ = [
    "DecompositionResult",
    "conductance",
    "graph_conductance",
    "expander_decompose",
]

Conductance = Union[Fraction, float]

INFINITE = float("inf")


def conductance(graph: Hypergraph, S: Iterable[int]) -> Conductance:
    """|boundary(S)| / min(incident edges of S, incident edges of V-S)."""
    Ss = frozenset(S)
    if not Ss or len(Ss) >= graph.n:
        raise ValueError("conductance needs a proper nonempty subset")
    for v in Ss:
        if not (0 <= v < graph.n):
            raise ValueError(f"vertex id {v} out of range")
    bd = 0
    inc_s = 0
    inc_rest = 0
    for e in graph.edges:
        inside = len(e & Ss)
        if inside:
            inc_s += 1
        if inside < len(e):
            inc_rest += 1
        if 0 < inside < len(e):
            bd += 1
    denom = min(inc_s, inc_rest)
    if denom == 0:
        return INFINITE
    return Fraction(bd, denom)


def _sweep_cut(graph: Hypergraph) -> Optional[Tuple[Conductance, FrozenSet[int]]]:
    """Best conductance over prefixes of a BFS order (heuristic witness)."""
    n = graph.n
    if n < 2:
        return None
    order: List[int] = []
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        q = deque([s])
        while q:
            u = q.popleft()
            order.append(u)
            for i in graph.incident(u):
                for v in graph.edges[i]:
                    if not seen[v]:
                        seen[v] = True
                        q.append(v)
    inside = [0] * graph.m
    size = [len(e) for e in graph.edges]
    bd = 0
    inc_s = 0
    inc_rest = graph.m
    # best ratio tracked by integer cross-multiplication; a zero
    # denominator means an infinite ratio
    best_bd, best_denom, best_idx = 1, 0, -1
    for idx, v in enumerate(order[:-1]):
        for i in graph.incident(v):
            was = inside[i]
            inside[i] = was + 1
            if was == 0:
                inc_s += 1
                if size[i] > 1:
                    bd += 1
            if inside[i] == size[i]:
                inc_rest -= 1
                if size[i] > 1:
                    bd -= 1
        denom = min(inc_s, inc_rest)
        if denom > 0 and (best_denom == 0 or bd * best_denom < best_bd * denom):
            best_bd, best_denom, best_idx = bd, denom, idx
    if best_idx < 0:
        return None
    return Fraction(best_bd, best_denom), frozenset(order[: best_idx + 1])


def graph_conductance(
    graph: Hypergraph, limit: int = 15, heuristic: bool = False
) -> Tuple[Conductance, Optional[FrozenSet[int]]]:
    """Minimum conductance with a witness side.

    Exhaustive (exact) for n within the limit; with ``heuristic`` set,
    larger graphs get a sweep-based upper bound instead.
    """
    n = graph.n
    if n < 2:
        return INFINITE, None
    if n <= limit:
        # conductance is complement-symmetric, so vertex n - 1 can stay
        # outside S; bit masks over the remaining vertices cover every
        # bipartition, and per-edge intersections vectorize
        masks = np.arange(1, 1 << (n - 1), dtype=np.int64)
        bd = np.zeros_like(masks)
        inc_s = np.zeros_like(masks)
        inc_rest = np.zeros_like(masks)
        for e in graph.edges:
            em = np.int64(sum(1 << v for v in e))
            inter = masks & em
            touches_s = inter != 0
            touches_rest = inter != em
            inc_s += touches_s
            inc_rest += touches_rest
            bd += touches_s & touches_rest
        denom = np.minimum(inc_s, inc_rest)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(denom > 0, bd / np.maximum(denom, 1), np.inf)
        j = int(np.argmin(ratio))
        if not np.isfinite(ratio[j]):
            return INFINITE, None
        mask = int(masks[j])
        S = frozenset(v for v in range(n - 1) if mask >> v & 1)
        return Fraction(int(bd[j]), int(denom[j])), S
    if not heuristic:
        raise ValueError(f"exhaustive conductance limited to n <= {limit}")
    found = _sweep_cut(graph)
    if found is None:
        return INFINITE, None
    return found


@dataclass(frozen=True)
class DecompositionResult:
    parts: Tuple[FrozenSet[int], ...]
    crossing_edges: FrozenSet[int]
    phi: Conductance
    certified: Tuple[bool, ...]


def _components(graph: Hypergraph) -> List[FrozenSet[int]]:
    seen = [False] * graph.n
    comps = []
    for s in range(graph.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        q = deque([s])
        while q:
            u = q.popleft()
            for i in graph.incident(u):
                for v in graph.edges[i]:
                    if not seen[v]:
                        seen[v] = True
                        comp.append(v)
                        q.append(v)
        comps.append(frozenset(comp))
    return comps


def expander_decompose(
    graph: Hypergraph, phi: Conductance, exhaustive_limit: int = 12
) -> DecompositionResult:
    """Partition V so each part induces a phi-expander or is flagged.

    Splits recursively along low-conductance witnesses.  Parts small
    enough are certified exhaustively; connected parts with at most
    1/phi edges certify by edge count; anything else that the sweep
    heuristic cannot split is flagged uncertified.
    """
    if not (0 < phi <= 1):
        raise ValueError("phi must lie in (0, 1]")
    parts: List[FrozenSet[int]] = []
    certified: List[bool] = []
    # each stack entry carries its already-induced subgraph plus the map
    # back to original vertex ids, so a split never rescans the whole
    # input graph
    stack: List[Tuple[Hypergraph, Tuple[int, ...]]] = []
    if graph.n:
        stack.append((graph, tuple(range(graph.n))))

    def push_side(sub: Hypergraph, back: Tuple[int, ...], side: Iterable[int]) -> None:
        inner, relabel, _kept = induced_subgraph(sub, frozenset(side))
        inner_back = [0] * inner.n
        for v, i in relabel.items():
            inner_back[i] = back[v]
        stack.append((inner, tuple(inner_back)))

    while stack:
        sub, back = stack.pop()
        if sub.n == 1:
            parts.append(frozenset(back))
            certified.append(True)
            continue
        comps = _components(sub)
        if len(comps) > 1:
            for comp in comps:
                push_side(sub, back, comp)
            continue
        if sub.m >= 1 and Fraction(1, sub.m) >= phi:
            parts.append(frozenset(back))
            certified.append(True)
            continue
        if sub.n <= exhaustive_limit:
            value, witness = graph_conductance(sub, limit=exhaustive_limit)
            if value >= phi:
                parts.append(frozenset(back))
                certified.append(True)
                continue
            assert witness is not None
            push_side(sub, back, witness)
            push_side(sub, back, frozenset(range(sub.n)) - witness)
            continue
        found = _sweep_cut(sub)
        if found is not None and found[0] < phi:
            push_side(sub, back, found[1])
            push_side(sub, back, frozenset(range(sub.n)) - found[1])
            continue
        parts.append(frozenset(back))
        certified.append(False)
    membership = {}
    for idx, part in enumerate(parts):
        for v in part:
            membership[v] = idx
    crossing = frozenset(
        i
        for i, e in enumerate(graph.edges)
        if len({membership[v] for v in e}) > 1
    )
    return DecompositionResult(tuple(parts), crossing, phi, tuple(certified))
