"""Certification that a claimed sparsifier preserves thresholded mincuts.

A sparsifier (H, pi) of (G, T, c) must satisfy, for all disjoint
terminal subsets T1, T2, that the c-thresholded (T1, T2)-mincut in G
equals the thresholded (pi(T1), pi(T2))-mincut in H.  Checking all
terminal bipartitions suffices: the mincut between two disjoint subsets
is the minimum over bipartitions separating them, so equality on every
bipartition forces equality everywhere (spot-checked by tests against a
full scan over disjoint pairs).

Exhaustive mode runs the in-package flow solver.  Sampled mode, meant
for large instances, runs the singleton-versus-rest bipartitions first
and then seeded random disjoint pairs; big graphs are handled through a
reusable max-flow network solved by scipy, rebuilt capacities per query.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .core import Hypergraph, ProjectionMap, TerminalSet
from .flow import OVER_THRESHOLD, mincut_value

__all__ = ["VerificationReport", "verify_sparsifier"]


@dataclass
class VerificationReport:
    mode: str
    checked: int
    failures: List[Tuple[Tuple[int, ...], Tuple[int, ...], int, int]] = field(
        default_factory=list
    )

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_text(self) -> str:
        lines = [
            f"mode: {self.mode}",
            f"pairs checked: {self.checked}",
            f"result: {'PASS' if self.passed else 'FAIL'}",
        ]
        for A, B, vg, vh in self.failures[:20]:
            lines.append(
                f"  mismatch: T1={sorted(A)} T2={sorted(B)} "
                f"original={vg} sparsifier={vh}"
            )
        return "\n".join(lines)

    def to_line(self) -> str:
        return json.dumps(
            {
                "mode": self.mode,
                "checked": self.checked,
                "failures": len(self.failures),
                "passed": self.passed,
            },
            sort_keys=True,
        )


class _ScipyMincut:
    """Reusable split-digraph flow network with swappable endpoints.

    Node layout: v_in = 2v, v_out = 2v + 1, edge j gets 2n + 2j and
    2n + 2j + 1, then one source and one sink node.  Source and sink
    arcs to every vertex exist with capacity zero and are activated per
    query by rewriting the matrix data in place.
    """

    def __init__(self, graph: Hypergraph, c: int):
        self.graph = graph
        self.c = c
        n, m = graph.n, graph.m
        self.src = 2 * (n + m)
        self.snk = self.src + 1
        big = c + 1
        rows: List[int] = []
        cols: List[int] = []
        caps: List[int] = []

        def arc(u: int, v: int, w: int) -> None:
            rows.append(u)
            cols.append(v)
            caps.append(w)

        for v in range(n):
            arc(2 * v, 2 * v + 1, big)
        for j, e in enumerate(graph.edges):
            e_in, e_out = 2 * n + 2 * j, 2 * n + 2 * j + 1
            arc(e_in, e_out, 1)
            for v in e:
                arc(2 * v + 1, e_in, big)
                arc(e_out, 2 * v, big)
        self.n_special = 0
        self.special_pos = {}
        for v in range(n):
            arc(self.src, 2 * v + 1, 0)
            arc(2 * v, self.snk, 0)
        size = self.snk + 1
        self.matrix = csr_matrix(
            (np.array(caps, dtype=np.int32), (rows, cols)), shape=(size, size)
        )
        # locate the data slots of the source/sink arcs after CSR reorder
        self.src_slot = {}
        self.snk_slot = {}
        indptr, indices = self.matrix.indptr, self.matrix.indices
        for v in range(n):
            for k in range(indptr[self.src], indptr[self.src + 1]):
                if indices[k] == 2 * v + 1:
                    self.src_slot[v] = k
            row = 2 * v
            for k in range(indptr[row], indptr[row + 1]):
                if indices[k] == self.snk:
                    self.snk_slot[v] = k
        self.active: List[int] = []

    def query(self, A: Iterable[int], B: Iterable[int]) -> int:
        """min(mincut(A, B), c + 1)."""
        data = self.matrix.data
        for k in self.active:
            data[k] = 0
        self.active = []
        big = self.c + 1
        for a in A:
            k = self.src_slot[a]
            data[k] = big
            self.active.append(k)
        for b in B:
            k = self.snk_slot[b]
            data[k] = big
            self.active.append(k)
        flow = maximum_flow(self.matrix, self.src, self.snk).flow_value
        return min(int(flow), big)


def _thresholded(graph: Hypergraph, A, B, c: int, solver) -> int:
    if solver is not None:
        return min(solver.query(A, B), c)
    value = mincut_value(graph, A, B, c)
    return c if value is OVER_THRESHOLD else min(value, c)


def _check_pair(
    G: Hypergraph,
    H: Hypergraph,
    pi: ProjectionMap,
    A: FrozenSet[int],
    B: FrozenSet[int],
    c: int,
    solver_g,
    solver_h,
) -> Optional[Tuple[int, int]]:
    vg = _thresholded(G, A, B, c, solver_g)
    Ai, Bi = pi.apply_set(A), pi.apply_set(B)
    if Ai & Bi:
        vh = c  # merged images cannot be separated at all
    else:
        vh = _thresholded(H, Ai, Bi, c, solver_h)
    if vg != vh:
        return vg, vh
    return None


def verify_sparsifier(
    graph: Hypergraph,
    terminals: TerminalSet,
    sparsifier: Hypergraph,
    projection: ProjectionMap,
    c: int,
    mode: str = "exhaustive",
    samples: int = 1000,
    seed: int = 0,
    terminal_limit: int = 12,
) -> VerificationReport:
    """Compare thresholded terminal mincuts of G and its sparsifier.

    ``mode`` is "exhaustive" (all terminal bipartitions; terminal count
    capped) or "sampled" (singletons first, then seeded random disjoint
    pairs, ``samples`` in total).
    """
    if len(projection.map) != graph.n:
        raise ValueError("projection domain does not match the graph")
    if projection.image_size != sparsifier.n:
        raise ValueError("projection image does not match the sparsifier")
    T = sorted(terminals.terminals)
    if len(T) < 2:
        return VerificationReport(mode, 0)
    use_scipy = graph.total_size() + sparsifier.total_size() > 4000
    solver_g = _ScipyMincut(graph, c) if use_scipy else None
    solver_h = _ScipyMincut(sparsifier, c) if use_scipy else None
    report = VerificationReport(mode, 0)

    def run(A: FrozenSet[int], B: FrozenSet[int]) -> None:
        bad = _check_pair(
            graph, sparsifier, projection, A, B, c, solver_g, solver_h
        )
        report.checked += 1
        if bad is not None:
            report.failures.append((tuple(sorted(A)), tuple(sorted(B)), *bad))

    if mode == "exhaustive":
        if len(T) > terminal_limit:
            raise ValueError(
                f"exhaustive verification limited to {terminal_limit} terminals"
            )
        anchor, rest = T[0], T[1:]
        for mask in range(1 << len(rest)):
            A = frozenset([anchor]) | frozenset(
                rest[i] for i in range(len(rest)) if mask >> i & 1
            )
            B = frozenset(T) - A
            if B:
                run(A, B)
        return report
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    for t in T:
        if report.checked >= samples:
            break
        run(frozenset([t]), frozenset(T) - {t})
    rng = random.Random(seed)
    while report.checked < samples:
        perm = rng.sample(T, len(T))
        a = rng.randint(1, len(T) - 1)
        b = rng.randint(1, len(T) - a)
        run(frozenset(perm[:a]), frozenset(perm[a : a + b]))
    report.mode = f"sampled:{samples}:seed={seed}"
    return report
