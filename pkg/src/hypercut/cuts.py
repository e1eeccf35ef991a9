"""Enumeration of connected cuts of bounded value.

A connected cut stores the side X with the fewer incident hyperedges
(ties admit both orientations) such that the induced sub-hypergraph
G[X] is connected and the boundary has at most c edges.

Two enumeration strategies live here.  The budgeted strategy runs a
seeded DFS that aborts after visiting budget + 1 distinct hyperedges and
then branches by trimming single vertices out of visited hyperedges; it
is complete on graphs whose conductance is high enough that every small
cut side touches at most `budget` hyperedges.  When the budget reaches
the total edge count, a direct exact enumerator takes over: it scans all
candidate boundary sets of size at most c and reads cut sides off as
connected components, which is complete on every graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

from .core import Hypergraph, boundary
from .flow import Cut, is_connected

__all__ = [
    "EnumerationParams",
    "enumerate_connected_cuts",
    "enumerate_cuts_from_seed",
    "brute_force_connected_cuts",
]

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class EnumerationParams:
    """Budget and depth limits for the seeded cut search."""

    c: int
    phi_inv: Rational
    r: int
    budget: int
    max_depth: int

    @staticmethod
    def for_graph(c: int, phi_inv: Rational, r: int) -> "EnumerationParams":
        if c < 0:
            raise ValueError("threshold must be non-negative")
        if phi_inv <= 0:
            raise ValueError("phi_inv must be positive")
        budget = int(Fraction(c) * Fraction(phi_inv))
        return EnumerationParams(c, phi_inv, r, budget, r * c)

    @staticmethod
    def safe_mode(c: int, graph: Hypergraph) -> "EnumerationParams":
        """Budget covering every edge; enumeration is then exact."""
        r = graph.rank()
        return EnumerationParams(c, max(graph.m, 1), r, graph.m, r * c)


def _incident_count(graph: Hypergraph, X: FrozenSet[int]) -> int:
    return sum(1 for e in graph.edges if e & X)


def _small_side(graph: Hypergraph, X: FrozenSet[int]) -> bool:
    comp = frozenset(range(graph.n)) - X
    return _incident_count(graph, X) <= _incident_count(graph, comp)


def _qualifies(graph: Hypergraph, X: FrozenSet[int], c: int) -> Optional[Cut]:
    if not (0 < len(X) < graph.n):
        return None
    bd = boundary(graph, X)
    if len(bd) > c:
        return None
    if not is_connected(graph, X):
        return None
    if not _small_side(graph, X):
        return None
    return Cut(X, bd, len(bd))


def enumerate_cuts_from_seed(
    depth: int,
    H: Dict[int, FrozenSet[int]],
    graph: Hypergraph,
    params: EnumerationParams,
    v_seed: int,
) -> Set[FrozenSet[int]]:
    """Budgeted seeded search with vertex trimming, returning sides.

    ``H`` maps each live edge id to its current (possibly trimmed) vertex
    set.  The walk starts at the seed and stops the moment it has touched
    budget + 1 distinct edges; if it gets stuck first, the visited vertex
    set is a candidate.  On overflow, every visited edge sheds one
    non-seed vertex and the search continues on the trimmed graph.
    Candidates still need the connected-cut filter against the original
    graph.

    Different trim orders reach identical working graphs, so the search
    runs breadth-first over deduplicated states: each working graph is
    expanded exactly once, at its minimum trim depth.
    """
    if depth > params.max_depth:
        return set()

    def key(work: Dict[int, FrozenSet[int]]) -> FrozenSet:
        return frozenset(
            (i, work.get(i))
            for i, e in enumerate(graph.edges)
            if work.get(i) != e
        )

    out: Set[FrozenSet[int]] = set()
    visited_states = {key(H)}
    queue = deque([(depth, H)])
    while queue:
        d, work = queue.popleft()
        inc: Dict[int, List[int]] = {}
        for i, e in work.items():
            for v in e:
                inc.setdefault(v, []).append(i)
        visited_v = {v_seed}
        visited_e: List[int] = []
        seen_e: Set[int] = set()
        stack = [v_seed]
        overflow = False
        while stack and not overflow:
            u = stack.pop()
            for i in inc.get(u, ()):
                if i in seen_e:
                    continue
                seen_e.add(i)
                visited_e.append(i)
                if len(seen_e) > params.budget:
                    overflow = True
                    break
                for w in work[i]:
                    if w not in visited_v:
                        visited_v.add(w)
                        stack.append(w)
        if not overflow:
            X = frozenset(visited_v)
            if 0 < len(X) < graph.n and len(boundary(graph, X)) <= params.c:
                out.add(X)
            continue
        if d >= params.max_depth:
            continue
        for i in visited_e:
            for v in work[i]:
                if v == v_seed:
                    continue
                trimmed = work[i] - {v}
                child = dict(work)
                if trimmed:
                    child[i] = trimmed
                else:
                    del child[i]
                ck = key(child)
                if ck not in visited_states:
                    visited_states.add(ck)
                    queue.append((d + 1, child))
    return out


def _exact_connected_cuts(graph: Hypergraph, c: int) -> List[Cut]:
    """All connected cuts of value <= c, by boundary-set scan.

    Parallel edges (same vertex set) cross any side together, so a
    boundary of value <= c is a union of whole parallel classes with
    total multiplicity <= c; candidates F range over such unions.  For
    each F the components of G - F are the atoms no qualifying side can
    split.  A side is either one atom or a union of atoms glued together
    by F classes reaching two or more of them (a boundary edge with
    several vertices inside the side still provides internal
    connectivity).  Both shapes are scanned, so every connected cut
    appears for F equal to its exact boundary and the enumeration is
    complete without any expansion assumption.
    """
    n, m = graph.n, graph.m
    by_mask: Dict[int, List[int]] = {}
    for i, e in enumerate(graph.edges):
        by_mask.setdefault(sum(1 << v for v in e), []).append(i)
    cls_masks = list(by_mask.keys())
    cls_ids = list(by_mask.values())
    cls_size = [len(ids) for ids in cls_ids]
    q = len(cls_masks)
    full = (1 << n) - 1
    seen: Set[int] = set()
    out: List[Cut] = []

    indexed = list(enumerate(cls_masks))
    indexed_rev = indexed[::-1]

    def closure(start: int, banned) -> int:
        # alternating forward and backward sweeps, stopping after the
        # first sweep that adds nothing: propagation along a path then
        # costs a constant number of sweeps in either direction
        reach = start
        forward = True
        while True:
            changed = False
            for i, mk in indexed if forward else indexed_rev:
                if i in banned:
                    continue
                if mk & reach and mk | reach != reach:
                    reach |= mk
                    changed = True
            if not changed:
                return reach
            forward = not forward

    def emit(side_mask: int, bd: Iterable[int]) -> None:
        side = frozenset(v for v in range(n) if side_mask >> v & 1)
        bd_set = frozenset(bd)
        out.append(Cut(side, bd_set, len(bd_set)))

    # vertices all of whose incident classes would go with a removed
    # class split off as singletons without any graph traversal
    incident_classes: List[Set[int]] = [set() for _ in range(n)]
    for ci, mk in enumerate(cls_masks):
        for v in range(n):
            if mk >> v & 1:
                incident_classes[v].add(ci)
    # stats depend only on the component partition, not on F, so they
    # are shared between different F producing the same split
    stats_cache: Dict[Tuple[int, ...], Tuple[list, list, list, list]] = {}

    # record one set of classes that alone connects the graph; any F
    # avoiding all of them leaves the graph connected
    spanning: Set[int] = set()
    reach0 = 1
    changed0 = True
    while changed0:
        changed0 = False
        for ci0, mk0 in indexed:
            if mk0 & reach0 and mk0 | reach0 != reach0:
                reach0 |= mk0
                spanning.add(ci0)
                changed0 = True
    spans_all = reach0 == full

    for k in range(0, c + 1):
        for F in combinations(range(q), k):
            if sum(cls_size[ci] for ci in F) > c:
                continue
            if spans_all and all(ci not in spanning for ci in F):
                continue
            Fs = frozenset(F)
            # if removing F leaves the graph connected, no proper side
            # has its whole boundary inside F
            reach = closure(1, F)
            if reach == full:
                continue
            comps = [reach]
            unvisited = full & ~reach
            while unvisited:
                start = unvisited & -unvisited
                v = start.bit_length() - 1
                if incident_classes[v] <= Fs:
                    cm = start
                else:
                    cm = closure(start, F)
                comps.append(cm)
                unvisited &= ~cm
            p = len(comps)
            key = tuple(comps)
            cached = stats_cache.get(key)
            if cached is None:
                # which atoms each class reaches, as a p-bit mask
                cls_roots = []
                for mk in cls_masks:
                    rb = 0
                    bit = 1
                    for cm in comps:
                        if cm & mk:
                            rb |= bit
                        bit <<= 1
                    cls_roots.append(rb)
                touched = [0] * p
                inside_only = [0] * p
                crossing: List[List[int]] = [[] for _ in range(p)]
                for ci, rb in enumerate(cls_roots):
                    w = cls_size[ci]
                    if rb & (rb - 1) == 0:
                        at = rb.bit_length() - 1
                        inside_only[at] += w
                        touched[at] += w
                    else:
                        at = 0
                        while rb:
                            if rb & 1:
                                touched[at] += w
                                crossing[at].extend(cls_ids[ci])
                            rb >>= 1
                            at += 1
                stats_cache[key] = (cls_roots, touched, inside_only, crossing)
            else:
                cls_roots, touched, inside_only, crossing = cached
            for at, cm in enumerate(comps):
                if cm == full or cm in seen:
                    continue
                seen.add(cm)
                # the stored side must not have the larger incidence count
                if touched[at] > m - inside_only[at]:
                    continue
                emit(cm, crossing[at])
            # unions of two or more atoms, glued by multi-atom F classes
            gluers = [cls_roots[ci] for ci in F if cls_roots[ci] & (cls_roots[ci] - 1)]
            glue_bits = 0
            for rb in gluers:
                glue_bits |= rb
            if glue_bits & (glue_bits - 1) == 0:
                continue
            glue_list = [at for at in range(p) if glue_bits >> at & 1]
            g = len(glue_list)
            for pick in range(3, 1 << g):
                if pick & (pick - 1) == 0:
                    continue
                S = sum(1 << glue_list[i] for i in range(g) if pick >> i & 1)
                # connectivity of the chosen atoms through the F classes
                reach_s = S & -S
                grew = True
                while grew and reach_s != S:
                    grew = False
                    for rb in gluers:
                        hit = rb & S
                        if hit & reach_s and hit | reach_s != reach_s:
                            reach_s |= hit
                            grew = True
                if reach_s != S:
                    continue
                X = 0
                inc_x = 0
                inside = 0
                at = 0
                t = S
                while t:
                    if t & 1:
                        X |= comps[at]
                        inc_x += touched[at]
                        inside += inside_only[at]
                    t >>= 1
                    at += 1
                if X == full or X in seen:
                    continue
                seen.add(X)
                bd_edges: List[int] = []
                for ci in F:
                    rb = cls_roots[ci]
                    if rb & (rb - 1) == 0:
                        continue
                    hit = (rb & S).bit_count()
                    if hit:
                        inc_x -= (hit - 1) * cls_size[ci]
                        if rb & ~S:
                            bd_edges.extend(cls_ids[ci])
                        else:
                            inside += cls_size[ci]
                if inc_x > m - inside:
                    continue
                emit(X, bd_edges)
    return out


def enumerate_connected_cuts(
    graph: Hypergraph, params: EnumerationParams
) -> List[Cut]:
    """Every connected cut with value <= c and a side within budget.

    Complete whenever every qualifying side touches at most ``budget``
    hyperedges (in particular always when budget >= m); sound on all
    graphs.  Output is deduplicated by side and sorted for determinism.
    """
    if params.c <= 0 or graph.n <= 1:
        return []
    if params.budget >= graph.m:
        cuts = _exact_connected_cuts(graph, params.c)
    else:
        candidates: Set[FrozenSet[int]] = set()
        base = {i: e for i, e in enumerate(graph.edges)}
        for v in range(graph.n):
            candidates |= enumerate_cuts_from_seed(0, base, graph, params, v)
        cuts = []
        for X in candidates:
            cut = _qualifies(graph, X, params.c)
            if cut is not None:
                cuts.append(cut)
    cuts.sort(key=lambda cut: sorted(cut.side))
    return cuts


def brute_force_connected_cuts(
    graph: Hypergraph, c: int, limit: int = 16
) -> List[Cut]:
    """All connected cuts by scanning every bipartition (oracle)."""
    if graph.n > limit:
        raise ValueError(f"oracle limited to n <= {limit}")
    out: List[Cut] = []
    seen: Set[FrozenSet[int]] = set()
    for mask in range(1, (1 << graph.n) - 1):
        X = frozenset(v for v in range(graph.n) if mask >> v & 1)
        if X in seen:
            continue
        cut = _qualifies(graph, X, c)
        if cut is not None:
            seen.add(X)
            out.append(cut)
    out.sort(key=lambda cut: sorted(cut.side))
    return out
