"""End-to-end sparsifier constructions.

Three pipelines produce contraction-based sparsifiers that preserve all
c-thresholded mincuts between terminal subsets:

* ``sparsify_fast`` decomposes into high-conductance parts, sparsifies
  each part independently, and stitches the parts back together, for up
  to logarithmically many rounds.
* ``sparsify_slow`` splits along any small cut leaving many terminals on
  both sides and handles unsplittable instances by contracting edges one
  at a time until only essential ones remain.
* ``polytime_sparsify`` recurses on exact sparsest terminal cuts instead.

The divide step replaces every crossing edge by two anchored halves so
the two sides can be sparsified independently; the anchors are degree-1
terminals, which keeps their halves uncontractible, and the combine step
deletes the anchors and reinstates each crossing edge through the two
side projections.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import numpy as np

from .auxgraph import (
    apply_contraction_to_aux,
    build_pruned_auxiliary_graph,
    essential_edges_from_aux,
)
from .core import (
    ContractionResult,
    Hypergraph,
    ProjectionMap,
    TerminalSet,
    contract,
    induced_subgraph,
    separate_hyperedges,
)
from .cuts import EnumerationParams, enumerate_connected_cuts
from .decomposition import _components, expander_decompose

__all__ = [
    "LimitExceeded",
    "SparsifierOutput",
    "PipelineConfig",
    "Subproblem",
    "DivideResult",
    "divide",
    "combine",
    "identity_conquer",
    "phi_sparsify",
    "sparsify_fast",
    "sparsify_slow",
    "polytime_sparsify",
    "terminal_expansion",
    "is_edge_unbreakable",
]


class LimitExceeded(ValueError):
    """An instance is too large for an exhaustive-search pipeline."""


@dataclass(frozen=True)
class SparsifierOutput:
    """A sparsifier with its projection and edge provenance.

    ``edge_source[j]`` is the input edge id whose image is edge j of the
    sparsifier; the projection maps input vertices onto sparsifier
    vertices.
    """

    sparsifier: Hypergraph
    projection: ProjectionMap
    edge_source: Tuple[int, ...]
    stats: dict = field(compare=False, default_factory=dict)

    @property
    def kept_edges(self) -> FrozenSet[int]:
        return frozenset(self.edge_source)


@dataclass(frozen=True)
class PipelineConfig:
    c: int
    c_prime: int = 1
    max_iters: Optional[int] = None
    phi_inv_cap: Optional[int] = None
    safe_mode: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("threshold c must be >= 1")
        if self.c_prime < 1:
            raise ValueError("c_prime must be >= 1")


@dataclass(frozen=True)
class Subproblem:
    """One anchored side of a divide step."""

    graph: Hypergraph
    terminals: TerminalSet
    # separated-graph vertex id -> subproblem vertex id
    relabel: Dict[int, int]
    # subproblem edge id -> separated-graph edge id
    kept: Tuple[int, ...]


@dataclass(frozen=True)
class DivideResult:
    graph: Hypergraph
    terminals: TerminalSet
    V1: FrozenSet[int]
    V2: FrozenSet[int]
    separation: "SeparationResult"
    side1: Subproblem
    side2: Subproblem


from .core import SeparationResult  # noqa: E402  (type only, after dataclasses)


def _side_subproblem(
    sep: SeparationResult,
    V: FrozenSet[int],
    anchors: FrozenSet[int],
    terminals: TerminalSet,
) -> Subproblem:
    sub, relabel, kept = induced_subgraph(sep.graph, V | anchors)
    t = frozenset(relabel[v] for v in terminals.terminals if v in V)
    a = frozenset(relabel[v] for v in anchors)
    return Subproblem(sub, TerminalSet(t | a, a), relabel, kept)


def divide(
    graph: Hypergraph,
    terminals: TerminalSet,
    V1: Sequence[int],
    V2: Sequence[int],
) -> DivideResult:
    """Split (V1, V2) into two anchored subproblems."""
    S1, S2 = frozenset(V1), frozenset(V2)
    sep = separate_hyperedges(graph, S1, S2)
    side1 = _side_subproblem(sep, S1, sep.anchors_side1, terminals)
    side2 = _side_subproblem(sep, S2, sep.anchors_side2, terminals)
    return DivideResult(graph, terminals, S1, S2, sep, side1, side2)


def identity_conquer(graph: Hypergraph, terminals: TerminalSet) -> SparsifierOutput:
    """The do-nothing conquer step (useful for round-trip checks)."""
    return SparsifierOutput(
        graph, ProjectionMap.identity(graph.n), tuple(range(graph.m))
    )


def _anchor_images(
    out: SparsifierOutput, anchors: FrozenSet[int]
) -> FrozenSet[int]:
    pi = out.projection
    preimage_count = Counter(pi.map)
    images = set()
    for a in anchors:
        img = pi(a)
        if preimage_count[img] != 1:
            raise RuntimeError("anchor vertex was merged away by a conquer step")
        images.add(img)
    return frozenset(images)


def combine(
    out1: SparsifierOutput, out2: SparsifierOutput, divided: DivideResult
) -> SparsifierOutput:
    """Merge two side sparsifiers back into one for the divided graph.

    Anchor images and the anchored-half edges are deleted, and every
    original crossing edge is re-added as the union of its two projected
    halves.  The resulting projection acts piecewise through the side
    the vertex was assigned to.
    """
    sep = divided.separation
    sides = (divided.side1, divided.side2)
    outs = (out1, out2)
    vmaps: List[Dict[int, int]] = []
    next_id = 0
    for sub, out in zip(sides, outs):
        anchor_imgs = _anchor_images(out, sub.terminals.anchors)
        vmap = {}
        for h in range(out.sparsifier.n):
            if h not in anchor_imgs:
                vmap[h] = next_id
                next_id += 1
        vmaps.append(vmap)
    edges: List[FrozenSet[int]] = []
    edge_source: List[int] = []
    for sub, out, vmap in zip(sides, outs, vmaps):
        for j, e in enumerate(out.sparsifier.edges):
            if not all(v in vmap for v in e):
                continue  # an anchored-half image, dropped here
            sep_edge = sub.kept[out.edge_source[j]]
            kind, orig = sep.edge_origin[sep_edge]
            if kind != "orig":
                raise RuntimeError("anchored half without its anchors")
            edges.append(frozenset(vmap[v] for v in e))
            edge_source.append(orig)
    part_of = {}
    for v in divided.V1:
        part_of[v] = 0
    for v in divided.V2:
        part_of[v] = 1
    relabels = (divided.side1.relabel, divided.side2.relabel)

    def project(v: int) -> int:
        s = part_of[v]
        return vmaps[s][outs[s].projection(relabels[s][v])]

    for sep_edge in sep.separated:
        e = divided.graph.edges[sep_edge.edge_id]
        edges.append(frozenset(project(v) for v in e))
        edge_source.append(sep_edge.edge_id)
    pi = ProjectionMap(next_id, tuple(project(v) for v in range(divided.graph.n)))
    return SparsifierOutput(
        Hypergraph(next_id, edges), pi, tuple(edge_source)
    )


def _from_contraction(res: ContractionResult, m: int) -> SparsifierOutput:
    source: List[int] = [0] * res.graph.m
    for old, new in res.edge_images.items():
        if new is not None:
            source[new] = old
    return SparsifierOutput(res.graph, res.projection, tuple(source))


def phi_sparsify(
    graph: Hypergraph,
    terminals: TerminalSet,
    phi: Fraction,
    r: int,
    c: int,
    safe_mode: bool = False,
) -> SparsifierOutput:
    """Contract every edge the pruned auxiliary graph lets go of.

    Builds the auxiliary graph over the enumerated connected cuts, then
    walks the cut-incident edges in ascending id order, contracting each
    edge whose cut neighborhood covers no partition's neighborhood and
    updating the auxiliary graph in place.  Edges on no retained cut are
    contracted outright.  With ``safe_mode`` the enumeration ignores the
    budget and is complete on any graph.
    """
    if graph.m == 0:
        return identity_conquer(graph, terminals)

    def releasable(sub: Hypergraph, sub_t: TerminalSet) -> Tuple[Set[int], int]:
        if safe_mode:
            params = EnumerationParams.safe_mode(c, sub)
        else:
            params = EnumerationParams.for_graph(c, Fraction(1) / phi, max(r, 1))
        cuts = enumerate_connected_cuts(sub, params)
        aux = build_pruned_auxiliary_graph(sub, sub_t, cuts, c)
        for e in sorted(set(aux.edge_nodes)):
            if e not in aux.edge_nodes:
                continue  # became isolated earlier, already in the registry
            ne = aux.cut_neighborhood(e)
            blocked = False
            for p in {p for ci in ne for p in aux.c_to_p.get(ci, set())}:
                if aux.p_to_c[p] and aux.p_to_c[p] <= ne:
                    blocked = True
                    break
            if not blocked:
                aux = apply_contraction_to_aux(aux, e)
        return set(range(sub.m)) - set(aux.edge_nodes), len(cuts)

    # the auxiliary-graph analysis presumes a connected graph, so it runs
    # once per connected component; every edge lives in exactly one
    comps = _components(graph)
    contractible: Set[int] = set()
    n_cuts = 0
    if len(comps) == 1:
        contractible, n_cuts = releasable(graph, terminals)
    else:
        for comp in comps:
            if len(comp) == 1:
                continue
            sub, relabel, kept = induced_subgraph(graph, comp)
            sub_t = TerminalSet(
                frozenset(relabel[t] for t in terminals.terminals & comp),
                frozenset(relabel[a] for a in terminals.anchors & comp),
            )
            released, found = releasable(sub, sub_t)
            contractible.update(kept[j] for j in released)
            n_cuts += found
    res = contract(graph, contractible, terminals)
    out = _from_contraction(res, graph.m)
    out.stats["cuts"] = n_cuts
    out.stats["contracted"] = len(contractible)
    return out


Conquer = Callable[[Hypergraph, TerminalSet, bool], SparsifierOutput]


def _peel(
    graph: Hypergraph,
    terminals: TerminalSet,
    groups: List[Tuple[FrozenSet[int], bool]],
    conquer: Conquer,
) -> SparsifierOutput:
    """Binary recursion over decomposition parts via divide and combine."""
    if len(groups) == 1:
        return conquer(graph, terminals, groups[0][1])
    mid = len(groups) // 2
    left, right = groups[:mid], groups[mid:]
    V1 = frozenset().union(*(g for g, _ in left))
    V2 = frozenset().union(*(g for g, _ in right))
    divided = divide(graph, terminals, V1, V2)

    def descend(
        half: List[Tuple[FrozenSet[int], bool]],
        sub: Subproblem,
        side_anchors: Callable[["object"], Tuple[int, int]],
        own: FrozenSet[int],
    ) -> SparsifierOutput:
        sets = [set(sub.relabel[v] for v in g) for g, _ in half]
        for sep_edge in divided.separation.separated:
            e = graph.edges[sep_edge.edge_id]
            hit = e & own
            for idx, (g, _) in enumerate(half):
                if hit & g:
                    sets[idx].update(
                        sub.relabel[a] for a in side_anchors(sep_edge)
                    )
                    break
        new_groups = [
            (frozenset(s), flag) for s, (_, flag) in zip(sets, half)
        ]
        return _peel(sub.graph, sub.terminals, new_groups, conquer)

    out1 = descend(left, divided.side1, lambda s: s.anchors1, V1)
    out2 = descend(right, divided.side2, lambda s: s.anchors2, V2)
    return combine(out1, out2, divided)


def _compose(total: SparsifierOutput, step: SparsifierOutput) -> SparsifierOutput:
    return SparsifierOutput(
        step.sparsifier,
        total.projection.then(step.projection),
        tuple(total.edge_source[j] for j in step.edge_source),
        total.stats,
    )


def sparsify_fast(
    graph: Hypergraph, terminals: TerminalSet, config: PipelineConfig
) -> SparsifierOutput:
    """Decompose, sparsify the parts, recombine; repeat until stable."""
    c = config.c
    total = identity_conquer(graph, terminals)
    current, cur_t = graph, terminals
    rounds = config.max_iters
    if rounds is None:
        rounds = max(1, math.ceil(math.log2(max(graph.m, 2))))
    round_stats: List[dict] = []
    for _ in range(rounds):
        if current.m == 0 or current.n <= 1:
            break
        t0 = time.monotonic()
        r = max(current.rank(), 1)
        logn = max(1, math.ceil(math.log2(max(current.n, 2))))
        phi_inv = 4 * config.c_prime * r * c**4 * logn**3
        if config.phi_inv_cap is not None:
            phi_inv = min(phi_inv, config.phi_inv_cap)
        phi_inv = max(phi_inv, 1)
        phi = Fraction(1, phi_inv)
        decomp = expander_decompose(current, phi)
        groups = sorted(
            zip(decomp.parts, decomp.certified), key=lambda g: min(g[0])
        )

        def conquer(
            g: Hypergraph, t: TerminalSet, certified: bool
        ) -> SparsifierOutput:
            return phi_sparsify(
                g,
                t,
                phi,
                g.rank(),
                c,
                safe_mode=config.safe_mode or not certified,
            )

        before = current.m
        step = _peel(current, cur_t, list(groups), conquer)
        total = _compose(total, step)
        current = step.sparsifier
        cur_t = step.projection.apply_terminals(cur_t)
        round_stats.append(
            {
                "m": current.m,
                "n": current.n,
                "parts": len(decomp.parts),
                "phi_inv": phi_inv,
                "seconds": round(time.monotonic() - t0, 3),
            }
        )
        if current.m >= before:
            break
    total.stats["rounds"] = round_stats
    return total


def _iterative_essential_contraction(
    graph: Hypergraph, terminals: TerminalSet, c: int
) -> SparsifierOutput:
    """Contract non-essential edges one at a time until none remain.

    Recomputing essentials after each contraction matters: an edge that
    is non-essential now can become essential once another edge is gone,
    so batch contraction would be unsound.
    """
    total = identity_conquer(graph, terminals)
    current, cur_t = graph, terminals
    while current.m:
        # essentiality decomposes over connected components (a mincut of a
        # terminal bipartition is a disjoint union of per-component
        # mincuts), and the aux-graph characterization needs each graph
        # it sees to be connected
        essential: Set[int] = set()
        for comp in _components(current):
            comp_t = cur_t.terminals & comp
            if len(comp_t) < 2:
                continue
            sub, _relabel, kept = induced_subgraph(current, comp)
            sub_t = TerminalSet(frozenset(_relabel[t] for t in comp_t))
            params = EnumerationParams.safe_mode(c, sub)
            cuts = enumerate_connected_cuts(sub, params)
            aux = build_pruned_auxiliary_graph(sub, sub_t, cuts, c)
            essential.update(kept[j] for j in essential_edges_from_aux(aux))
        candidates = [e for e in range(current.m) if e not in essential]
        if not candidates:
            break
        res = contract(current, [candidates[0]], cur_t)
        step = _from_contraction(res, current.m)
        total = _compose(total, step)
        current, cur_t = res.graph, res.terminals
    return total


def _edge_masks(graph: Hypergraph) -> List[int]:
    return [sum(1 << v for v in e) for e in graph.edges]


def is_edge_unbreakable(
    graph: Hypergraph,
    terminals: TerminalSet,
    d: int,
    c: int,
    limit: int = 22,
) -> Tuple[bool, Optional[Tuple[FrozenSet[int], FrozenSet[int]]]]:
    """No bipartition with <= c crossing edges splits off d terminals twice.

    Returns a violating bipartition when one exists.
    """
    n = graph.n
    if n > limit:
        raise ValueError(f"unbreakability scan limited to n <= {limit}")
    T = sorted(terminals.terminals)
    if len(T) < 2 * d:
        return True, None
    masks = np.arange(1, 1 << (n - 1), dtype=np.int64)  # vertex n-1 on side 2
    crossing = np.zeros(len(masks), dtype=np.int32)
    full = (1 << n) - 1
    for em in _edge_masks(graph):
        inter = masks & em
        crossing += ((inter != 0) & (inter != em)).astype(np.int32)
    t_in = np.zeros(len(masks), dtype=np.int32)
    for t in T:
        t_in += ((masks >> t) & 1).astype(np.int32)
    ok = (crossing <= c) & (t_in >= d) & (len(T) - t_in >= d)
    idx = np.flatnonzero(ok)
    if idx.size == 0:
        return True, None
    mask = int(masks[idx[0]])
    V1 = frozenset(v for v in range(n) if mask >> v & 1)
    return False, (V1, frozenset(range(n)) - V1)


def terminal_expansion(
    graph: Hypergraph, terminals: TerminalSet, limit: int = 22
) -> Tuple[Fraction, FrozenSet[int]]:
    """Exact minimum of |boundary(X)| / min terminal count over sides.

    Only subsets with a terminal on both sides qualify.
    """
    n = graph.n
    if n > limit:
        raise ValueError(f"terminal expansion scan limited to n <= {limit}")
    T = sorted(terminals.terminals)
    if len(T) < 2:
        raise ValueError("terminal expansion needs at least two terminals")
    anchor = T[0]
    masks = np.arange(1, 1 << n, dtype=np.int64)
    masks = masks[((masks >> anchor) & 1) == 0]  # fix the anchor on side 2
    bd = np.zeros(len(masks), dtype=np.int32)
    for em in _edge_masks(graph):
        inter = masks & em
        bd += ((inter != 0) & (inter != em)).astype(np.int32)
    t_in = np.zeros(len(masks), dtype=np.int32)
    for t in T:
        t_in += ((masks >> t) & 1).astype(np.int32)
    t_min = np.minimum(t_in, len(T) - t_in)
    ok = t_in >= 1  # anchor is outside, so the other side has a terminal
    ratios = np.where(ok, bd / np.maximum(t_min, 1), np.inf)
    best = int(np.argmin(ratios))
    if not np.isfinite(ratios[best]):
        raise ValueError("no qualifying subset")
    mask = int(masks[best])
    X = frozenset(v for v in range(n) if mask >> v & 1)
    return Fraction(int(bd[best]), int(t_min[best])), X


def sparsify_slow(
    graph: Hypergraph,
    terminals: TerminalSet,
    c: int,
    n_limit: int = 22,
) -> SparsifierOutput:
    """Split along breakable cuts, contract to essentials at the leaves.

    Requires every terminal to have degree 1 (run reduce_to_degree_one
    first); anchors introduced by splits satisfy this automatically.
    """
    for t in terminals.terminals:
        if graph.degree(t) != 1:
            raise ValueError(
                "terminals must have degree 1; apply reduce_to_degree_one"
            )
    if graph.n > n_limit:
        raise LimitExceeded(f"instance beyond the n <= {n_limit} limit")
    unbreakable, witness = is_edge_unbreakable(
        graph, terminals, 5 * c, c, limit=n_limit
    )
    if unbreakable:
        out = _iterative_essential_contraction(graph, terminals, c)
        out.stats["base_cases"] = 1
        return out
    assert witness is not None
    divided = divide(graph, terminals, witness[0], witness[1])
    out1 = sparsify_slow(divided.side1.graph, divided.side1.terminals, c, n_limit)
    out2 = sparsify_slow(divided.side2.graph, divided.side2.terminals, c, n_limit)
    out = combine(out1, out2, divided)
    out.stats["base_cases"] = out1.stats.get("base_cases", 1) + out2.stats.get(
        "base_cases", 1
    )
    return out


def polytime_sparsify(
    graph: Hypergraph,
    terminals: TerminalSet,
    c: int,
    n_limit: int = 22,
) -> SparsifierOutput:
    """Recurse on exact sparsest terminal cuts, contract at the leaves."""
    if c < 1:
        raise ValueError("threshold c must be >= 1")
    if graph.n > n_limit:
        raise LimitExceeded(f"instance beyond the n <= {n_limit} limit")
    k = len(terminals.terminals)
    if k < 2 or graph.m == 0:
        out = _iterative_essential_contraction(graph, terminals, c)
        out.stats["base_cases"] = 1
        return out
    beta = 1
    phi = Fraction(1, 4 * beta * max(1, math.ceil(math.log2(max(k * c, 2)))))
    expansion, witness = terminal_expansion(graph, terminals, limit=n_limit)
    if expansion >= 2 * beta * phi:
        out = _iterative_essential_contraction(graph, terminals, c)
        out.stats["base_cases"] = 1
        return out
    V1 = witness
    V2 = frozenset(range(graph.n)) - V1
    divided = divide(graph, terminals, V1, V2)
    out1 = polytime_sparsify(divided.side1.graph, divided.side1.terminals, c, n_limit)
    out2 = polytime_sparsify(divided.side2.graph, divided.side2.terminals, c, n_limit)
    out = combine(out1, out2, divided)
    out.stats["base_cases"] = out1.stats.get("base_cases", 1) + out2.stats.get(
        "base_cases", 1
    )
    return out
