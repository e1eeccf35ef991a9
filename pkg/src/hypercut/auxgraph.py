"""Tripartite bookkeeping linking terminal partitions, cuts, and edges.

The auxiliary graph has three node classes: nontrivial bipartitions of
the terminal set (P), enumerated connected cuts (C), and hyperedges (E).
A partition is adjacent to exactly the cuts realizing its thresholded
mincut value, and a cut is adjacent to its boundary edges.  A hyperedge
e is then essential, meaning it appears in every mincut of some terminal
bipartition, exactly when some partition's whole cut neighborhood lies
inside e's cut neighborhood.

That characterization only holds after pruning and on a connected
graph: a partition is kept only when every one of its mincuts splits
the graph into two connected sides, which guarantees all of its mincuts
are present as cut nodes.  (On a disconnected graph every partition can
end up pruned while essential edges still exist; callers hand each
connected component over separately.)  The
unpruned variant is kept around as well because it exhibits a concrete
misclassification on a seven-vertex regression instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .core import Hypergraph, TerminalSet, boundary
from .flow import (
    Cut,
    SplitDigraph,
    a_minimal_mincut,
    brute_force_mincut,
    is_connected,
)

__all__ = [
    "TerminalPartition",
    "AuxGraph",
    "is_useful_partition",
    "build_auxiliary_graph",
    "build_pruned_auxiliary_graph",
    "essential_edges_from_aux",
    "brute_force_essential",
    "apply_contraction_to_aux",
    "aux_to_dot",
]


@dataclass(frozen=True)
class TerminalPartition:
    """An unordered nontrivial bipartition of the terminal set.

    Canonical form: ``side_a`` is the side containing the smallest
    terminal id, so each bipartition has exactly one representative.
    """

    side_a: FrozenSet[int]
    side_b: FrozenSet[int]

    def __post_init__(self):
        if not self.side_a or not self.side_b:
            raise ValueError("both sides must be nonempty")
        if self.side_a & self.side_b:
            raise ValueError("sides must be disjoint")
        if min(self.side_a) > min(self.side_b):
            raise ValueError("side_a must hold the smallest terminal id")

    @staticmethod
    def of(A: Iterable[int], B: Iterable[int]) -> "TerminalPartition":
        As, Bs = frozenset(A), frozenset(B)
        if As and Bs and min(As) > min(Bs):
            As, Bs = Bs, As
        return TerminalPartition(As, Bs)

    def separates(self, side: FrozenSet[int]) -> bool:
        """Does the bipartition with the given side split side_a from side_b?"""
        a_in, b_in = self.side_a <= side, self.side_b <= side
        a_out = not (self.side_a & side)
        b_out = not (self.side_b & side)
        return (a_in and b_out) or (b_in and a_out)


def is_useful_partition(
    graph: Hypergraph,
    A: Iterable[int],
    T: TerminalSet,
    c: int,
    net: Optional[SplitDigraph] = None,
) -> Tuple[bool, Optional[Cut]]:
    """Decide whether every (A, T-A)-mincut has two connected sides.

    Checks the minimal mincut from each side: if both minimal sides are
    connected, every mincut of the bipartition splits the graph into two
    connected pieces.  Returns the A-minimal cut as a witness when the
    partition is useful.
    """
    As = frozenset(A)
    Bs = T.terminals - As
    if not As or not Bs or not As <= T.terminals:
        raise ValueError("A must be a nontrivial terminal subset")
    if net is None:
        net = SplitDigraph(graph, c)
    from_a = a_minimal_mincut(graph, As, Bs, c, net=net)
    if from_a is None:
        return False, None
    from_b = a_minimal_mincut(graph, Bs, As, c, net=net)
    assert from_b is not None
    if is_connected(graph, from_a.side) and is_connected(graph, from_b.side):
        return True, from_a
    return False, None


class AuxGraph:
    """Mutable tripartite adjacency over partitions, cuts, and edges."""

    def __init__(
        self,
        graph: Hypergraph,
        terminals: TerminalSet,
        c: int,
        pruned: bool,
    ):
        self.graph = graph
        self.terminals = terminals
        self.c = c
        self.pruned = pruned
        self.cuts: Dict[int, Cut] = {}
        self.partitions: Set[TerminalPartition] = set()
        self.mincut_value: Dict[TerminalPartition, int] = {}
        self.p_to_c: Dict[TerminalPartition, Set[int]] = {}
        self.c_to_p: Dict[int, Set[TerminalPartition]] = {}
        self.e_to_c: Dict[int, Set[int]] = {}
        self.edge_nodes: Set[int] = set()
        self.non_cut_edges: Set[int] = set()

    def copy(self) -> "AuxGraph":
        dup = AuxGraph(self.graph, self.terminals, self.c, self.pruned)
        dup.cuts = dict(self.cuts)
        dup.partitions = set(self.partitions)
        dup.mincut_value = dict(self.mincut_value)
        dup.p_to_c = {p: set(cs) for p, cs in self.p_to_c.items()}
        dup.c_to_p = {ci: set(ps) for ci, ps in self.c_to_p.items()}
        dup.e_to_c = {e: set(cs) for e, cs in self.e_to_c.items()}
        dup.edge_nodes = set(self.edge_nodes)
        dup.non_cut_edges = set(self.non_cut_edges)
        return dup

    def cut_neighborhood(self, e: int) -> Set[int]:
        return self.e_to_c.get(e, set())

    def remove_cut(self, ci: int) -> None:
        cut = self.cuts.pop(ci)
        for p in self.c_to_p.pop(ci, set()):
            self.p_to_c[p].discard(ci)
        for e in cut.boundary_edges:
            cs = self.e_to_c.get(e)
            if cs is not None:
                cs.discard(ci)

    def drop_isolated(self) -> None:
        for p in [p for p, cs in self.p_to_c.items() if not cs]:
            self.partitions.discard(p)
            self.mincut_value.pop(p, None)
            del self.p_to_c[p]
        for e in [e for e in self.edge_nodes if not self.e_to_c.get(e)]:
            self.edge_nodes.discard(e)
            self.e_to_c.pop(e, None)
            self.non_cut_edges.add(e)


def _candidate_partitions(
    terminals: TerminalSet, cuts: Sequence[Cut]
) -> List[TerminalPartition]:
    seen: Set[TerminalPartition] = set()
    out: List[TerminalPartition] = []
    T = terminals.terminals
    for cut in cuts:
        A = T & cut.side
        B = T - cut.side
        if A and B:
            p = TerminalPartition.of(A, B)
            if p not in seen:
                seen.add(p)
                out.append(p)
    return out


def _canonical_cuts(graph: Hypergraph, cuts: Sequence[Cut]) -> List[Cut]:
    """Dedup cuts as bipartitions, keeping the side with vertex 0.

    A cut and its complement describe the same bipartition and the same
    boundary, and which side the enumerator stored can flip under
    contraction, so cut nodes are orientation-free.
    """
    seen: Set[FrozenSet[int]] = set()
    out: List[Cut] = []
    everything = frozenset(range(graph.n))
    for cut in cuts:
        side = cut.side if 0 in cut.side else everything - cut.side
        if side not in seen:
            seen.add(side)
            out.append(Cut(side, cut.boundary_edges, cut.value))
    out.sort(key=lambda cut: sorted(cut.side))
    return out


def _wire(aux: AuxGraph, cuts: Sequence[Cut]) -> None:
    """Install cut nodes and partition/edge adjacency for aux.partitions."""
    for ci, cut in enumerate(_canonical_cuts(aux.graph, cuts)):
        aux.cuts[ci] = cut
        aux.c_to_p[ci] = set()
    for p in aux.partitions:
        aux.p_to_c[p] = set()
        want = aux.mincut_value[p]
        for ci, cut in aux.cuts.items():
            if cut.value == want and p.separates(cut.side):
                aux.p_to_c[p].add(ci)
                aux.c_to_p[ci].add(p)
    for ci, cut in aux.cuts.items():
        for e in cut.boundary_edges:
            aux.e_to_c.setdefault(e, set()).add(ci)


def build_auxiliary_graph(
    graph: Hypergraph, terminals: TerminalSet, cuts: Sequence[Cut], c: int
) -> AuxGraph:
    """The unpruned variant: every induced partition is kept.

    Here solely to demonstrate why pruning is needed; edge nodes cover
    the whole edge set and no usefulness test is applied.
    """
    aux = AuxGraph(graph, terminals, c, pruned=False)
    net = SplitDigraph(graph, c)
    for p in _candidate_partitions(terminals, cuts):
        value = a_minimal_mincut(graph, p.side_a, p.side_b, c, net=net)
        if value is None:
            continue
        aux.partitions.add(p)
        aux.mincut_value[p] = value.value
    _wire(aux, cuts)
    aux.edge_nodes = set(range(graph.m))
    for e in range(graph.m):
        aux.e_to_c.setdefault(e, set())
    return aux


def build_pruned_auxiliary_graph(
    graph: Hypergraph, terminals: TerminalSet, cuts: Sequence[Cut], c: int
) -> AuxGraph:
    """Aux graph over useful partitions only, with isolated nodes dropped.

    Edge nodes shrink to the boundary edges of surviving cuts; the other
    edges land in ``non_cut_edges``, a registry of edges known to sit on
    no retained mincut (so a sparsifier may contract them outright).
    """
    aux = AuxGraph(graph, terminals, c, pruned=True)
    net = SplitDigraph(graph, c)
    for p in _candidate_partitions(terminals, cuts):
        useful, witness = is_useful_partition(graph, p.side_a, terminals, c, net=net)
        if useful:
            assert witness is not None
            aux.partitions.add(p)
            aux.mincut_value[p] = witness.value
    _wire(aux, cuts)
    for ci in [ci for ci, ps in aux.c_to_p.items() if not ps]:
        aux.remove_cut(ci)
    aux.edge_nodes = {
        e for e, cs in aux.e_to_c.items() if cs
    }
    aux.non_cut_edges = set(range(graph.m)) - aux.edge_nodes
    aux.e_to_c = {e: aux.e_to_c[e] for e in aux.edge_nodes}
    aux.drop_isolated()
    return aux


def essential_edges_from_aux(aux: AuxGraph) -> FrozenSet[int]:
    """Edges whose cut neighborhood covers some partition's neighborhood."""
    out = []
    for e in aux.edge_nodes:
        ne = aux.e_to_c.get(e, set())
        for p in aux.partitions:
            np = aux.p_to_c[p]
            if np and np <= ne:
                out.append(e)
                break
    return frozenset(out)


def brute_force_essential(
    graph: Hypergraph,
    terminals: TerminalSet,
    c: int,
    n_limit: int = 16,
    t_limit: int = 12,
) -> FrozenSet[int]:
    """Edges lying in every mincut of some terminal bipartition (oracle)."""
    T = sorted(terminals.terminals)
    if graph.n > n_limit or len(T) > t_limit:
        raise ValueError("instance beyond oracle limits")
    essential: Set[int] = set()
    if len(T) < 2:
        return frozenset()
    anchor, rest = T[0], T[1:]
    for mask in range(1 << len(rest)):
        A = {anchor} | {rest[i] for i in range(len(rest)) if mask >> i & 1}
        B = set(T) - A
        if not B:
            continue
        value, sides = brute_force_mincut(graph, A, B, limit=n_limit)
        if value > c or value == 0:
            continue
        common = None
        for side in sides:
            bd = boundary(graph, side)
            common = bd if common is None else common & bd
        assert common is not None
        essential |= common
    return frozenset(essential)


def apply_contraction_to_aux(aux: AuxGraph, e: int) -> AuxGraph:
    """Drop edge node e's cuts and everything that becomes isolated.

    Valid only when no partition's neighborhood is contained in e's,
    i.e. e survives in no complete mincut family; the result then equals
    the pruned auxiliary graph of the contracted instance up to the
    contraction's relabeling.
    """
    ne = set(aux.cut_neighborhood(e))
    for p in {p for ci in ne for p in aux.c_to_p.get(ci, set())}:
        if aux.p_to_c[p] and aux.p_to_c[p] <= ne:
            raise ValueError("edge fails the non-essential precondition")
    out = aux.copy()
    for ci in ne:
        out.remove_cut(ci)
    out.drop_isolated()
    return out


def aux_to_dot(aux: AuxGraph) -> str:
    """Render the tripartite graph in DOT (boxes P, ellipses C, diamonds E)."""
    lines = ["graph aux {"]
    p_name = {}
    for i, p in enumerate(sorted(aux.partitions, key=lambda q: sorted(q.side_a))):
        p_name[p] = f"p{i}"
        label = "{%s}|{%s}" % (
            ",".join(map(str, sorted(p.side_a))),
            ",".join(map(str, sorted(p.side_b))),
        )
        lines.append(f'  p{i} [shape=box, label="{label}"];')
    for ci, cut in sorted(aux.cuts.items()):
        label = ",".join(map(str, sorted(cut.side)))
        lines.append(f'  c{ci} [shape=ellipse, label="{{{label}}}"];')
    for e in sorted(aux.edge_nodes):
        lines.append(f'  e{e} [shape=diamond, label="e{e}"];')
    for p, cs in sorted(aux.p_to_c.items(), key=lambda kv: sorted(kv[0].side_a)):
        for ci in sorted(cs):
            lines.append(f"  {p_name[p]} -- c{ci};")
    for e in sorted(aux.edge_nodes):
        for ci in sorted(aux.e_to_c.get(e, set())):
            lines.append(f"  c{ci} -- e{e};")
    lines.append("}")
    return "\n".join(lines) + "\n"
