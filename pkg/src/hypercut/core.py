"""Immutable hypergraph values and the structural operations on them.

A :class:`Hypergraph` is a vertex count together with an ordered multiset
of hyperedges.  Edges are frozensets of vertex ids; the position of an
edge in the tuple is its stable edge id.  Hyperedges of cardinality at
most one are never stored: they cannot cross any cut, so dropping them
keeps every mincut value intact while keeping edge counts meaningful.

All values are immutable after construction; operations return new
values, so everything is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "Hypergraph",
    "TerminalSet",
    "ProjectionMap",
    "SeparationResult",
    "SeparatedEdge",
    "ContractionResult",
    "restrict",
    "induced_subgraph",
    "boundary",
    "contract",
    "separate_hyperedges",
    "anchored_induced_subgraph",
    "reduce_to_degree_one",
]

Edge = FrozenSet[int]


def _as_edge(vertices: Iterable[int], n: int) -> Edge:
    e = frozenset(vertices)
    for v in e:
        if not (0 <= v < n):
            raise ValueError(f"vertex id {v} out of range [0, {n})")
    return e


class Hypergraph:
    """An unweighted multi-hypergraph on vertices ``0..n-1``.

    Parallel hyperedges are permitted and counted with multiplicity.
    Construction rejects edges of cardinality <= 1; callers normalize
    (drop) such edges before building a graph.
    """

    __slots__ = ("n", "edges", "_incident")

    def __init__(self, n: int, edges: Iterable[Iterable[int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        object.__setattr__(self, "n", n)
        es: List[Edge] = []
        for raw in edges:
            e = _as_edge(raw, n)
            if len(e) <= 1:
                raise ValueError(f"hyperedge {sorted(e)} has cardinality <= 1")
            es.append(e)
        object.__setattr__(self, "edges", tuple(es))
        object.__setattr__(self, "_incident", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Hypergraph is immutable")

    @property
    def m(self) -> int:
        return len(self.edges)

    def rank(self) -> int:
        """Maximum hyperedge cardinality (0 when there are no edges)."""
        return max((len(e) for e in self.edges), default=0)

    def total_size(self) -> int:
        """Sum of hyperedge cardinalities."""
        return sum(len(e) for e in self.edges)

    def incident(self, v: int) -> Tuple[int, ...]:
        """Edge ids incident to vertex ``v``."""
        cache = self._incident
        if cache is None:
            cache = [[] for _ in range(self.n)]
            for i, e in enumerate(self.edges):
                for u in e:
                    cache[u].append(i)
            cache = tuple(tuple(lst) for lst in cache)
            object.__setattr__(self, "_incident", cache)
        return cache[v]

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n == other.n and sorted(
            map(sorted, self.edges)
        ) == sorted(map(sorted, other.edges))

    def __hash__(self):
        return hash((self.n, tuple(sorted(tuple(sorted(e)) for e in self.edges))))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class TerminalSet:
    """A set of terminal vertices, with anchors flagged separately.

    ``anchors`` marks the subset of terminals that were introduced as
    anchor vertices by hyperedge separation; it is always a subset of
    ``terminals``.
    """

    terminals: FrozenSet[int]
    anchors: FrozenSet[int] = frozenset()

    def __post_init__(self):
        if not self.anchors <= self.terminals:
            raise ValueError("anchors must be a subset of terminals")

    @staticmethod
    def of(vertices: Iterable[int], anchors: Iterable[int] = ()) -> "TerminalSet":
        return TerminalSet(frozenset(vertices), frozenset(anchors))

    def validate(self, graph: Hypergraph) -> None:
        for v in self.terminals:
            if not (0 <= v < graph.n):
                raise ValueError(f"terminal {v} out of range")

    def __len__(self) -> int:
        return len(self.terminals)


@dataclass(frozen=True)
class ProjectionMap:
    """A surjection from ``0..len(map)-1`` onto ``0..image_size-1``."""

    image_size: int
    map: Tuple[int, ...]

    def __post_init__(self):
        seen = set()
        for img in self.map:
            if not (0 <= img < self.image_size):
                raise ValueError("projection image out of range")
            seen.add(img)
        if len(seen) != self.image_size:
            raise ValueError("projection is not surjective")

    @staticmethod
    def identity(n: int) -> "ProjectionMap":
        return ProjectionMap(n, tuple(range(n)))

    def __call__(self, v: int) -> int:
        return self.map[v]

    def apply_set(self, vertices: Iterable[int]) -> FrozenSet[int]:
        return frozenset(self.map[v] for v in vertices)

    def then(self, nxt: "ProjectionMap") -> "ProjectionMap":
        """Compose: first apply ``self``, then ``nxt``."""
        if len(nxt.map) != self.image_size:
            raise ValueError("projection domains do not line up")
        return ProjectionMap(nxt.image_size, tuple(nxt.map[v] for v in self.map))

    def apply_terminals(self, terminals: TerminalSet) -> TerminalSet:
        return TerminalSet(
            self.apply_set(terminals.terminals), self.apply_set(terminals.anchors)
        )


def restrict(items, X: Iterable[int]):
    """Restrict a mixed collection of vertices and edges to vertex set X.

    Vertices (ints) survive iff they lie in X; edges (sets of ints) are
    intersected with X and kept when the intersection is nonempty.
    Multiplicity of edges is preserved.  Returns a pair
    ``(vertices, edges)`` where ``vertices`` is a frozenset and ``edges``
    a list of frozensets.
    """
    Xs = frozenset(X)
    verts = set()
    edges = []
    for item in items:
        if isinstance(item, int):
            if item in Xs:
                verts.add(item)
        else:
            inter = frozenset(item) & Xs
            if inter:
                edges.append(inter)
    return frozenset(verts), edges


def boundary(graph: Hypergraph, X: Iterable[int]) -> FrozenSet[int]:
    """Edge ids with at least one endpoint on each side of (X, V - X)."""
    Xs = frozenset(X)
    for v in Xs:
        if not (0 <= v < graph.n):
            raise ValueError(f"vertex id {v} out of range")
    out = []
    for i, e in enumerate(graph.edges):
        inside = len(e & Xs)
        if 0 < inside < len(e):
            out.append(i)
    return frozenset(out)


def induced_subgraph(
    graph: Hypergraph, X: Iterable[int]
) -> Tuple[Hypergraph, Dict[int, int], Tuple[int, ...]]:
    """Induced sub-hypergraph on X with dense relabeling.

    Returns ``(H, relabel, kept_edge_ids)``: ``relabel`` maps original
    vertex ids in X to 0-based ids of H (sorted order), and
    ``kept_edge_ids[j]`` is the original edge id behind H's edge j.
    Restricted edges of cardinality <= 1 are dropped.
    """
    Xs = sorted(set(X))
    if not Xs:
        raise ValueError("induced subgraph on an empty vertex set")
    relabel = {v: i for i, v in enumerate(Xs)}
    for v in Xs:
        if not (0 <= v < graph.n):
            raise ValueError(f"vertex id {v} out of range")
    member = frozenset(Xs)
    edges = []
    kept = []
    for i, e in enumerate(graph.edges):
        inter = e & member
        if len(inter) >= 2:
            edges.append(frozenset(relabel[v] for v in inter))
            kept.append(i)
    return Hypergraph(len(Xs), edges), relabel, tuple(kept)


@dataclass(frozen=True)
class ContractionResult:
    graph: Hypergraph
    projection: ProjectionMap
    terminals: Optional[TerminalSet]
    # old edge id -> new edge id, or None when the edge was contracted or
    # its image collapsed to cardinality <= 1
    edge_images: Dict[int, Optional[int]] = field(compare=False)


def contract(
    graph: Hypergraph,
    edge_ids: Iterable[int],
    terminals: Optional[TerminalSet] = None,
) -> ContractionResult:
    """Contract the given edges, merging the vertices of each one.

    Remaining edges are mapped through the resulting projection with
    multiplicity preserved; images of cardinality <= 1 are dropped.
    """
    chosen = set(edge_ids)
    for i in chosen:
        if not (0 <= i < graph.m):
            raise ValueError(f"edge id {i} out of range")
    parent = list(range(graph.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in chosen:
        it = iter(graph.edges[i])
        root = find(next(it))
        for v in it:
            rv = find(v)
            if rv != root:
                parent[rv] = root

    # dense relabel in order of first appearance over 0..n-1
    label: Dict[int, int] = {}
    pi = []
    for v in range(graph.n):
        r = find(v)
        if r not in label:
            label[r] = len(label)
        pi.append(label[r])
    projection = ProjectionMap(len(label), tuple(pi))

    edges = []
    edge_images: Dict[int, Optional[int]] = {}
    for i, e in enumerate(graph.edges):
        if i in chosen:
            edge_images[i] = None
            continue
        img = frozenset(pi[v] for v in e)
        if len(img) <= 1:
            edge_images[i] = None
            continue
        edge_images[i] = len(edges)
        edges.append(img)
    new_graph = Hypergraph(projection.image_size, edges)
    new_terminals = (
        projection.apply_terminals(terminals) if terminals is not None else None
    )
    return ContractionResult(new_graph, projection, new_terminals, edge_images)


@dataclass(frozen=True)
class SeparatedEdge:
    """Bookkeeping for one crossing edge replaced by its anchored halves."""

    edge_id: int  # id in the original graph
    half1: int  # edge id of the side-1 half in the separated graph
    half2: int
    anchors1: Tuple[int, int]  # anchor vertex ids in the separated graph
    anchors2: Tuple[int, int]


@dataclass(frozen=True)
class SeparationResult:
    graph: Hypergraph  # the separated graph (original ids + anchors appended)
    separated: Tuple[SeparatedEdge, ...]
    anchors_side1: FrozenSet[int]
    anchors_side2: FrozenSet[int]
    # per edge of the separated graph: ("orig", old_id) or
    # ("half1"/"half2", old_id)
    edge_origin: Tuple[Tuple[str, int], ...]


def separate_hyperedges(
    graph: Hypergraph, V1: Iterable[int], V2: Iterable[int]
) -> SeparationResult:
    """Replace each crossing edge of (V1, V2) by two anchored halves.

    Each crossing edge e yields four fresh anchor vertices: two attach to
    e's V1 part, two to its V2 part.  Anchor vertices are appended after
    the existing ids in ascending order of the crossing edge id, so the
    combine step can identify them deterministically.  Every anchor has
    degree exactly 1 in the separated graph.
    """
    S1, S2 = frozenset(V1), frozenset(V2)
    if S1 & S2 or S1 | S2 != frozenset(range(graph.n)):
        raise ValueError("(V1, V2) must partition the vertex set")
    crossing = sorted(
        i for i, e in enumerate(graph.edges) if (e & S1) and (e & S2)
    )
    n_sep = graph.n + 4 * len(crossing)
    edges: List[Edge] = []
    origin: List[Tuple[str, int]] = []
    for i, e in enumerate(graph.edges):
        if i not in set(crossing):
            edges.append(e)
            origin.append(("orig", i))
    separated: List[SeparatedEdge] = []
    a1: List[int] = []
    a2: List[int] = []
    base = graph.n
    for i in crossing:
        e = graph.edges[i]
        anch = (base, base + 1, base + 2, base + 3)
        base += 4
        half1 = (e & S1) | {anch[0], anch[1]}
        half2 = (e & S2) | {anch[2], anch[3]}
        h1_id = len(edges)
        edges.append(frozenset(half1))
        origin.append(("half1", i))
        h2_id = len(edges)
        edges.append(frozenset(half2))
        origin.append(("half2", i))
        separated.append(
            SeparatedEdge(i, h1_id, h2_id, (anch[0], anch[1]), (anch[2], anch[3]))
        )
        a1.extend(anch[:2])
        a2.extend(anch[2:])
    return SeparationResult(
        Hypergraph(n_sep, edges),
        tuple(separated),
        frozenset(a1),
        frozenset(a2),
        tuple(origin),
    )


def anchored_induced_subgraph(
    graph: Hypergraph, V1: Iterable[int], terminals: TerminalSet
) -> Tuple[Hypergraph, TerminalSet, Dict[int, int]]:
    """Side-1 subproblem of the divide step.

    Separates the crossing edges of (V1, V - V1), induces on V1 plus the
    side-1 anchors, and returns the subgraph, its terminal set (restricted
    terminals plus anchors, with anchors flagged), and the relabeling from
    separated-graph ids to subgraph ids.
    """
    S1 = frozenset(V1)
    if not S1:
        raise ValueError("V1 must be nonempty")
    V2 = frozenset(range(graph.n)) - S1
    sep = separate_hyperedges(graph, S1, V2)
    keep = S1 | sep.anchors_side1
    sub, relabel, _kept = induced_subgraph(sep.graph, keep)
    t1 = frozenset(
        relabel[t] for t in terminals.terminals if t in S1
    ) | frozenset(relabel[a] for a in sep.anchors_side1)
    anch = frozenset(relabel[a] for a in sep.anchors_side1)
    return sub, TerminalSet(t1, anch), relabel


def reduce_to_degree_one(
    graph: Hypergraph, terminals: TerminalSet, c: int
) -> Tuple[Hypergraph, TerminalSet, Dict[int, int]]:
    """Rebuild the instance so every terminal has degree exactly 1.

    Each terminal t gets a duplicate joined to t by c parallel 2-vertex
    edges (capping the effective degree at c), and the duplicate then gets
    c fresh degree-1 terminal copies.  The returned back-map sends each
    copy to its source terminal; thresholded mincuts between copy classes
    equal those between the original terminals.
    """
    if c < 1:
        raise ValueError("threshold c must be >= 1")
    edges = [tuple(e) for e in graph.edges]
    n = graph.n
    new_terminals: List[int] = []
    back: Dict[int, int] = {}
    for t in sorted(terminals.terminals):
        dup = n
        n += 1
        for _ in range(c):
            edges.append((t, dup))
        for _ in range(c):
            copy = n
            n += 1
            edges.append((dup, copy))
            new_terminals.append(copy)
            back[copy] = t
    return (
        Hypergraph(n, edges),
        TerminalSet(frozenset(new_terminals)),
        back,
    )
