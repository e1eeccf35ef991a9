"""Hypergraph cut sparsifiers: construction and certification.

The library builds contraction-based terminal cut sparsifiers for
unweighted multi-hypergraphs.  A sparsifier preserves, exactly, every
minimum cut value between disjoint terminal subsets once those values are
thresholded at a parameter ``c``.  Everything here is exact and geared
toward desk-scale certification: brute-force oracles sit next to each
algorithm so that outputs can be verified independently.
"""

from .core import (
    ContractionResult,
    Hypergraph,
    ProjectionMap,
    SeparationResult,
    TerminalSet,
    anchored_induced_subgraph,
    boundary,
    contract,
    induced_subgraph,
    reduce_to_degree_one,
    restrict,
    separate_hyperedges,
)
from .flow import (
    OVER_THRESHOLD,
    Cut,
    SplitDigraph,
    a_minimal_mincut,
    brute_force_mincut,
    is_connected,
    mincut_value,
)
from .cuts import (
    EnumerationParams,
    brute_force_connected_cuts,
    enumerate_connected_cuts,
    enumerate_cuts_from_seed,
)
from .auxgraph import (
    AuxGraph,
    TerminalPartition,
    apply_contraction_to_aux,
    aux_to_dot,
    build_auxiliary_graph,
    build_pruned_auxiliary_graph,
    brute_force_essential,
    essential_edges_from_aux,
    is_useful_partition,
)
from .decomposition import (
    DecompositionResult,
    conductance,
    expander_decompose,
    graph_conductance,
)
from .pipeline import (
    PipelineConfig,
    SparsifierOutput,
    combine,
    divide,
    identity_conquer,
    is_edge_unbreakable,
    phi_sparsify,
    polytime_sparsify,
    sparsify_fast,
    sparsify_slow,
    terminal_expansion,
)
from .verify import VerificationReport, verify_sparsifier

__all__ = [
    "AuxGraph",
    "ContractionResult",
    "Cut",
    "DecompositionResult",
    "EnumerationParams",
    "Hypergraph",
    "OVER_THRESHOLD",
    "PipelineConfig",
    "ProjectionMap",
    "SeparationResult",
    "SparsifierOutput",
    "SplitDigraph",
    "TerminalPartition",
    "TerminalSet",
    "VerificationReport",
    "a_minimal_mincut",
    "anchored_induced_subgraph",
    "apply_contraction_to_aux",
    "aux_to_dot",
    "boundary",
    "brute_force_connected_cuts",
    "brute_force_essential",
    "brute_force_mincut",
    "build_auxiliary_graph",
    "build_pruned_auxiliary_graph",
    "combine",
    "conductance",
    "contract",
    "divide",
    "enumerate_connected_cuts",
    "enumerate_cuts_from_seed",
    "essential_edges_from_aux",
    "expander_decompose",
    "graph_conductance",
    "identity_conquer",
    "induced_subgraph",
    "is_connected",
    "is_edge_unbreakable",
    "is_useful_partition",
    "mincut_value",
    "phi_sparsify",
    "polytime_sparsify",
    "reduce_to_degree_one",
    "restrict",
    "separate_hyperedges",
    "sparsify_fast",
    "sparsify_slow",
    "terminal_expansion",
    "verify_sparsifier",
]
