"""Command-line surface: sparsify, verify, enumerate-cuts, decompose, stats.

Exit codes: 0 success (or verification pass), 1 verification found a
counterexample, 2 malformed input, 3 instance too large for an
exhaustive-search method.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from .auxgraph import aux_to_dot, build_pruned_auxiliary_graph
from .core import Hypergraph, TerminalSet, reduce_to_degree_one
from .cuts import EnumerationParams, enumerate_connected_cuts
from .decomposition import expander_decompose
from .io import (
    ParseError,
    parse_hypergraph,
    parse_projection,
    serialize_hypergraph,
    serialize_projection,
)
from .pipeline import (
    LimitExceeded,
    PipelineConfig,
    polytime_sparsify,
    sparsify_fast,
    sparsify_slow,
)
from .verify import verify_sparsifier

__all__ = ["main"]


def _read_instance(path: str):
    return parse_hypergraph(Path(path).read_text())


def cmd_sparsify(args: argparse.Namespace) -> int:
    graph, terminals = _read_instance(args.input)
    if args.c < 1:
        print("error: --c must be >= 1", file=sys.stderr)
        return 2
    t0 = time.monotonic()
    reduced = False
    if args.method == "fast":
        config = PipelineConfig(
            c=args.c,
            c_prime=args.cprime,
            phi_inv_cap=args.phi_inv_cap,
            safe_mode=args.safe_mode,
            seed=args.seed,
        )
        out = sparsify_fast(graph, terminals, config)
        base_graph, base_terminals = graph, terminals
    elif args.method == "slow":
        base_graph, base_terminals = graph, terminals
        if any(graph.degree(t) != 1 for t in terminals.terminals):
            base_graph, base_terminals, _back = reduce_to_degree_one(
                graph, terminals, args.c
            )
            reduced = True
        out = sparsify_slow(base_graph, base_terminals, args.c)
    else:
        base_graph, base_terminals = graph, terminals
        out = polytime_sparsify(graph, terminals, args.c)
    elapsed = time.monotonic() - t0
    H = out.sparsifier
    image_terminals = TerminalSet(out.projection.apply_set(base_terminals.terminals))
    if args.out:
        Path(args.out).write_text(serialize_hypergraph(H, image_terminals))
    if args.proj:
        Path(args.proj).write_text(serialize_projection(out.projection))
    if reduced and args.out:
        Path(args.out + ".reduced").write_text(
            serialize_hypergraph(base_graph, base_terminals)
        )
    stats = {
        "method": args.method,
        "c": args.c,
        "n": base_graph.n,
        "m": base_graph.m,
        "n_out": H.n,
        "m_out": H.m,
        "reduced_degree_one": reduced,
        "seconds": round(elapsed, 3),
        **out.stats,
    }
    line = json.dumps(stats, sort_keys=True)
    if args.stats:
        Path(args.stats).write_text(line + "\n")
    else:
        print(line)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    graph, terminals = _read_instance(args.graph)
    sparsifier, _ = _read_instance(args.sparsifier)
    projection = parse_projection(Path(args.projection).read_text())
    if len(projection.map) != graph.n or projection.image_size != sparsifier.n:
        print("error: projection dimensions do not match the graphs", file=sys.stderr)
        return 2
    if args.mode == "exhaustive":
        report = verify_sparsifier(
            graph, terminals, sparsifier, projection, args.c, mode="exhaustive"
        )
    else:
        count = int(args.mode.split(":", 1)[1])
        report = verify_sparsifier(
            graph,
            terminals,
            sparsifier,
            projection,
            args.c,
            mode="sampled",
            samples=count,
            seed=args.seed,
        )
    print(report.to_text())
    print(report.to_line())
    return 0 if report.passed else 1


def cmd_enumerate_cuts(args: argparse.Namespace) -> int:
    graph, terminals = _read_instance(args.input)
    if args.phi_inv is None:
        params = EnumerationParams.safe_mode(args.c, graph)
    else:
        params = EnumerationParams.for_graph(
            args.c, Fraction(args.phi_inv), graph.rank()
        )
    cuts = enumerate_connected_cuts(graph, params)
    for cut in cuts:
        side = " ".join(map(str, sorted(cut.side)))
        print(f"value={cut.value} side={{{side}}}")
    print(f"total={len(cuts)}")
    if args.dot:
        aux = build_pruned_auxiliary_graph(graph, terminals, cuts, args.c)
        Path(args.dot).write_text(aux_to_dot(aux))
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    graph, _terminals = _read_instance(args.input)
    phi = Fraction(args.phi)
    result = expander_decompose(graph, phi)
    for part, certified in zip(result.parts, result.certified):
        side = " ".join(map(str, sorted(part)))
        print(f"part={{{side}}} certified={'yes' if certified else 'no'}")
    print(f"parts={len(result.parts)} crossing={len(result.crossing_edges)}")
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    graph, _terminals = _read_instance(args.input)
    print(f"{graph.n} {graph.m} {graph.rank()} {graph.total_size()}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypercut",
        description="Construct and verify thresholded terminal cut sparsifiers.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="reserved; computations currently run on one core",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sparsify", help="build a sparsifier")
    p.add_argument("input")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--method", choices=["fast", "slow", "poly"], default="fast")
    p.add_argument("--cprime", type=int, default=1)
    p.add_argument("--phi-inv-cap", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--safe-mode", action="store_true")
    p.add_argument("--out", default=None)
    p.add_argument("--proj", default=None)
    p.add_argument("--stats", default=None)
    p.set_defaults(func=cmd_sparsify)

    p = sub.add_parser("verify", help="check a claimed sparsifier")
    p.add_argument("graph")
    p.add_argument("sparsifier")
    p.add_argument("projection")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--mode", default="exhaustive", help="exhaustive or sampled:N")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate-cuts", help="list connected cuts of value <= c")
    p.add_argument("input")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--phi-inv", default=None)
    p.add_argument("--dot", default=None, help="write the pruned tripartite graph")
    p.set_defaults(func=cmd_enumerate_cuts)

    p = sub.add_parser("decompose", help="expander decomposition")
    p.add_argument("input")
    p.add_argument("--phi", required=True, help="conductance target, e.g. 1/8")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("stats", help="print n m r p")
    p.add_argument("input")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LimitExceeded as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
