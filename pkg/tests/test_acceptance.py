"""Acceptance suite: eleven end-to-end checks, one pass/fail line each.

Each test prints a single summary line on success; a failing assertion
marks the criterion as failed.  All comparisons are exact integer or
exact set equality; there are no floating tolerances anywhere.
"""

import random
import time
from fractions import Fraction

import pytest

from hypercut.auxgraph import (
    apply_contraction_to_aux,
    brute_force_essential,
    build_auxiliary_graph,
    build_pruned_auxiliary_graph,
    essential_edges_from_aux,
    is_useful_partition,
)
from hypercut.core import contract
from hypercut.cuts import (
    EnumerationParams,
    brute_force_connected_cuts,
    enumerate_connected_cuts,
)
from hypercut.decomposition import graph_conductance
from hypercut.flow import a_minimal_mincut, brute_force_mincut
from hypercut.gen import (
    blob_chain,
    random_connected_instance,
    random_instance,
    regression_fixture,
    star_chain,
    triangle_chain,
)
from hypercut.pipeline import (
    PipelineConfig,
    combine,
    divide,
    identity_conquer,
    phi_sparsify,
    sparsify_fast,
    sparsify_slow,
)
from hypercut.verify import verify_sparsifier


def _report(num: int, title: str, detail: str) -> None:
    print(f"\ncriterion {num:2d} ({title}): PASS [{detail}]")


def _safe_cuts(g, c):
    return enumerate_connected_cuts(g, EnumerationParams.safe_mode(c, g))


def _split_pair(T):
    terms = sorted(T.terminals)
    return frozenset(terms[:1]), frozenset(terms[1:])


def test_01_random_sparsifiers_verify_exhaustively():
    t0 = time.monotonic()
    failures = []
    for seed in range(1, 201):
        g, T, c = random_instance(seed)
        out = sparsify_fast(g, T, PipelineConfig(c=c))
        report = verify_sparsifier(g, T, out.sparsifier, out.projection, c)
        if not report.passed:
            failures.append((seed, report.to_line()))
    elapsed = time.monotonic() - t0
    assert not failures, failures[:5]
    assert elapsed < 300, f"suite took {elapsed:.1f} s"
    _report(1, "random sparsifier soundness", f"200 instances, {elapsed:.1f} s")


def test_02_sparsifier_size_is_independent_of_n():
    k, c = 4, 2
    sizes = {}
    for n in (20, 40, 80):
        g, T, c = blob_chain(n, k)
        assert g.rank() == 3
        out = sparsify_fast(g, T, PipelineConfig(c=c))
        report = verify_sparsifier(g, T, out.sparsifier, out.projection, c)
        assert report.passed, report.to_text()
        sizes[n] = out.sparsifier.m
    assert len(set(sizes.values())) == 1, sizes
    bound = 64 * k * c**3
    assert all(m <= bound for m in sizes.values()), (sizes, bound)
    _report(2, "size independent of n", f"|E_H|={sizes[20]} for n=20,40,80")


def test_03_budgeted_enumeration_complete_on_certified_expanders():
    certified = 0
    seed = 0
    while certified < 50:
        seed += 1
        assert seed < 3000, "instance stream exhausted"
        g, _, c = random_connected_instance(seed, n_max=8, cs=(1, 2))
        if g.n < 3:
            continue
        phi, _ = graph_conductance(g)
        if not (0 < phi):
            continue
        params = EnumerationParams.for_graph(c, Fraction(1) / phi, g.rank())
        got = {cut.side for cut in enumerate_connected_cuts(g, params)}
        want = {cut.side for cut in brute_force_connected_cuts(g, c)}
        assert got <= want, (seed, got - want)  # soundness on every instance
        certified += 1
        assert got == want, (seed, want - got)
    _report(3, "enumeration complete on expanders", f"{certified} expanders")


def test_04_flow_minimal_side_equals_brute_force_intersection():
    checked = 0
    for seed in range(100):
        g, T, c = random_instance(seed)
        A, B = _split_pair(T)
        cut = a_minimal_mincut(g, A, B, c)
        value, sides = brute_force_mincut(g, A, B)
        if value > c:
            assert cut is None, seed
        else:
            assert cut is not None, seed
            assert cut.side == frozenset.intersection(*sides), seed
        checked += 1
    _report(4, "A-minimal mincut side", f"{checked} instances")


def test_05_essential_edges_match_the_oracle():
    # connected instances: the useful-partition characterization presumes
    # a connected graph, which is what the pipelines feed it
    for seed in range(100):
        g, T, c = random_connected_instance(seed)
        aux = build_pruned_auxiliary_graph(g, T, _safe_cuts(g, c), c)
        got = essential_edges_from_aux(aux)
        want = brute_force_essential(g, T, c)
        assert got == want, (seed, sorted(got), sorted(want))
    _report(5, "essential-edge characterization", "100 instances")


def test_06_seven_vertex_regression():
    fx = regression_fixture()
    cuts = _safe_cuts(fx.graph, fx.c)
    unpruned = essential_edges_from_aux(
        build_auxiliary_graph(fx.graph, fx.terminals, cuts, fx.c)
    )
    pruned = essential_edges_from_aux(
        build_pruned_auxiliary_graph(fx.graph, fx.terminals, cuts, fx.c)
    )
    d, e = fx.labels["d"], fx.labels["e"]
    assert d in unpruned and e in unpruned
    watched = {fx.labels[name] for name in ("a", "b", "d", "e")}
    assert pruned & watched == {fx.labels["a"], fx.labels["b"]}
    _report(6, "pruning regression", "unpruned misclassifies d,e; pruned exact")


def test_07_divide_and_combine_round_trips_verify():
    for seed in range(100):
        g, T, c = random_instance(seed)
        rng = random.Random(seed)
        V1 = frozenset(rng.sample(range(g.n), rng.randint(1, g.n - 1)))
        divided = divide(g, T, V1, frozenset(range(g.n)) - V1)
        out = combine(
            identity_conquer(divided.side1.graph, divided.side1.terminals),
            identity_conquer(divided.side2.graph, divided.side2.terminals),
            divided,
        )
        report = verify_sparsifier(g, T, out.sparsifier, out.projection, c)
        assert report.passed, (seed, report.to_text())
    for seed in range(50):
        g, T, c = random_instance(seed, n_max=7, m_max=9)
        rng = random.Random(5000 + seed)
        V1 = frozenset(rng.sample(range(g.n), rng.randint(1, g.n - 1)))
        divided = divide(g, T, V1, frozenset(range(g.n)) - V1)
        outs = [
            phi_sparsify(
                side.graph, side.terminals, Fraction(1, 4), side.graph.rank(), c,
                safe_mode=True,
            )
            for side in (divided.side1, divided.side2)
        ]
        out = combine(outs[0], outs[1], divided)
        report = verify_sparsifier(g, T, out.sparsifier, out.projection, c)
        assert report.passed, (seed, report.to_text())
    _report(7, "divide/combine soundness", "100 identity + 50 contracting pairs")


def _aux_signature(aux, vmap=None, emap=None):
    def mv(s):
        return frozenset(vmap[v] for v in s) if vmap else frozenset(s)

    def mp(p):
        a, b = mv(p.side_a), mv(p.side_b)
        return (b, a) if min(a) > min(b) else (a, b)

    parts = {mp(p) for p in aux.partitions}
    cuts = {mv(aux.cuts[ci].side) for ci in aux.cuts}
    pc = {
        (*mp(p), mv(aux.cuts[ci].side))
        for p, cs in aux.p_to_c.items()
        for ci in cs
    }
    edges = {emap[e] if emap else e for e in aux.edge_nodes}
    return parts, cuts, pc, edges


def test_08_incremental_update_equals_rebuild():
    checked = 0
    seed = 0
    while checked < 100:
        seed += 1
        assert seed < 3000, "instance stream exhausted"
        g, T, c = random_connected_instance(seed)
        aux = build_pruned_auxiliary_graph(g, T, _safe_cuts(g, c), c)
        essential = essential_edges_from_aux(aux)
        non = [e for e in sorted(aux.edge_nodes) if e not in essential]
        if not non:
            continue
        e = non[0]
        inc = apply_contraction_to_aux(aux, e)
        res = contract(g, [e], T)
        g2, T2 = res.graph, res.terminals
        if len(T2.terminals) < 2:
            continue
        rebuilt = build_pruned_auxiliary_graph(g2, T2, _safe_cuts(g2, c), c)
        vmap = {v: res.projection(v) for v in range(g.n)}
        got = _aux_signature(inc, vmap, res.edge_images)
        want = _aux_signature(rebuilt)
        assert got == want, (seed, e)
        checked += 1
    _report(8, "incremental aux maintenance", f"{checked} contractions")


def test_09_contraction_invariance_and_persistence():
    useful_draws = 0
    seed = 0
    while useful_draws < 200:
        seed += 1
        assert seed < 5000, "instance stream exhausted"
        g, T, c = random_connected_instance(seed)
        essential = brute_force_essential(g, T, c)
        non = [e for e in range(g.m) if e not in essential]
        if not non:
            continue
        e = non[0]
        res = contract(g, [e], T)
        g2, T2 = res.graph, res.terminals
        terms = sorted(T.terminals)
        anchor, rest = terms[0], terms[1:]
        for mask in range(1 << len(rest)):
            if useful_draws >= 200:
                break
            A = frozenset([anchor]) | frozenset(
                rest[i] for i in range(len(rest)) if mask >> i & 1
            )
            B = T.terminals - A
            if not B:
                continue
            A2 = res.projection.apply_set(A)
            B2 = res.projection.apply_set(B)
            if A2 & B2:
                continue  # the contraction merged the bipartition away
            before, _ = is_useful_partition(g, A, T, c)
            after, _ = is_useful_partition(g2, A2, T2, c)
            assert before == after, (seed, sorted(A))
            useful_draws += 1

    persist_draws = 0
    seed = 0
    while persist_draws < 200:
        seed += 1
        assert seed < 5000, "instance stream exhausted"
        g, T, c = random_connected_instance(seed)
        essential = brute_force_essential(g, T, c)
        non = [e for e in range(g.m) if e not in essential]
        if not non:
            continue
        e = non[0]
        res = contract(g, [e], T)
        mapped = {res.edge_images[i] for i in essential}
        after = brute_force_essential(res.graph, res.terminals, c)
        assert None not in mapped, (seed, e)
        assert mapped <= after, (seed, sorted(essential), sorted(after))
        persist_draws += 1
    _report(
        9,
        "usefulness invariance and essential persistence",
        f"{useful_draws} + {persist_draws} draws",
    )


def test_10_split_pipeline_base_case_bound():
    families = [
        (5, 5), (6, 5), (7, 5), (5, 5, 5), (6, 6), (8, 5), (5, 6, 5), (7, 6),
        (9, 5), (10, 5), (6, 5, 5), (5, 7), (8, 6), (5, 5, 6), (7, 7), (6, 7),
        (9, 6), (5, 8), (10, 6), (7, 5, 5), (8, 7), (6, 6, 5), (11, 5), (5, 9),
        (7, 8), (9, 7), (5, 5, 7), (12, 5), (6, 8), (8, 8),
    ]
    assert len(families) == 30
    for lc in families:
        g, T, c = star_chain(lc)
        k = len(T.terminals)
        assert k >= 5 * c
        out = sparsify_slow(g, T, c)
        bound = (k - 5 * c) // c + 1
        bases = out.stats["base_cases"]
        assert bases <= bound, (lc, bases, bound)
        mode = "exhaustive" if k <= 12 else "sampled"
        report = verify_sparsifier(
            g, T, out.sparsifier, out.projection, c, mode=mode, samples=300, seed=1
        )
        assert report.passed, (lc, report.to_text())
    _report(10, "base-case count bound", "30 instances")


def test_11_throughput_target():
    g, T, c = triangle_chain(10_000, k=50)
    assert g.m == 29_994 and g.rank() == 3 and len(T.terminals) == 50
    t0 = time.monotonic()
    out = sparsify_fast(g, T, PipelineConfig(c=c, phi_inv_cap=8))
    elapsed = time.monotonic() - t0
    assert elapsed < 60, f"construction took {elapsed:.1f} s"
    report = verify_sparsifier(
        g, T, out.sparsifier, out.projection, c,
        mode="sampled", samples=2000, seed=0,
    )
    assert report.checked == 2000
    assert report.passed, report.to_text()
    _report(
        11,
        "throughput",
        f"n=10^4 built in {elapsed:.1f} s, m_out={out.sparsifier.m}, "
        "2000 sampled pairs clean",
    )
