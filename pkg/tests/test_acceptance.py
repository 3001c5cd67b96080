"""Acceptance criteria, each printed as one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s``; the lines also
appear in a plain ``pytest -v`` run.
"""
import itertools
import random
import time

import pytest

from cdsolve import (
    Graph, IntervalDP, IntervalModel, RandomSpec, clique_path_from_intervals, ewcd_to_split_twin, exact_cd,
    exact_cd_twins_forced, exact_ewcd, forbidden_check_split_twin, generate, greedy_max_clique_clustering,
    is_chordal, recognize_interval, recognize_split_twin, reduce_false_twins, serialize_clustering,
    solve_interval_cd, solve_one_split_twin_cd, solve_split_cd, solve_threshold_twin_cd,
)
from cdsolve.gadgets import random_ewcd
from cdsolve.graph import pairs
from conftest import random_graph

# unlabeled interval graphs on 1..6 vertices (OEIS A005975)
INTERVAL_GRAPH_COUNTS = [1, 2, 4, 10, 27, 92]


@pytest.fixture
def report(capsys):
    def emit(name, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        assert ok, detail
    return emit


# --- instance families ------------------------------------------------------

def all_interval_models(n):
    """Every endpoint order of ``n`` intervals with distinct endpoints 1..2n,
    intervals labelled by the order of their left endpoints."""
    out = []
    lo, hi = [], []

    def rec(pos, opened, live):
        if opened == n and not live:
            out.append(IntervalModel.of(zip(lo, hi)))
            return
        if opened < n:
            lo.append(pos)
            hi.append(None)
            rec(pos + 1, opened + 1, live + [opened])
            lo.pop()
            hi.pop()
        for v in live:
            hi[v] = pos
            rec(pos + 1, opened, [u for u in live if u != v])
            hi[v] = None

    rec(1, 0, [])
    return out


def canonical(g):
    return min(
        tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in g.edges()))
        for p in itertools.permutations(range(g.n))
    )


def exhaustive_interval_family():
    """One interval model per isomorphism class of interval graph, n <= 6."""
    family = {}
    for n in range(1, 7):
        labeled = {}
        for m in all_interval_models(n):
            labeled.setdefault(tuple(m.graph().edges()), m)
        for m in labeled.values():
            family.setdefault((n, canonical(m.graph())), m)
    return list(family.values())


def seeded_interval_models(count=200):
    out = []
    for seed in range(count):
        density = [0.15, 0.3, 0.5, 0.8][seed % 4]
        _, m = generate(RandomSpec("interval", 1 + seed % 12, seed, density=density))
        out.append(m)
    return out


def seeded_class_graphs(cls, count=200):
    rng = random.Random(f"acceptance-{cls}")
    return [generate(RandomSpec(cls, rng.randint(1, 12), seed, density=rng.uniform(0.2, 0.9)))[0]
            for seed in range(count)]


def twin_inflated(rng, max_n=10):
    # a random base graph whose vertices are blown up into true-twin cliques
    base = random_graph(rng, rng.randint(1, 6), rng.uniform(0.2, 0.8))
    sizes = [1] * base.n
    for _ in range(rng.randint(1, max_n - base.n) if base.n < max_n else 0):
        sizes[rng.randrange(base.n)] += 1
    owner = [v for v in range(base.n) for _ in range(sizes[v])]
    n = len(owner)
    edges = [(s, t) for s in range(n) for t in range(s + 1, n)
             if owner[s] == owner[t] or base.has_edge(owner[s], owner[t])]
    return Graph(n, edges)


def with_false_twin(rng, max_n=11):
    """A chordal graph plus a false twin of one of its simplicial vertices;
    returns ``(graph, twin, original)``."""
    while True:
        g, _ = generate(RandomSpec("chordal", rng.randint(2, max_n - 1), rng.randrange(10**6),
                                   density=rng.uniform(0.3, 0.9)))
        simplicial = [v for v in range(g.n) if g.is_clique(g.adj_mask(v))]
        if not simplicial:
            continue
        x = rng.choice(simplicial)
        n = g.n + 1
        edges = g.edges() + [(u, g.n) for u in g.neighbors(x)]
        return Graph(n, edges), g.n, x


# --- criteria ---------------------------------------------------------------

def test_interval_dp_matches_oracle(report):
    t0 = time.perf_counter()
    family = exhaustive_interval_family()
    counts = [sum(1 for m in family if m.n == n) for n in range(1, 7)]
    models = seeded_interval_models() + family
    bad = []
    for m in models:
        g = m.graph()
        best = exact_cd(g)[0]
        v1, cl = solve_interval_cd(clique_path_from_intervals(m), g, check=True)
        v2, _ = solve_interval_cd(recognize_interval(g), g, check=True)
        if not (v1 == v2 == best == cl.internal_edges):
            bad.append((m.intervals, v1, v2, best))
    secs = time.perf_counter() - t0
    ok = not bad and counts == INTERVAL_GRAPH_COUNTS and secs < 60
    report("interval DP = oracle", ok,
           f"{len(models)} instances (200 seeded + {len(family)} exhaustive, per-n {counts}), "
           f"{len(bad)} mismatches, {secs:.1f}s (limit 60s)")


@pytest.mark.parametrize("cls, solver", [
    ("split", solve_split_cd),
    ("one-split-twin", solve_one_split_twin_cd),
    ("threshold-twin", solve_threshold_twin_cd),
])
def test_class_solver_matches_oracle(report, cls, solver):
    t0 = time.perf_counter()
    graphs = seeded_class_graphs(cls)
    bad = sum(1 for g in graphs if solver(g).internal_edges != exact_cd(g)[0])
    secs = time.perf_counter() - t0
    report(f"{cls} solver = oracle", bad == 0 and secs < 60,
           f"{len(graphs)} instances, n <= {max(g.n for g in graphs)}, {bad} mismatches, "
           f"{secs:.1f}s (limit 60s)")


def test_gadget_value_identity(report):
    rng = random.Random("acceptance-ewcd")
    bad, biggest = 0, 0
    for _ in range(100):
        inst = random_ewcd(rng, max_target=14)
        gm = ewcd_to_split_twin(inst)
        biggest = max(biggest, gm.target.n)
        if exact_cd(gm.target)[0] != exact_ewcd(inst) + len(inst.I) * pairs(inst.q):
            bad += 1
    report("gadget value identity", bad == 0 and biggest <= 14,
           f"100 instances, largest target {biggest} vertices, {bad} violations")


def test_split_twin_recognizers_agree(report):
    t0 = time.perf_counter()
    disagree, checked = 0, 0
    for n in range(7):
        slots = list(itertools.combinations(range(n), 2))
        for code in range(1 << len(slots)):
            g = Graph(n, [e for k, e in enumerate(slots) if code >> k & 1])
            checked += 1
            if (recognize_split_twin(g) is None) != (forbidden_check_split_twin(g) is not None):
                disagree += 1
    exhaustive = checked
    rng = random.Random("acceptance-recognizers")
    for _ in range(1000):
        g = random_graph(rng, rng.randint(1, 10), rng.uniform(0.1, 0.9))
        checked += 1
        if (recognize_split_twin(g) is None) != (forbidden_check_split_twin(g) is not None):
            disagree += 1
    secs = time.perf_counter() - t0
    report("split-twin recognizers agree", disagree == 0,
           f"{exhaustive} labeled graphs n <= 6 + 1000 random n <= 10, {disagree} disagreements, {secs:.1f}s")


def test_twin_forcing_keeps_value(report):
    rng = random.Random("acceptance-true-twins")
    graphs = [twin_inflated(rng) for _ in range(200)]
    with_twins = sum(1 for g in graphs if any(g.adj_mask(u) | 1 << u == g.adj_mask(v) | 1 << v
                                              for u in range(g.n) for v in range(u + 1, g.n)))
    bad = sum(1 for g in graphs if exact_cd_twins_forced(g) != exact_cd(g)[0])
    report("true twins co-clustered keeps optimum", bad == 0,
           f"200 instances ({with_twins} with true twins), {bad} violations")


def test_false_twin_removal_keeps_value(report):
    rng = random.Random("acceptance-false-twins")
    bad = 0
    for _ in range(200):
        g, x, _ = with_false_twin(rng)
        rest, _ = g.induced_subgraph([v for v in range(g.n) if v != x])
        reduced, _, removed = reduce_false_twins(g)
        best = exact_cd(g)[0]
        if exact_cd(rest)[0] != best or exact_cd(reduced)[0] != best or not removed:
            bad += 1
    report("false twin with clique neighbourhood removable", bad == 0, f"200 instances, {bad} violations")


def test_greedy_within_factor_two(report):
    rng = random.Random("acceptance-greedy")
    bad, tight = 0, 0
    for seed in range(200):
        g, _ = generate(RandomSpec("chordal", rng.randint(1, 12), seed, density=rng.uniform(0.2, 0.9)))
        assert is_chordal(g)
        opt_deleted = g.edge_count - exact_cd(g)[0]
        got = greedy_max_clique_clustering(g).deleted_edges
        bad += got > 2 * opt_deleted
        tight += got > opt_deleted
    report("greedy deletions <= 2 x optimum", bad == 0,
           f"200 chordal instances, {bad} violations, {tight} where greedy is suboptimal")


@pytest.mark.parametrize("n, limit", [(25, 10.0), (40, 120.0)])
def test_interval_dp_performance(report, n, limit):
    worst, worst_cells = 0.0, 0
    for seed in range(5):
        for density in (0.2, 0.5, 0.9):
            _, m = generate(RandomSpec("interval", n, seed, density=density))
            t0 = time.perf_counter()
            dp = IntervalDP(clique_path_from_intervals(m))
            dp.run()
            dp.reconstruct()
            worst = max(worst, time.perf_counter() - t0)
            worst_cells = max(worst_cells, len(dp.table))
    cap = (n + 1) ** 4
    report(f"interval DP performance n={n}", worst <= limit and worst_cells <= cap,
           f"15 instances, slowest {worst:.2f}s (limit {limit:.0f}s), "
           f"max memo cells {worst_cells} (cap {cap})")


def test_clustering_documents_are_deterministic(report):
    instances = []
    for m in seeded_interval_models():
        instances.append(("interval-dp", m.graph(), lambda m=m: solve_interval_cd(clique_path_from_intervals(m))[1]))
    for cls, solver in [("split", solve_split_cd), ("one-split-twin", solve_one_split_twin_cd),
                        ("threshold-twin", solve_threshold_twin_cd)]:
        for g in seeded_class_graphs(cls):
            instances.append((cls, g, lambda g=g, s=solver: s(g)))
    for g in seeded_class_graphs("chordal", 100):
        instances.append(("greedy", g, lambda g=g: greedy_max_clique_clustering(g)))
        instances.append(("oracle", g, lambda g=g: exact_cd(g)[1]))
    differ = 0
    for algo, g, run in instances:
        first = serialize_clustering(g, run(), algo).encode()
        second = serialize_clustering(g, run(), algo).encode()
        differ += first != second
    report("byte-identical clustering documents", differ == 0,
           f"{len(instances)} instances solved twice, {differ} differing documents")
