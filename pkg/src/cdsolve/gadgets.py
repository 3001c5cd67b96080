"""Twin reductions, the weighted-split to split-twin gadget, and seeded
generators for every supported graph class.

All randomness comes from ``random.Random(seed)`` (Mersenne Twister), which
yields the same stream on every platform for a given integer seed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import Clustering, Graph, InputError, bits, mask_of, pairs, true_twin_classes
from .interval import IntervalModel
from .oracle import WeightedSplitInstance


# --- reductions -------------------------------------------------------------

def contract_true_twins(g: Graph) -> tuple[Graph, list[frozenset[int]]]:
    """Quotient by maximal true-twin classes; vertex ``k`` of the quotient
    stands for ``classes[k]``."""
    classes = true_twin_classes(g)
    reps = [min(c) for c in classes]
    q, _ = g.induced_subgraph(reps)
    return q, classes


def reduce_false_twins(g: Graph) -> tuple[Graph, list[int], list[int]]:
    """Drop one of every false-twin pair whose common neighbourhood is a clique.

    Returns ``(reduced, kept, removed)``: ``kept[k]`` is the original vertex
    behind reduced vertex ``k``; each removed vertex is a trivial cluster of
    some optimal solution.
    """
    alive = g.all_mask
    removed: list[int] = []
    changed = True
    while changed:
        changed = False
        vs = bits(alive)
        for x_pos in range(len(vs) - 1, -1, -1):
            x = vs[x_pos]
            nx = g.adj_mask(x) & alive
            if not g.is_clique(nx):
                continue
            if any(g.adj_mask(y) & alive == nx for y in vs[:x_pos]):
                alive &= ~(1 << x)
                removed.append(x)
                changed = True
                break
    kept = bits(alive)
    reduced, _ = g.induced_subgraph(kept)
    return reduced, kept, removed


# --- weighted split -> split-twin -------------------------------------------

@dataclass(frozen=True)
class GadgetMap:
    source: WeightedSplitInstance
    target: Graph
    # i_class_map[w] = the q target vertices replacing source I-vertex w
    i_class_map: dict[int, tuple[int, ...]] = field(hash=False)
    q: int
    # target vertex -> source vertex for the clique side (identity on C)
    clique_map: dict[int, int] = field(hash=False)

    @property
    def offset(self) -> int:
        return len(self.source.I) * pairs(self.q)


def ewcd_to_split_twin(inst: WeightedSplitInstance) -> GadgetMap:
    """Replace each independent-side vertex by ``q = |C|`` true twins."""
    g = inst.g
    q = inst.q
    C = sorted(inst.C)
    cpos = {c: k for k, c in enumerate(C)}
    edges = [(cpos[u], cpos[v]) for u, v in g.edges() if u in inst.C and v in inst.C]
    nxt = len(C)
    i_map: dict[int, tuple[int, ...]] = {}
    for w in sorted(inst.I):
        twins = tuple(range(nxt, nxt + q))
        nxt += q
        i_map[w] = twins
        edges += [(s, t) for k, s in enumerate(twins) for t in twins[k + 1:]]
        edges += [(cpos[c], s) for c in bits(g.adj_mask(w)) for s in twins]
    target = Graph(nxt, edges)
    return GadgetMap(inst, target, i_map, q, {k: c for c, k in cpos.items()})


def map_solution_back(gm: GadgetMap, cl: Clustering) -> int:
    """Weight of the source clustering that ``cl`` (on the target) encodes."""
    where = {v: k for k, c in enumerate(cl.clusters) for v in c}
    for w, twins in gm.i_class_map.items():
        if len({where[t] for t in twins}) != 1:
            raise InputError(f"twin class of source vertex {w} is split across clusters")
    inv = {t: w for w, twins in gm.i_class_map.items() for t in twins}
    total = 0
    for c in cl.clusters:
        src = {gm.clique_map[v] if v in gm.clique_map else inv[v] for v in c}
        total += gm.source.cluster_weight(mask_of(src))
    if total != cl.internal_edges - gm.offset:
        raise AssertionError("weight identity broken for a twin-respecting clustering")
    return total


# --- generators -------------------------------------------------------------

CLASSES = ("interval", "split", "split-twin", "one-split-twin", "threshold-twin", "chordal", "arbitrary")


@dataclass(frozen=True)
class RandomSpec:
    """What to generate. ``density`` in [0, 1] steers edge probability where a
    class has one; ``clique_frac`` the share of vertices on the clique side."""

    cls: str
    n: int
    seed: int = 0
    density: float = 0.5
    clique_frac: float | None = None

    def __post_init__(self):
        if self.cls not in CLASSES:
            raise InputError(f"unknown class {self.cls!r}; choose from {', '.join(CLASSES)}")
        if self.n < 0:
            raise InputError("n must be non-negative")
        if not 0.0 <= self.density <= 1.0:
            raise InputError("density must lie in [0, 1]")
        if self.clique_frac is not None and not 0.0 <= self.clique_frac <= 1.0:
            raise InputError("clique_frac must lie in [0, 1]")
        if self.cls in ("interval", "chordal", "arbitrary") and self.clique_frac is not None:
            raise InputError(f"clique_frac has no meaning for class {self.cls}")


def _clique_size(rng: random.Random, spec: RandomSpec, n: int) -> int:
    if n == 0:
        return 0
    if spec.clique_frac is not None:
        return max(1, round(spec.clique_frac * n)) if n else 0
    return rng.randint(1, n)


def _random_intervals(rng: random.Random, n: int, density: float) -> IntervalModel:
    # lengths up to density * span; roughly half the pairs overlap at 0.5
    span = max(2, 2 * n)
    reach = round(density * span)
    iv = []
    for _ in range(n):
        lo = rng.randint(1, span)
        iv.append((lo, lo + rng.randint(0, reach)))
    return IntervalModel.of(iv)


def _split(rng: random.Random, n: int, k: int, density: float) -> tuple[Graph, list[list[int]]]:
    nbrs = [[c for c in range(k) if rng.random() < density] for _ in range(n - k)]
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)]
    for t, nb in enumerate(nbrs):
        edges += [(c, k + t) for c in nb]
    return Graph(n, edges), nbrs


def _compositions(rng: random.Random, total: int, parts: int) -> list[int]:
    """``parts`` positive integers summing to ``total`` (parts <= total)."""
    cuts = sorted(rng.sample(range(1, total), parts - 1)) if parts > 1 else []
    bounds = [0] + cuts + [total]
    return [bounds[t + 1] - bounds[t] for t in range(parts)]


def _twin_inflate(k: int, groups: list[tuple[int, list[int]]]) -> Graph:
    """Clique ``0..k-1`` plus, per ``(size, nbrs)``, a clique of ``size``
    twins adjacent to ``nbrs``."""
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)]
    nxt = k
    for size, nb in groups:
        members = list(range(nxt, nxt + size))
        nxt += size
        edges += [(s, t) for i, s in enumerate(members) for t in members[i + 1:]]
        edges += [(c, s) for c in nb for s in members]
    return Graph(nxt, edges)


def _i_group_sizes(rng: random.Random, m: int) -> list[int]:
    if m == 0:
        return []
    return _compositions(rng, m, rng.randint(1, m))


def _chordal(rng: random.Random, n: int, density: float) -> Graph:
    # each new vertex attaches to a random subset of a known clique, so the
    # reverse insertion order is a perfect elimination ordering
    cliques: list[list[int]] = []
    edges = []
    for v in range(n):
        if cliques:
            base = rng.choice(cliques)
            nb = [u for u in base if rng.random() < max(density, 0.05)]
        else:
            nb = []
        edges += [(u, v) for u in nb]
        cliques.append(nb + [v])
    return Graph(n, edges)


def generate(spec: RandomSpec) -> tuple[Graph, IntervalModel | None]:
    """A graph of the requested class (and its interval model for ``interval``)."""
    rng = random.Random(spec.seed)
    n = spec.n
    if spec.cls == "interval":
        if n == 0:
            return Graph(0), None
        m = _random_intervals(rng, n, spec.density)
        return m.graph(), m
    if spec.cls == "arbitrary":
        return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < spec.density]), None
    if spec.cls == "chordal":
        return _chordal(rng, n, spec.density), None
    if spec.cls == "split":
        g, _ = _split(rng, n, _clique_size(rng, spec, n), spec.density)
        return g, None
    if n == 0:
        return Graph(0), None
    k = _clique_size(rng, spec, n)
    m = n - k
    sizes = _i_group_sizes(rng, m)
    if spec.cls == "split-twin":
        groups = [(s, [c for c in range(k) if rng.random() < spec.density]) for s in sizes]
    elif spec.cls == "threshold-twin":
        perm = list(range(k))
        rng.shuffle(perm)
        groups = [(s, sorted(perm[: rng.randint(0, k)])) for s in sizes]
    else:  # one-split-twin
        parts = rng.randint(1, k)
        cut = _compositions(rng, k, parts)
        c_classes, start = [], 0
        for size in cut:
            c_classes.append(list(range(start, start + size)))
            start += size
        groups = []
        for s in sizes:
            # a few groups see nothing of C
            pick = rng.randrange(len(c_classes) + 1) if rng.random() < 0.15 else rng.randrange(len(c_classes))
            groups.append((s, c_classes[pick] if pick < len(c_classes) else []))
    return _twin_inflate(k, groups), None


def random_ewcd(rng: random.Random, max_target: int = 14) -> WeightedSplitInstance:
    """Random weighted split instance whose gadget target has at most
    ``max_target`` vertices."""
    while True:
        k = rng.randint(1, 3)
        max_i = (max_target - k) // k
        i = rng.randint(0, max_i)
        nbrs = [sorted(c for c in range(k) if rng.random() < 0.6) for _ in range(i)]
        inst = WeightedSplitInstance.build(k, nbrs)
        if k + k * i <= max_target:
            return inst
