"""Exponential-time exact solvers used as ground truth."""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable

from .graph import Clustering, ClusteringReport, Graph, InputError, bits, lowest, mask_of, pairs, popcount, verify_clustering

__all__ = ["exact_cd", "exact_cd_twins_forced", "exact_ewcd", "verify_clustering", "ClusteringReport",
           "WeightedSplitInstance", "ORACLE_LIMIT"]

ORACLE_LIMIT = int(os.environ.get("CDSOLVE_ORACLE_LIMIT", "16"))


def _cliques_through(g: Graph, v: int, pool: int):
    """All cliques containing ``v`` with other members in ``pool`` (masks),
    largest first."""
    out = []

    def grow(clique: int, cand: int):
        out.append(clique)
        while cand:
            u = lowest(cand)
            cand &= cand - 1
            grow(clique | 1 << u, cand & g.adj_mask(u))

    grow(1 << v, pool & g.adj_mask(v))
    out.sort(key=lambda c: (-popcount(c), bits(c)))
    return out


class _PartitionSearch:
    """Best clique partition of a vertex set under an additive cluster score.

    ``f(S) = max over cliques K containing min(S), K within S, of
    score(K) + f(S - K)``, memoised on ``S`` and split over components;
    branches that cannot beat the incumbent under ``bound`` are skipped.
    """

    def __init__(self, g: Graph, score: Callable[[int], int], bound: Callable[[int], int]):
        self.g = g
        self.score = score
        self.bound = bound
        self.memo: dict[int, tuple[int, tuple[int, ...]]] = {}

    def best(self, S: int) -> tuple[int, tuple[int, ...]]:
        if S == 0:
            return 0, ()
        hit = self.memo.get(S)
        if hit is not None:
            return hit
        comps = self.g.components(S)
        if len(comps) > 1:
            total, parts = 0, ()
            for c in comps:
                val, cl = self.best(c)
                total += val
                parts += cl
            res = (total, parts)
        elif self.g.is_clique(S):
            res = (self.score(S), (S,))
        else:
            v = lowest(S)
            best_val, best_cl = -1, ()
            for K in _cliques_through(self.g, v, S & ~(1 << v)):
                rest = S & ~K
                head = self.score(K)
                if head + self.bound(rest) <= best_val:
                    continue
                val, cl = self.best(rest)
                if head + val > best_val:
                    best_val, best_cl = head + val, (K,) + cl
            res = (best_val, best_cl)
        self.memo[S] = res
        return res


def _guard(n: int, limit: int | None) -> None:
    cap = ORACLE_LIMIT if limit is None else limit
    if n > cap:
        raise InputError(f"oracle refuses n={n} (limit {cap}); raise the limit explicitly")


def exact_cd(g: Graph, limit: int | None = None) -> tuple[int, Clustering]:
    """Maximum number of internal edges over all clique partitions of ``g``."""
    _guard(g.n, limit)

    def bound(S: int) -> int:
        return sum(min(pairs(popcount(c)), g.edges_within(c)) for c in g.components(S))

    val, parts = _PartitionSearch(g, lambda K: pairs(popcount(K)), bound).best(g.all_mask)
    return val, Clustering.from_clusters(g, [bits(K) for K in parts])


@dataclass(frozen=True)
class WeightedSplitInstance:
    """Split graph with clique edges weighing 1 and every edge at an
    independent-side vertex weighing ``q = |C|``."""

    g: Graph
    C: frozenset[int]
    I: frozenset[int]

    def __post_init__(self):
        if self.C | self.I != frozenset(range(self.g.n)) or self.C & self.I:
            raise InputError("C and I must partition the vertices")
        if not self.g.is_clique(mask_of(self.C)):
            raise InputError("C does not induce a clique")
        if not self.g.is_independent(mask_of(self.I)):
            raise InputError("I is not independent")

    @classmethod
    def build(cls, C_size: int, neighborhoods: list[list[int]]) -> "WeightedSplitInstance":
        """Clique ``0..C_size-1`` plus one independent vertex per neighbourhood."""
        edges = [(u, v) for u in range(C_size) for v in range(u + 1, C_size)]
        for k, nb in enumerate(neighborhoods):
            edges += [(c, C_size + k) for c in nb]
        g = Graph(C_size + len(neighborhoods), edges)
        return cls(g, frozenset(range(C_size)), frozenset(range(C_size, g.n)))

    @property
    def q(self) -> int:
        return len(self.C)

    def weight(self, u: int, v: int) -> int:
        return self.q if u in self.I or v in self.I else 1

    def cluster_weight(self, K: int) -> int:
        in_c = popcount(K & mask_of(self.C))
        in_i = popcount(K) - in_c
        return pairs(in_c) + self.q * in_c * in_i

    def total_weight(self) -> int:
        return sum(self.weight(u, v) for u, v in self.g.edges())


def exact_ewcd(inst: WeightedSplitInstance, limit: int | None = None) -> int:
    """Maximum total internal weight over all clique partitions."""
    g = inst.g
    _guard(g.n, limit)
    cmask = mask_of(inst.C)

    def bound(S: int) -> int:
        total = 0
        for c in g.components(S):
            k = popcount(c & cmask)
            total += pairs(k) + inst.q * k * popcount(c & ~cmask)
        return total

    val, _ = _PartitionSearch(g, inst.cluster_weight, bound).best(g.all_mask)
    return val


def exact_cd_twins_forced(g: Graph, limit: int | None = None) -> int:
    """Optimum over clique partitions that keep every true-twin class whole."""
    from .graph import true_twin_classes

    _guard(g.n, limit)
    classes = true_twin_classes(g)
    reps = [min(c) for c in classes]
    q, _ = g.induced_subgraph(reps)
    size = [len(c) for c in classes]

    def weight(K: int) -> int:
        return pairs(sum(size[k] for k in bits(K)))

    def bound(S: int) -> int:
        return sum(weight(c) for c in q.components(S))

    val, _ = _PartitionSearch(q, weight, bound).best(q.all_mask)
    return val
