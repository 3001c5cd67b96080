"""Undirected simple graphs over dense integer vertices, plus clusterings.

Vertex sets are carried internally as Python ``int`` bitmasks (bit ``v`` set
iff ``v`` is a member); the public API hands out ``frozenset`` values.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


class InputError(ValueError):
    """Raised when an operation receives input outside its contract."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> list[int]:
    """Members of a bitmask in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def pairs(k: int) -> int:
    """Number of edges in a clique on ``k`` vertices."""
    return k * (k - 1) // 2


class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "_adj", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self._adj = tuple(adj)
        self._m = sum(popcount(a) for a in adj) // 2

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        g = cls.__new__(cls)
        g.n = len(masks)
        g._adj = tuple(masks)
        g._m = sum(popcount(a) for a in masks) // 2
        return g

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, combinations(range(n), 2))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @property
    def edge_count(self) -> int:
        return self._m

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def adj_mask(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return popcount(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in bits(self._adj[u] >> (u + 1) << (u + 1))]

    def is_clique(self, vertices: Iterable[int] | int) -> bool:
        m = vertices if isinstance(vertices, int) else mask_of(vertices)
        rest = m
        while rest:
            v = lowest(rest)
            rest &= rest - 1
            if (m & ~(1 << v)) & ~self._adj[v]:
                return False
        return True

    def is_independent(self, vertices: Iterable[int] | int) -> bool:
        m = vertices if isinstance(vertices, int) else mask_of(vertices)
        return all(not (self._adj[v] & m) for v in bits(m))

    def edges_within(self, mask: int) -> int:
        return sum(popcount(self._adj[v] & mask) for v in bits(mask)) // 2

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return ``(H, back)`` where ``H`` is induced on ``vertices`` and ``back[k]``
        is the host vertex behind ``H``'s vertex ``k`` (sorted order)."""
        verts = sorted(set(vertices))
        for v in verts:
            if not 0 <= v < self.n:
                raise InputError(f"vertex {v} out of range for n={self.n}")
        where = {v: k for k, v in enumerate(verts)}
        masks = [mask_of(where[u] for u in bits(self._adj[v]) if u in where) for v in verts]
        return Graph.from_masks(masks), verts

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = list(self._adj)
        for u, v in edges:
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph.from_masks(adj)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which vertex ``v`` becomes ``perm[v]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        return Graph(self.n + other.n, self.edges() + [(u + shift, v + shift) for u, v in other.edges()])

    def components(self, within: int | None = None) -> list[int]:
        """Connected components (as masks) of the subgraph induced by ``within``,
        ordered by smallest member."""
        left = self.all_mask if within is None else within
        comps = []
        while left:
            frontier = left & -left
            comp = 0
            while frontier:
                comp |= frontier
                nxt = 0
                for v in bits(frontier):
                    nxt |= self._adj[v]
                frontier = nxt & left & ~comp
            comps.append(comp)
            left &= ~comp
        return comps

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range for n={g.n}")


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    return g.induced_subgraph(s)


def are_true_twins(g: Graph, u: int, v: int) -> bool:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise InputError("twin test needs two distinct vertices")
    return g.has_edge(u, v) and g.adj_mask(u) | 1 << u == g.adj_mask(v) | 1 << v


def are_false_twins(g: Graph, u: int, v: int) -> bool:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise InputError("twin test needs two distinct vertices")
    return not g.has_edge(u, v) and g.adj_mask(u) == g.adj_mask(v)


def true_twin_classes(g: Graph) -> list[frozenset[int]]:
    """Maximal true-twin classes, ordered by smallest member."""
    by_closed: dict[int, list[int]] = {}
    for v in range(g.n):
        by_closed.setdefault(g.adj_mask(v) | 1 << v, []).append(v)
    classes = [frozenset(vs) for vs in by_closed.values()]
    classes.sort(key=min)
    return classes


def is_cluster_graph(g: Graph) -> bool:
    return all(g.is_clique(c) for c in g.components())


# --- small induced patterns -------------------------------------------------

def _graph(n: int, edges: str) -> Graph:
    return Graph(n, [(int(e[0]), int(e[1])) for e in edges.split()])


# X and A-bar on vertices a=0, x1=1, x2=2, b=3, y1=4, y2=5.
PATTERNS: dict[str, Graph] = {
    "P3": Graph.path(3),
    "P4": Graph.path(4),
    "2K2": _graph(4, "01 23"),
    "C4": Graph.cycle(4),
    "C5": Graph.cycle(5),
    "P5": Graph.path(5),
    "2P3": _graph(6, "01 12 34 45"),
    "X": _graph(6, "12 45 01 34 31 32 03"),
    "A-bar": _graph(6, "12 45 01 34 31 32 03 04 05"),
}

MAX_PATTERN = 6


def _search_order(p: Graph) -> list[int]:
    # connected-first order so every step after a component's root is
    # restricted to neighbours of an already mapped vertex
    order: list[int] = []
    seen = 0
    for comp in p.components():
        frontier = [lowest(comp)]
        seen |= 1 << frontier[0]
        while frontier:
            v = frontier.pop(0)
            order.append(v)
            for u in bits(p.adj_mask(v) & ~seen):
                seen |= 1 << u
                frontier.append(u)
    return order


def find_induced(g: Graph, pattern: Graph) -> dict[int, int] | None:
    """Find an induced copy of ``pattern`` in ``g``.

    Returns a mapping pattern vertex -> host vertex, or ``None``.
    """
    k = pattern.n
    if k > MAX_PATTERN:
        raise InputError(f"patterns are limited to {MAX_PATTERN} vertices, got {k}")
    if k > g.n:
        return None
    if k == 0:
        return {}
    order = _search_order(pattern)
    # for each step: which earlier steps must be adjacent / non-adjacent
    need_adj = []
    anchor = []
    for step, pv in enumerate(order):
        earlier = order[:step]
        req = [s for s, q in enumerate(earlier) if pattern.has_edge(pv, q)]
        need_adj.append([pattern.has_edge(pv, q) for q in earlier])
        anchor.append(req[0] if req else -1)
    image = [0] * k
    adj = g._adj
    full = g.all_mask

    def extend(step: int, used: int) -> bool:
        if step == k:
            return True
        a = anchor[step]
        cand = (adj[image[a]] if a >= 0 else full) & ~used
        flags = need_adj[step]
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            row = adj[v]
            ok = True
            for s in range(step):
                if bool(row >> image[s] & 1) != flags[s]:
                    ok = False
                    break
            if ok:
                image[step] = v
                if extend(step + 1, used | low):
                    return True
        return False

    if not extend(0, 0):
        return None
    return {order[s]: image[s] for s in range(k)}


# --- clusterings ------------------------------------------------------------

@dataclass(frozen=True)
class Clustering:
    """A partition of the vertices into cliques.

    ``clusters`` is canonical: each cluster sorted, clusters ordered by their
    smallest vertex.
    """

    clusters: tuple[tuple[int, ...], ...]
    internal_edges: int
    deleted_edges: int

    @classmethod
    def from_clusters(cls, g: Graph, clusters: Iterable[Iterable[int]]) -> "Clustering":
        canon = tuple(sorted((tuple(sorted(c)) for c in clusters if c), key=lambda c: c[0]))
        report = _check(g, canon)
        if not report.valid:
            raise InputError(f"invalid clustering: {report.violation}")
        return cls(canon, report.internal_edges, report.deleted_edges)

    @property
    def value(self) -> int:
        return self.internal_edges

    def deleted_edge_list(self, g: Graph) -> list[tuple[int, int]]:
        where = {v: k for k, c in enumerate(self.clusters) for v in c}
        return [(u, v) for u, v in g.edges() if where[u] != where[v]]


@dataclass(frozen=True)
class ClusteringReport:
    valid: bool
    internal_edges: int
    deleted_edges: int
    violation: str | None = None


def _check(g: Graph, clusters: Sequence[Sequence[int]]) -> ClusteringReport:
    seen = 0
    internal = 0
    for c in clusters:
        if not c:
            return ClusteringReport(False, 0, 0, "empty cluster")
        for v in c:
            if not 0 <= v < g.n:
                return ClusteringReport(False, 0, 0, f"vertex {v} out of range")
        m = mask_of(c)
        if popcount(m) != len(c) or m & seen:
            dup = bits(m & seen) or [v for v in c if c.count(v) > 1]
            return ClusteringReport(False, 0, 0, f"vertex {dup[0]} appears more than once")
        if not g.is_clique(m):
            return ClusteringReport(False, 0, 0, f"cluster {sorted(c)} is not a clique")
        seen |= m
        internal += pairs(len(c))
    if seen != g.all_mask:
        missing = bits(g.all_mask & ~seen)
        return ClusteringReport(False, 0, 0, f"vertex {missing[0]} not covered")
    return ClusteringReport(True, internal, g.edge_count - internal)


def verify_clustering(g: Graph, cl: Clustering | Sequence[Sequence[int]]) -> ClusteringReport:
    """Check partition, cliqueness and the edge-count identity.

    Violations are reported, never raised.
    """
    clusters = cl.clusters if isinstance(cl, Clustering) else [list(c) for c in cl]
    report = _check(g, clusters)
    if report.valid and isinstance(cl, Clustering):
        if (cl.internal_edges, cl.deleted_edges) != (report.internal_edges, report.deleted_edges):
            return ClusteringReport(
                False, report.internal_edges, report.deleted_edges,
                f"claimed counts ({cl.internal_edges}, {cl.deleted_edges}) != "
                f"recomputed ({report.internal_edges}, {report.deleted_edges})",
            )
    return report
