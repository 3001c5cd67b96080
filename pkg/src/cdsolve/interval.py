"""Interval models, clique paths and interval-graph recognition.

Clique indices are 1-based (``K_1 .. K_p``) so that ``p + 1`` can serve as an
"after the last clique" sentinel in the dynamic program.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .chordal import maximal_cliques, perfect_elimination_order
from .graph import Graph, InputError, bits, lowest, mask_of


class NotInterval(Exception):
    """The graph has no interval model.

    ``reason`` is ``"not-chordal"`` or ``"no-consecutive-ordering"``.
    """

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class IntervalModel:
    intervals: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for v, (lo, hi) in enumerate(self.intervals):
            if lo > hi:
                raise InputError(f"interval {v} has lo > hi: [{lo}, {hi}]")

    @classmethod
    def of(cls, intervals: Iterable[Sequence[int]]) -> "IntervalModel":
        return cls(tuple((int(lo), int(hi)) for lo, hi in intervals))

    @property
    def n(self) -> int:
        return len(self.intervals)

    def graph(self) -> Graph:
        iv = self.intervals
        edges = [
            (u, v)
            for u in range(len(iv))
            for v in range(u + 1, len(iv))
            if iv[u][0] <= iv[v][1] and iv[v][0] <= iv[u][1]
        ]
        return Graph(len(iv), edges)

    def _events(self) -> list[tuple[int, int, int]]:
        # closed intervals: at a shared coordinate, starts come before ends
        ev = []
        for v, (lo, hi) in enumerate(self.intervals):
            ev.append((lo, 0, v))
            ev.append((hi, 1, v))
        ev.sort()
        return ev

    def normalized(self) -> "IntervalModel":
        """Same intersection graph, endpoints relabelled to distinct ``1..2n``."""
        out = [[0, 0] for _ in self.intervals]
        for k, (_, kind, v) in enumerate(self._events(), start=1):
            out[v][kind] = k
        return IntervalModel.of(out)


@dataclass(frozen=True)
class CliquePath:
    """Ordered maximal cliques with per-vertex first/last clique indices."""

    n: int
    cliques: tuple[frozenset[int], ...]
    a: tuple[int, ...]
    b: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.cliques)

    @classmethod
    def from_cliques(cls, n: int, cliques: Sequence[Iterable[int]]) -> "CliquePath":
        cl = tuple(frozenset(c) for c in cliques)
        a = [0] * n
        b = [0] * n
        for t, k in enumerate(cl, start=1):
            for v in k:
                if a[v] == 0:
                    a[v] = t
                b[v] = t
        if n and min(a) == 0:
            raise InputError("clique path does not cover every vertex")
        return cls(n, cl, tuple(a), tuple(b))

    def adjacent(self, u: int, v: int) -> bool:
        return self.a[u] <= self.b[v] and self.a[v] <= self.b[u]

    def graph(self) -> Graph:
        return Graph(self.n, [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if self.adjacent(u, v)])

    def reversed(self) -> "CliquePath":
        return CliquePath.from_cliques(self.n, self.cliques[::-1])

    def problems(self, g: Graph) -> list[str]:
        """Invariant violations against host graph ``g`` (empty when valid)."""
        out = []
        if g.n != self.n:
            return [f"vertex count {self.n} != {g.n}"]
        if self.p > max(self.n, 0):
            out.append(f"{self.p} cliques for {self.n} vertices")
        for t, k in enumerate(self.cliques, start=1):
            m = mask_of(k)
            if not g.is_clique(m):
                out.append(f"K_{t} is not a clique")
            common = g.all_mask
            for v in k:
                common &= g.adj_mask(v)
            if common & ~m:
                out.append(f"K_{t} is not maximal")
        for v in range(self.n):
            for t in range(self.a[v], self.b[v] + 1):
                if v not in self.cliques[t - 1]:
                    out.append(f"vertex {v} cliques not consecutive")
                    break
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if self.adjacent(u, v) != g.has_edge(u, v):
                    out.append(f"adjacency of ({u}, {v}) disagrees with index ranges")
        return out


def clique_path_from_intervals(m: IntervalModel) -> CliquePath:
    """Sweep the endpoints; emit the active set wherever a start is followed by
    an end (each such point is a maximal clique)."""
    if m.n == 0:
        raise InputError("empty interval model")
    active: set[int] = set()
    grew = False
    cliques = []
    for _, kind, v in m._events():
        if kind == 0:
            active.add(v)
            grew = True
        else:
            if grew:
                cliques.append(frozenset(active))
                grew = False
            active.discard(v)
    return CliquePath.from_cliques(m.n, cliques)


def _order_component(g: Graph, cliques: list[int]) -> list[int] | None:
    """Consecutive ordering of the maximal cliques of one connected component,
    by depth-first placement with dead-end memoisation."""
    p = len(cliques)
    if p == 1:
        return cliques
    count = {}
    for c in cliques:
        for v in bits(c):
            count[v] = count.get(v, 0) + 1
    dead: set[tuple[int, int]] = set()
    order: list[int] = []
    full = (1 << p) - 1

    def place(placed: int, last: int, used: dict[int, int]) -> bool:
        if placed == full:
            return True
        key = (placed, last)
        if key in dead:
            return False
        prev = cliques[last]
        # vertices of the previous clique with cliques still unplaced must continue
        must = 0
        for v in bits(prev):
            if used[v] < count[v]:
                must |= 1 << v
        rest = full & ~placed
        while rest:
            t = lowest(rest)
            rest &= rest - 1
            c = cliques[t]
            if c & must != must or not c & prev:
                continue
            # a vertex seen earlier but absent from prev is closed
            if any(used.get(v, 0) and not prev >> v & 1 for v in bits(c)):
                continue
            for v in bits(c):
                used[v] = used.get(v, 0) + 1
            order.append(c)
            if place(placed | 1 << t, t, used):
                return True
            order.pop()
            for v in bits(c):
                used[v] -= 1
        dead.add(key)
        return False

    # a clique path can always be started at an end clique; try each
    for t in range(p):
        used = {v: 1 for v in bits(cliques[t])}
        order[:] = [cliques[t]]
        if place(1 << t, t, used):
            return list(order)
    return None


def recognize_interval(g: Graph) -> CliquePath:
    """Clique path of ``g`` or raise :class:`NotInterval`."""
    peo = perfect_elimination_order(g)
    if peo is None:
        raise NotInterval("not-chordal")
    all_cliques = maximal_cliques(g, peo)
    path: list[int] = []
    for comp in g.components():
        cl = sorted((c for c in all_cliques if c & comp), key=lambda c: bits(c))
        ordered = _order_component(g, cl)
        if ordered is None:
            raise NotInterval("no-consecutive-ordering")
        path.extend(ordered)
    return CliquePath.from_cliques(g.n, [bits(c) for c in path])


def _reachable(g: Graph, src: int, banned: int) -> int:
    seen = 1 << src
    frontier = seen
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.adj_mask(u)
        frontier = nxt & ~banned & ~seen
        seen |= frontier
    return seen


def asteroidal_triple(g: Graph) -> tuple[int, int, int] | None:
    """Three pairwise non-adjacent vertices, each pair joined by a path that
    avoids the closed neighbourhood of the third; ``None`` if there is none.

    A chordal graph is an interval graph exactly when it has no such triple.
    """
    closed = [g.adj_mask(v) | 1 << v for v in range(g.n)]
    # reach[z][x]: vertices reachable from x once N[z] is removed
    reach: dict[tuple[int, int], int] = {}

    def joined(x: int, y: int, z: int) -> bool:
        if (z, x) not in reach:
            reach[z, x] = _reachable(g, x, closed[z])
        return bool(reach[z, x] >> y & 1)

    for x in range(g.n):
        for y in bits(~closed[x] & g.all_mask & ~((1 << (x + 1)) - 1)):
            for z in bits(~closed[x] & ~closed[y] & g.all_mask & ~((1 << (y + 1)) - 1)):
                if joined(x, y, z) and joined(x, z, y) and joined(y, z, x):
                    return x, y, z
    return None


def b_sorted_order(cp: CliquePath) -> list[int]:
    """Vertices by nondecreasing ``b``; ties by ``a`` then vertex index."""
    return sorted(range(cp.n), key=lambda v: (cp.b[v], cp.a[v], v))


class Extrema(NamedTuple):
    a_min: int
    a_max: int
    b_min: int
    b_max: int
    a_min_vertex: int
    a_max_vertex: int
    b_min_vertex: int
    b_max_vertex: int


def range_extrema(cp: CliquePath, s: Iterable[int]) -> Extrema:
    """Extrema of ``a``/``b`` over ``s``; witnesses are the lowest-index achievers."""
    vs = sorted(set(s))
    if not vs:
        raise InputError("range_extrema of an empty set")
    a, b = cp.a, cp.b
    amin = min(vs, key=lambda v: (a[v], v))
    amax = min(vs, key=lambda v: (-a[v], v))
    bmin = min(vs, key=lambda v: (b[v], v))
    bmax = min(vs, key=lambda v: (-b[v], v))
    return Extrema(a[amin], a[amax], b[bmin], b[bmax], amin, amax, bmin, bmax)
