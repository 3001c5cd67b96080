"""Exact Cluster Deletion on interval graphs by dynamic programming over a
clique path.

Notation follows the clique path: ``a(v)``/``b(v)`` are the first/last clique
indices of ``v`` (1-based), ``p`` the number of cliques.

For vertices ``vi``, ``vj`` with ``b(vi) <= b(vj)`` the *guarded set* is
``V(i, j) = {v : min(a(vi), a(vj)) <= a(v) and b(v) <= b(vj)}``.
A table cell ``(i, j, l, r)`` holds the best number of internal edges of
``G[V(i, j)] - (C(l, r) | B_j(r))`` where ``C(l, r)`` is an outer cluster that
is already fixed and ``B_j(r)`` the part of ``vj``'s nested neighbours lying
strictly right of clique ``r``. The unrestricted optimum is the cell with the
sentinel pair ``(p + 1, p + 1)``.

Each cell picks the cluster of ``vj`` among ``C(l', r')`` for admissible pairs
and splits the remainder into a left and a right guarded subproblem, which
are looked up by their ``a``-minimum and ``b``-maximum vertices.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .graph import Clustering, Graph, InputError, bits, lowest, mask_of, pairs, popcount
from .interval import CliquePath, b_sorted_order


class DPInvariantError(AssertionError):
    """An internal DP invariant failed; ``key`` names the offending cell."""

    def __init__(self, message: str, key=None):
        super().__init__(f"{message} (cell {key})" if key is not None else message)
        self.key = key


class PairIndices(NamedTuple):
    ell: int
    r: int


Key = tuple[int, int, int, int]


@dataclass
class DPCell:
    value: int
    choice: PairIndices | None


class IntervalDP:
    """Lazily filled memo table for one clique path."""

    def __init__(self, cp: CliquePath, check: bool = False):
        self.cp = cp
        self.n = n = cp.n
        self.p = p = cp.p
        self.a = cp.a
        self.b = cp.b
        self.check = check
        self.order = b_sorted_order(cp)
        self.K = [0] + [mask_of(k) for k in cp.cliques] + [0]
        # a_ge[t]: vertices with a(v) >= t, for t in 0..p+2
        self.a_ge = [0] * (p + 3)
        # b_le[t]: vertices with b(v) <= t, for t in 0..p+1
        self.b_le = [0] * (p + 2)
        for v in range(n):
            for t in range(0, self.a[v] + 1):
                self.a_ge[t] |= 1 << v
            for t in range(self.b[v], p + 2):
                self.b_le[t] |= 1 << v
        self._by_a = sorted(range(n), key=lambda v: (self.a[v], v))
        self._by_b_desc = sorted(range(n), key=lambda v: (-self.b[v], v))
        self.table: dict[Key, DPCell] = {}
        self._rep: dict[int, tuple[int, int]] = {}

    # --- set machinery --------------------------------------------------

    def members(self, i: int, j: int) -> int:
        if self.b[i] > self.b[j]:
            raise InputError(f"guarded set needs b(v{i}) <= b(v{j})")
        return self.a_ge[min(self.a[i], self.a[j])] & self.b_le[self.b[j]]

    def nested(self, V: int, j: int) -> int:
        """``M(j)``: neighbours of ``vj`` in ``V`` inside ``vj``'s range."""
        return V & self.a_ge[self.a[j]] & self.b_le[self.b[j]] & ~(1 << j)

    def partial(self, V: int, j: int) -> int:
        """``U(j)``: neighbours of ``vj`` in ``V`` overlapping it from the left."""
        a_j = self.a[j]
        return V & ~self.a_ge[a_j] & self.b_le[self.b[j]] & ~self.b_le[a_j - 1]

    def right_part(self, V: int, j: int, t: int) -> int:
        """``B_j(t)``; empty for ``t >= b(vj)``."""
        if t >= self.b[j]:
            return 0
        return self.nested(V, j) & self.a_ge[max(t + 1, self.a[j])]

    def slice(self, V: int, ell: int, r: int) -> int:
        """``K_r`` members of ``V`` with ``a >= ell``; this is ``C(ell, r)``."""
        if r > self.p or r < 1:
            return 0
        return self.K[r] & V & self.a_ge[max(ell, 0)]

    def ell_r(self, V: int, ell: int, r: int) -> int:
        s = self.slice(V, ell, r)
        if not s:
            return ell
        return min(self.a[v] for v in bits(s))

    def crosses(self, V: int, v: int, ell: int, r: int) -> bool:
        return self.a[v] < self.ell_r(V, ell, r) and r <= self.b[v]

    def is_bounding(self, V: int, j: int, ell: int, r: int) -> bool:
        return self.b[j] < r or (ell <= r and self.crosses(V, j, ell, r))

    def effective(self, key: Key) -> int:
        i, j, ell, r = key
        V = self.members(i, j)
        return V & ~self.slice(V, ell, r) & ~self.right_part(V, j, r)

    def representatives(self, S: int) -> tuple[int, int]:
        """Vertices achieving ``a``-min and ``b``-max of ``S`` (lowest index)."""
        hit = self._rep.get(S)
        if hit is None:
            i = next(v for v in self._by_a if S >> v & 1)
            j = next(v for v in self._by_b_desc if S >> v & 1)
            hit = self._rep[S] = (i, j)
        return hit

    def choices(self, i: int, j: int, ell: int, r: int):
        """Admissible ``(l', r')`` for ``vj`` below the bound ``(ell, r)``, with the
        candidate cluster each defines. Order: increasing ``r'``, decreasing
        ``l'``; a pair repeating the previous cluster for the same ``r'`` is
        dropped, so each kept ``l'`` equals its own ``l_r``."""
        V = self.members(i, j)
        a_j, b_j = self.a[j], self.b[j]
        a_ij = min(self.a[i], a_j)
        top = b_j if b_j < r else min(b_j, ell - 1)
        for rr in range(a_j, top + 1):
            prev = -1
            for ll in range(a_j, a_ij - 1, -1):
                c = self.slice(V, ll, rr)
                if c != prev:
                    prev = c
                    yield PairIndices(ll, rr), c

    # --- recursion ------------------------------------------------------

    def key_for(self, S: int, ell: int, r: int) -> Key:
        i, j = self.representatives(S)
        cap = self.p + 1
        return (i, j, min(max(ell, 1), cap), min(max(r, 1), cap))

    def lookup(self, S: int, ell: int, r: int) -> int:
        if S & (S - 1) == 0:
            return 0
        key = self.key_for(S, ell, r)
        if self.check and self.effective(key) != S:
            raise DPInvariantError(
                f"subproblem {bits(S)} resolves to guarded set {bits(self.effective(key))}", key
            )
        return self.solve(key)

    def solve(self, key: Key) -> int:
        cell = self.table.get(key)
        if cell is not None:
            return cell.value
        i, j, ell, r = key
        V = self.members(i, j)
        if V & (V - 1) == 0:
            self.table[key] = DPCell(0, None)
            return 0
        if self.check and not self.is_bounding(V, j, ell, r):
            raise DPInvariantError(f"({ell}, {r}) is not a bounding pair for v{j}", key)
        outer = self.slice(V, ell, r)
        drop_r = self.right_part(V, j, r)
        best = -1
        best_choice = None
        for pair, c in self.choices(i, j, ell, r):
            drop = self.right_part(V, j, pair.r)
            left = V & ~c & ~drop
            right = drop & ~outer & ~drop_r
            if self.check and c & (outer | drop_r):
                raise DPInvariantError(f"candidate {bits(c)} meets removed vertices", key)
            val = self.lookup(left, pair.ell, pair.r) + pairs(popcount(c)) + self.lookup(right, ell, r)
            if val > best:
                best = val
                best_choice = pair
        if best_choice is None:
            raise DPInvariantError("no admissible pair", key)
        self.table[key] = DPCell(best, best_choice)
        return best

    def top_key(self) -> Key | None:
        if self.n == 0:
            return None
        return self.key_for((1 << self.n) - 1, self.p + 1, self.p + 1)

    def run(self) -> int:
        if self.n < 2:
            return 0
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 20 * self.n + 1000))
        try:
            return self.lookup((1 << self.n) - 1, self.p + 1, self.p + 1)
        finally:
            sys.setrecursionlimit(old)

    def reconstruct(self, g: Graph | None = None) -> Clustering:
        """Follow the stored choices from the top cell."""
        g = g if g is not None else self.cp.graph()
        clusters = []
        covered = 0
        stack = []
        if self.n >= 2:
            stack.append(((1 << self.n) - 1, self.p + 1, self.p + 1))
        while stack:
            S, ell, r = stack.pop()
            if S & (S - 1) == 0:
                continue
            key = self.key_for(S, ell, r)
            cell = self.table.get(key)
            if cell is None:
                raise DPInvariantError("missing cell on the choice chain", key)
            if cell.choice is None:
                continue
            i, j, _, _ = key
            V = self.members(i, j)
            pair = cell.choice
            c = self.slice(V, pair.ell, pair.r)
            if not c >> j & 1 or c & covered:
                raise DPInvariantError("corrupted choice", key)
            drop = self.right_part(V, j, pair.r)
            clusters.append(bits(c))
            covered |= c
            stack.append((drop & ~self.slice(V, ell, r) & ~self.right_part(V, j, r), ell, r))
            stack.append((V & ~c & ~drop, pair.ell, pair.r))
        for v in bits(((1 << self.n) - 1) & ~covered):
            clusters.append([v])
        cl = Clustering.from_clusters(g, clusters)
        expect = self.table[self.top_key()].value if self.n >= 2 else 0
        if cl.internal_edges != expect:
            raise DPInvariantError(
                f"reconstruction has {cl.internal_edges} internal edges, table says {expect}",
                self.top_key(),
            )
        return cl


def solve_interval_cd(cp: CliquePath, g: Graph | None = None, check: bool = False,
                      ) -> tuple[int, Clustering]:
    """Optimal internal-edge count and a clustering achieving it."""
    dp = IntervalDP(cp, check=check)
    value = dp.run()
    return value, dp.reconstruct(g)


# --- per-operation views ----------------------------------------------------

@lru_cache(maxsize=64)
def _engine(cp: CliquePath) -> IntervalDP:
    return IntervalDP(cp)


@dataclass(frozen=True)
class GuardedContext:
    cp: CliquePath = field(repr=False)
    i: int
    j: int
    members: frozenset[int]
    a_ij: int

    @property
    def mask(self) -> int:
        return mask_of(self.members)


def guarded_context(cp: CliquePath, i: int, j: int) -> GuardedContext:
    dp = _engine(cp)
    V = dp.members(i, j)
    return GuardedContext(cp, i, j, frozenset(bits(V)), min(cp.a[i], cp.a[j]))


def partition_UM(ctx: GuardedContext) -> tuple[frozenset[int], frozenset[int]]:
    dp = _engine(ctx.cp)
    return frozenset(bits(dp.partial(ctx.mask, ctx.j))), frozenset(bits(dp.nested(ctx.mask, ctx.j)))


def B_set(ctx: GuardedContext, t: int) -> frozenset[int]:
    return frozenset(bits(_engine(ctx.cp).right_part(ctx.mask, ctx.j, t)))


def candidate_cluster(ctx: GuardedContext, pair: PairIndices) -> tuple[frozenset[int], int]:
    """``(C(l, r), l_r)``; an empty slice gives ``l_r = l`` and ``C = {}``."""
    dp = _engine(ctx.cp)
    ell, r = pair
    return frozenset(bits(dp.slice(ctx.mask, ell, r))), dp.ell_r(ctx.mask, ell, r)


def crosses(ctx: GuardedContext, v: int, pair: PairIndices) -> bool:
    return _engine(ctx.cp).crosses(ctx.mask, v, pair[0], pair[1])


def enumerate_choices(ctx: GuardedContext, bound: PairIndices) -> list[PairIndices]:
    dp = _engine(ctx.cp)
    ell, r = bound
    if not dp.is_bounding(ctx.mask, ctx.j, ell, r):
        raise InputError(f"{tuple(bound)} is not a bounding pair for v{ctx.j}")
    return [pair for pair, _ in dp.choices(ctx.i, ctx.j, ell, r)]
