"""Split-like graph classes: recognizers and polynomial Cluster Deletion solvers.

A split-twin graph has a clique side ``C`` and a side ``I`` whose connected
components are cliques of true twins. 1-split-twin graphs additionally have
I-components with pairwise disjoint-or-equal neighbourhoods in ``C``;
threshold-twin graphs have them nested.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .chordal import maximal_cliques, maximum_clique, perfect_elimination_order
from .graph import (
    PATTERNS, Clustering, Graph, InputError, bits, find_induced, lowest, mask_of, pairs, popcount,
    true_twin_classes,
)


class Witness(NamedTuple):
    """A named forbidden induced subgraph and its mapping into the host."""

    pattern: str
    mapping: dict[int, int]


class NotSplit(Exception):
    def __init__(self, witness: Witness):
        super().__init__(f"not split: induced {witness.pattern} at {witness.mapping}")
        self.witness = witness


@dataclass(frozen=True)
class SplitPartition:
    C: frozenset[int]
    I: frozenset[int]


@dataclass(frozen=True)
class SplitTwinPartition:
    C: frozenset[int]
    I: frozenset[int]
    i_classes: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class OneSplitTwinStructure:
    """True-twin classes of ``C`` with the I-components attached to each
    (largest first), plus I-components that see nothing of ``C``."""

    C: frozenset[int]
    I: frozenset[int]
    c_classes: tuple[frozenset[int], ...]
    i_groups: tuple[tuple[frozenset[int], ...], ...]
    isolated: tuple[frozenset[int], ...]


# --- split graphs -----------------------------------------------------------

def _split_by_degrees(g: Graph, within: int | None = None) -> int | None:
    """Clique side of a split partition via the degree-sequence test, or None."""
    verts = bits(g.all_mask if within is None else within)
    scope = mask_of(verts)
    deg = {v: popcount(g.adj_mask(v) & scope) for v in verts}
    ranked = sorted(verts, key=lambda v: (-deg[v], v))
    m = 0
    for k, v in enumerate(ranked, start=1):
        if deg[v] >= k - 1:
            m = k
    head = sum(deg[v] for v in ranked[:m])
    tail = sum(deg[v] for v in ranked[m:])
    if head != m * (m - 1) + tail:
        return None
    return mask_of(ranked[:m])


def _maximize(g: Graph, C: int, scope: int) -> int:
    for v in bits(scope & ~C):
        if g.adj_mask(v) & C == C:
            C |= 1 << v
    return C


def split_partition(g: Graph) -> SplitPartition:
    """Split partition with ``C`` a maximal clique; raises :class:`NotSplit`
    carrying a 2K2, C4 or C5 witness otherwise."""
    C = _split_by_degrees(g)
    if C is None:
        for name in ("2K2", "C4", "C5"):
            hit = find_induced(g, PATTERNS[name])
            if hit is not None:
                raise NotSplit(Witness(name, hit))
        raise AssertionError("degree test rejected a (2K2, C4, C5)-free graph")
    C = _maximize(g, C, g.all_mask)
    return SplitPartition(frozenset(bits(C)), frozenset(bits(g.all_mask & ~C)))


def _all_split_sides(g: Graph, within: int) -> list[int]:
    """Every clique side ``C`` of a split partition of ``G[within]``, maximal
    ones first."""
    if not within:
        return [0]
    peo = perfect_elimination_order(g, within)
    if peo is None:
        return []
    out: list[int] = []
    for K in maximal_cliques(g, peo, within):
        rest = within & ~K
        if not g.is_independent(rest):
            continue
        out.append(K)
    for K in list(out):
        rest = within & ~K
        for x in bits(K):
            if not g.adj_mask(x) & rest:
                out.append(K & ~(1 << x))
    seen = set()
    uniq = []
    for c in out:
        if c not in seen:
            seen.add(c)
            uniq.append(c)
    return uniq


def solve_split_cd(g: Graph, part: SplitPartition | None = None) -> Clustering:
    """Optimal clustering of a split graph (maximal clique side)."""
    part = part or split_partition(g)
    C = mask_of(part.C)
    I = mask_of(part.I)
    if not g.is_clique(C) or not g.is_independent(I) or C | I != g.all_mask or C & I:
        raise InputError("not a split partition")
    if _maximize(g, C, g.all_mask) != C:
        raise InputError("clique side is not maximal")
    for w in bits(C):
        others = bits(g.adj_mask(w) & I)
        if not others:
            continue
        for v in bits(I):
            if g.adj_mask(v) == C & ~(1 << w):
                v2 = others[0]
                rest = [[u] for u in bits(I) if u not in (v, v2)]
                return Clustering.from_clusters(g, [bits(C & ~(1 << w)) + [v], [w, v2]] + rest)
    return Clustering.from_clusters(g, [bits(C)] + [[u] for u in bits(I)])


# --- split-twin -------------------------------------------------------------

def _quotient(g: Graph) -> tuple[list[frozenset[int]], int]:
    """True-twin classes and the mask of their representatives (minimum)."""
    classes = true_twin_classes(g)
    return classes, mask_of(min(c) for c in classes)


def _expand(g: Graph, classes: list[frozenset[int]], C_reps: int) -> SplitTwinPartition:
    C: set[int] = set()
    i_classes = []
    for cls in classes:
        if C_reps >> min(cls) & 1:
            C |= cls
        else:
            i_classes.append(cls)
    I = frozenset(v for c in i_classes for v in c)
    return SplitTwinPartition(frozenset(C), I, tuple(i_classes))


def _split_twin_candidates(g: Graph):
    classes, reps = _quotient(g)
    for C_reps in _all_split_sides(g, reps):
        yield _expand(g, classes, C_reps)


def recognize_split_twin(g: Graph) -> SplitTwinPartition | None:
    """Contract true-twin classes, split-test the quotient, expand back."""
    classes, reps = _quotient(g)
    C_reps = _split_by_degrees(g, reps)
    if C_reps is None:
        return None
    return _expand(g, classes, _maximize(g, C_reps, reps))


FORBIDDEN_SPLIT_TWIN = ("C4", "C5", "P5", "2P3", "A-bar", "X")


def forbidden_check_split_twin(g: Graph) -> Witness | None:
    """First forbidden split-twin pattern found, or ``None`` when clean."""
    for name in FORBIDDEN_SPLIT_TWIN:
        hit = find_induced(g, PATTERNS[name])
        if hit is not None:
            return Witness(name, hit)
    return None


def _nc(g: Graph, comp: frozenset[int], C: int) -> int:
    return g.adj_mask(min(comp)) & C


def _one_split_twin_ok(g: Graph, part: SplitTwinPartition) -> bool:
    C = mask_of(part.C)
    seen = [_nc(g, c, C) for c in part.i_classes]
    return all(x & y == 0 or x == y for k, x in enumerate(seen) for y in seen[k + 1:])


def _one_split_twin_structure(g: Graph, part: SplitTwinPartition) -> OneSplitTwinStructure:
    C = mask_of(part.C)
    # twin classes of C in G are the classes of equal I-neighbourhood
    by_nbr: dict[int, list[int]] = {}
    for v in bits(C):
        by_nbr.setdefault(g.adj_mask(v) & ~C, []).append(v)
    c_classes = sorted((frozenset(vs) for vs in by_nbr.values()), key=min)
    where = {v: k for k, cl in enumerate(c_classes) for v in cl}
    groups: list[list[frozenset[int]]] = [[] for _ in c_classes]
    isolated = []
    for comp in part.i_classes:
        nc = _nc(g, comp, C)
        if not nc:
            isolated.append(comp)
            continue
        k = where[lowest(nc)]
        if nc != mask_of(c_classes[k]):
            raise InputError(f"I-class {sorted(comp)} does not see exactly one C-class")
        groups[k].append(comp)
    for grp in groups:
        grp.sort(key=lambda c: (-len(c), min(c)))
    return OneSplitTwinStructure(
        part.C, part.I, tuple(c_classes), tuple(tuple(grp) for grp in groups), tuple(isolated)
    )


def recognize_one_split_twin(g: Graph) -> OneSplitTwinStructure | None:
    for part in _split_twin_candidates(g):
        if _one_split_twin_ok(g, part):
            return _one_split_twin_structure(g, part)
    return None


def matching_value(sizes: list[tuple[int, int]], matched: set[int]) -> int:
    """Objective for a set of matched ``(|C_i|, |I_i|)`` pairs."""
    total = sum(pairs(c + s) for k, (c, s) in enumerate(sizes) if k in matched)
    total += pairs(sum(c for k, (c, _) in enumerate(sizes) if k not in matched))
    total += sum(pairs(s) for k, (_, s) in enumerate(sizes) if k not in matched)
    return total


def best_prefix_matching(sizes: list[tuple[int, int]]) -> tuple[int, list[int]]:
    """Best matched set among prefixes of the pairs sorted by ``|C_i|+|I_i|``
    (descending, stable). Returns ``(value, matched indices)``."""
    ranked = sorted(range(len(sizes)), key=lambda k: -(sizes[k][0] + sizes[k][1]))
    suffix_c = [0] * (len(ranked) + 1)
    suffix_i = [0] * (len(ranked) + 1)
    for t in range(len(ranked) - 1, -1, -1):
        c, s = sizes[ranked[t]]
        suffix_c[t] = suffix_c[t + 1] + c
        suffix_i[t] = suffix_i[t + 1] + pairs(s)
    best, best_k, head = -1, 0, 0
    for k in range(len(ranked) + 1):
        val = head + pairs(suffix_c[k]) + suffix_i[k]
        if val > best:
            best, best_k = val, k
        if k < len(ranked):
            c, s = sizes[ranked[k]]
            head += pairs(c + s)
    return best, ranked[:best_k]


def solve_one_split_twin_cd(g: Graph, s: OneSplitTwinStructure | None = None) -> Clustering:
    if s is None:
        s = recognize_one_split_twin(g)
        if s is None:
            raise InputError("graph is not 1-split-twin")
    clusters = [sorted(c) for c in s.isolated]
    sizes = []
    for cls, grp in zip(s.c_classes, s.i_groups):
        sizes.append((len(cls), len(grp[0]) if grp else 0))
        clusters += [sorted(c) for c in grp[1:]]
    _, matched = best_prefix_matching(sizes)
    merged: list[int] = []
    for k, (cls, grp) in enumerate(zip(s.c_classes, s.i_groups)):
        top = sorted(grp[0]) if grp else []
        if k in matched:
            clusters.append(sorted(cls) + top)
        else:
            merged += sorted(cls)
            if top:
                clusters.append(top)
    if merged:
        clusters.append(merged)
    return Clustering.from_clusters(g, clusters)


# --- threshold-twin and P4-free ---------------------------------------------

def recognize_threshold_twin(g: Graph) -> list[frozenset[int]] | None:
    """I-classes ordered so their C-neighbourhoods form an inclusion chain."""
    for part in _split_twin_candidates(g):
        C = mask_of(part.C)
        ranked = sorted(part.i_classes, key=lambda c: (popcount(_nc(g, c, C)), min(c)))
        nbrs = [_nc(g, c, C) for c in ranked]
        if all(x & y == x for x, y in zip(nbrs, nbrs[1:])):
            return ranked
    return None


def is_p4_free(g: Graph) -> bool:
    return find_induced(g, PATTERNS["P4"]) is None


def _peel_max_cliques(g: Graph) -> Clustering:
    clusters = []
    left = g.all_mask
    while left:
        K = maximum_clique(g, left)
        clusters.append(K)
        left &= ~mask_of(K)
    return Clustering.from_clusters(g, clusters)


def greedy_max_clique_clustering(g: Graph) -> Clustering:
    """Repeatedly remove a maximum clique (lexicographically smallest)."""
    if perfect_elimination_order(g) is None:
        raise InputError("greedy max-clique clustering needs a chordal graph")
    return _peel_max_cliques(g)


def solve_threshold_twin_cd(g: Graph) -> Clustering:
    """Threshold-twin graphs are P4-free, where peeling maximum cliques is optimal."""
    if recognize_threshold_twin(g) is None:
        raise InputError("graph is not threshold-twin")
    return _peel_max_cliques(g)
