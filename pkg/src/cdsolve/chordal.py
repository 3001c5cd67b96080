"""Lex-BFS, perfect elimination orderings and maximal cliques of chordal graphs."""
from __future__ import annotations

from .graph import Graph, InputError, bits, lowest


def lex_bfs(g: Graph, within: int | None = None) -> list[int]:
    """Lexicographic BFS visiting order (ties broken by lowest vertex index)."""
    left = g.all_mask if within is None else within
    # partition refinement over an ordered list of cells (masks)
    cells = [left] if left else []
    order = []
    while cells:
        head = cells[0]
        v = lowest(head)
        order.append(v)
        rest = head & ~(1 << v)
        if rest:
            cells[0] = rest
        else:
            cells.pop(0)
        nbr = g.adj_mask(v)
        refined = []
        for c in cells:
            inside = c & nbr
            outside = c & ~nbr
            if inside:
                refined.append(inside)
            if outside:
                refined.append(outside)
        cells = refined
    return order


def is_peo(g: Graph, order: list[int], within: int | None = None) -> bool:
    """True iff every vertex's later neighbours (in ``order``) form a clique."""
    pos = {v: k for k, v in enumerate(order)}
    later = g.all_mask if within is None else within
    for v in order:
        later &= ~(1 << v)
        ln = g.adj_mask(v) & later
        if not ln:
            continue
        first = min(bits(ln), key=pos.__getitem__)
        if (ln & ~(1 << first)) & ~g.adj_mask(first):
            return False
    return True


def perfect_elimination_order(g: Graph, within: int | None = None) -> list[int] | None:
    """A perfect elimination ordering of the induced subgraph, or ``None`` when
    it is not chordal."""
    order = lex_bfs(g, within)[::-1]
    return order if is_peo(g, order, within) else None


def is_chordal(g: Graph) -> bool:
    return perfect_elimination_order(g) is not None


def maximal_cliques(g: Graph, peo: list[int], within: int | None = None) -> list[int]:
    """Maximal cliques (masks) of a chordal (sub)graph from its PEO, ordered by
    first appearance in the PEO."""
    later = g.all_mask if within is None else within
    cands = []
    for v in peo:
        cands.append((g.adj_mask(v) & later) | 1 << v)
        later &= ~(1 << v)
    out = []
    for k, c in enumerate(cands):
        if any(k != t and c & d == c and (c != d or t < k) for t, d in enumerate(cands)):
            continue
        out.append(c)
    return out


def maximum_clique(g: Graph, within: int | None = None) -> list[int]:
    """A maximum clique of a chordal (sub)graph, lexicographically smallest
    among the maximum ones."""
    peo = perfect_elimination_order(g, within)
    if peo is None:
        raise InputError("maximum_clique requires a chordal graph")
    later = g.all_mask if within is None else within
    best: list[int] = []
    for v in peo:
        c = bits((g.adj_mask(v) & later) | 1 << v)
        later &= ~(1 << v)
        if len(c) > len(best) or (len(c) == len(best) and c < best):
            best = c
    return best


def chordless_cycle(g: Graph) -> list[int] | None:
    """Vertices of an induced cycle of length >= 4 in cyclic order, or ``None``
    when ``g`` is chordal."""
    for v in range(g.n):
        nb = bits(g.adj_mask(v))
        for k, x in enumerate(nb):
            for y in nb[k + 1:]:
                if g.has_edge(x, y):
                    continue
                # shortest x-y path avoiding the rest of N[v] is induced
                banned = (g.adj_mask(v) | 1 << v) & ~(1 << x | 1 << y)
                prev = {x: -1}
                frontier = [x]
                while frontier and y not in prev:
                    nxt = []
                    for u in frontier:
                        for w in bits(g.adj_mask(u) & ~banned):
                            if w not in prev:
                                prev[w] = u
                                nxt.append(w)
                    frontier = nxt
                if y in prev:
                    path = [y]
                    while path[-1] != x:
                        path.append(prev[path[-1]])
                    return [v] + path[::-1]
    return None
