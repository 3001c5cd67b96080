import random

from hypothesis import strategies as st

from cdsolve import Graph, IntervalModel


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(all_pairs), max_size=len(all_pairs)))
    return Graph(n, [e for e, keep in zip(all_pairs, chosen) if keep])


@st.composite
def interval_models(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    span = 2 * n
    iv = []
    for _ in range(n):
        lo = draw(st.integers(1, span))
        iv.append((lo, lo + draw(st.integers(0, span))))
    return IntervalModel.of(iv)


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def graph(n, edges):
    """Graph from a space-separated list of two-digit edge codes, e.g. "01 12"."""
    return Graph(n, [(int(e[0]), int(e[1])) for e in edges.split()])
