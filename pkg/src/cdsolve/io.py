"""Graph and clustering documents.

Graphs are read either as edge-list text (``n m`` header, then one ``u v``
pair per line, 0-based; blank lines and ``#`` comments ignored) or as JSON
``{"n": int, "edges": [[u, v], ...], "intervals": [[lo, hi], ...]}`` where
``intervals`` is optional. Output is canonical: edges as ``u < v``, sorted.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .graph import Clustering, Graph, InputError
from .interval import IntervalModel


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass(frozen=True)
class GraphDocument:
    graph: Graph
    intervals: IntervalModel | None = None
    clique: tuple[int, ...] | None = None


def _check_edges(n: int, edges: list[tuple[int, int, int | None]]) -> list[tuple[int, int]]:
    seen: dict[tuple[int, int], int | None] = {}
    out = []
    for u, v, line in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u}, {v}) out of range for n={n}", line)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line)
        key = (min(u, v), max(u, v))
        if key in seen:
            where = f" (first on line {seen[key]})" if seen[key] is not None else ""
            raise ParseError(f"duplicate edge {key}{where}", line)
        seen[key] = line
        out.append(key)
    return out


def _parse_edge_list(text: str) -> GraphDocument:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {raw.strip()!r}", lineno)
        try:
            x, y = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"expected two integers, got {raw.strip()!r}", lineno) from None
        if header is None:
            if x < 0 or y < 0:
                raise ParseError("header counts must be non-negative", lineno)
            header = (x, y, lineno)
            continue
        edges.append((x, y, lineno))
    if header is None:
        raise ParseError("missing 'n m' header")
    n, m, hline = header
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}", hline)
    return GraphDocument(Graph(n, _check_edges(n, edges)))


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{what} must be an integer, got {x!r}")
    return x


def _parse_json(text: str) -> GraphDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg} (column {e.colno})", e.lineno) from None
    if not isinstance(obj, dict):
        raise ParseError("graph document must be a JSON object")
    model = None
    if "intervals" in obj:
        raw = obj["intervals"]
        if not isinstance(raw, list) or any(not isinstance(p, list) or len(p) != 2 for p in raw):
            raise ParseError("'intervals' must be a list of [lo, hi] pairs")
        model = IntervalModel.of([(_int(lo, "interval endpoint"), _int(hi, "interval endpoint")) for lo, hi in raw])
    if "n" in obj:
        n = _int(obj["n"], "'n'")
    elif model is not None:
        n = model.n
    else:
        raise ParseError("graph document needs 'n'")
    if model is not None and model.n != n:
        raise ParseError(f"{model.n} intervals for n={n}")
    raw_edges = obj.get("edges")
    if raw_edges is None:
        if model is None:
            raise ParseError("graph document needs 'edges'")
        g = model.graph()
    else:
        if not isinstance(raw_edges, list) or any(not isinstance(e, list) or len(e) != 2 for e in raw_edges):
            raise ParseError("'edges' must be a list of [u, v] pairs")
        edges = [(_int(u, "vertex"), _int(v, "vertex"), None) for u, v in raw_edges]
        g = Graph(n, _check_edges(n, edges))
        if model is not None and model.graph() != g:
            raise ParseError("edges disagree with the intersection graph of 'intervals'")
    clique = None
    if "clique" in obj:
        clique = tuple(sorted(_int(v, "clique vertex") for v in obj["clique"]))
        if any(not 0 <= v < n for v in clique):
            raise ParseError("'clique' vertex out of range")
    return GraphDocument(g, model, clique)


def parse_graph(text: str) -> GraphDocument:
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_edge_list(text)


def serialize_graph(doc: GraphDocument | Graph, fmt: str = "json") -> str:
    if isinstance(doc, Graph):
        doc = GraphDocument(doc)
    g = doc.graph
    edges = g.edges()
    if fmt == "edges":
        if doc.intervals is not None or doc.clique is not None:
            raise InputError("edge-list text cannot carry intervals or a clique side")
        return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"
    if fmt != "json":
        raise InputError(f"unknown graph format {fmt!r}")
    obj: dict = {"n": g.n, "edges": [list(e) for e in edges]}
    if doc.intervals is not None:
        obj["intervals"] = [list(iv) for iv in doc.intervals.intervals]
    if doc.clique is not None:
        obj["clique"] = list(doc.clique)
    return json.dumps(obj) + "\n"


def clustering_document(g: Graph, cl: Clustering, algorithm: str) -> dict:
    return {
        "algorithm": algorithm,
        "value": cl.internal_edges,
        "internal_edges": cl.internal_edges,
        "clusters": [list(c) for c in cl.clusters],
        "deleted_edges": [list(e) for e in sorted(cl.deleted_edge_list(g))],
    }


def serialize_clustering(g: Graph, cl: Clustering, algorithm: str) -> str:
    return json.dumps(clustering_document(g, cl, algorithm)) + "\n"


def parse_clustering(text: str) -> dict:
    """Raw clustering document; structural checks only (``verify`` does the rest)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg} (column {e.colno})", e.lineno) from None
    if not isinstance(obj, dict):
        raise ParseError("clustering document must be a JSON object")
    for key in ("clusters", "internal_edges", "deleted_edges"):
        if key not in obj:
            raise ParseError(f"clustering document needs {key!r}")
    clusters = obj["clusters"]
    if not isinstance(clusters, list) or any(not isinstance(c, list) for c in clusters):
        raise ParseError("'clusters' must be a list of lists")
    for c in clusters:
        for v in c:
            _int(v, "cluster vertex")
    _int(obj["internal_edges"], "'internal_edges'")
    dl = obj["deleted_edges"]
    if not isinstance(dl, list) or any(not isinstance(e, list) or len(e) != 2 for e in dl):
        raise ParseError("'deleted_edges' must be a list of [u, v] pairs")
    return obj


def verify_document(g: Graph, doc: dict) -> tuple[bool, str | None]:
    """Check a clustering document against ``g``; returns ``(ok, violation)``."""
    from .oracle import verify_clustering

    report = verify_clustering(g, doc["clusters"])
    if not report.valid:
        return False, report.violation
    if doc["internal_edges"] != report.internal_edges:
        return False, f"internal_edges {doc['internal_edges']} != recomputed {report.internal_edges}"
    if "value" in doc and doc["value"] != report.internal_edges:
        return False, f"value {doc['value']} != recomputed {report.internal_edges}"
    cl = Clustering.from_clusters(g, doc["clusters"])
    expect = [list(e) for e in sorted(cl.deleted_edge_list(g))]
    if doc["deleted_edges"] != expect:
        return False, "deleted_edges do not match the clustering (must be the sorted u<v external edges)"
    return True, None
