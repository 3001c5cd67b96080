"""Glue between documents and solvers: class checks before solving, recognizer
verdicts as plain dicts, and the oracle cross-check."""
from __future__ import annotations

from .chordal import chordless_cycle, perfect_elimination_order
from .classes import (
    NotSplit, forbidden_check_split_twin, greedy_max_clique_clustering, recognize_one_split_twin,
    recognize_split_twin, recognize_threshold_twin, solve_one_split_twin_cd, solve_split_cd,
    solve_threshold_twin_cd, split_partition,
)
from .dp import solve_interval_cd
from .graph import Clustering, Graph, mask_of
from .interval import CliquePath, NotInterval, asteroidal_triple, clique_path_from_intervals, recognize_interval
from .io import GraphDocument
from . import oracle

ALGORITHMS = ("interval-dp", "split", "one-split-twin", "threshold-twin", "greedy", "oracle")
RECOGNIZABLE = ("interval", "split", "split-twin", "one-split-twin", "threshold-twin")


class ClassMismatch(Exception):
    """The input is outside the class an algorithm needs; ``witness`` says why."""

    def __init__(self, cls: str, witness: dict):
        super().__init__(f"input is not {cls}: {witness}")
        self.cls = cls
        self.witness = witness


def _sorted_sets(sets) -> list[list[int]]:
    return sorted(sorted(s) for s in sets)


def pattern_witness(w) -> dict:
    # mapping as a list indexed by pattern vertex
    return {"pattern": w.pattern, "vertices": [w.mapping[k] for k in sorted(w.mapping)]}


def _cycle_witness(g: Graph) -> dict:
    cyc = chordless_cycle(g)
    return {"reason": "not-chordal", "pattern": f"C{len(cyc)}", "vertices": cyc}


def _interval_witness(g: Graph, reason: str) -> dict:
    if reason == "not-chordal":
        return _cycle_witness(g)
    return {"reason": reason, "asteroidal_triple": list(asteroidal_triple(g) or ())}


def clique_path_of(doc: GraphDocument) -> CliquePath:
    if doc.intervals is not None:
        return clique_path_from_intervals(doc.intervals)
    try:
        return recognize_interval(doc.graph)
    except NotInterval as e:
        raise ClassMismatch("interval", _interval_witness(doc.graph, e.reason)) from None


def _nested_witness(g: Graph, classes, C: frozenset[int], want: str) -> dict:
    """Two I-classes whose C-neighbourhoods break the 1-split-twin
    (``want="disjoint-or-equal"``) or threshold-twin (``"nested"``) rule."""
    cm = mask_of(C)
    nbr = [(sorted(c), g.adj_mask(min(c)) & cm) for c in classes]
    for k, (x, nx) in enumerate(nbr):
        for y, ny in nbr[k + 1:]:
            if want == "nested":
                bad = nx & ny not in (nx, ny)
            else:
                bad = nx & ny and nx != ny
            if bad:
                return {"reason": f"I-class neighbourhoods not {want}", "i_classes": [x, y]}
    raise AssertionError("no offending pair of I-classes")


def _twin_side_witness(g: Graph, want: str) -> dict:
    w = forbidden_check_split_twin(g)
    if w is not None:
        return pattern_witness(w)
    part = recognize_split_twin(g)
    return _nested_witness(g, part.i_classes, part.C, want)


def solve(doc: GraphDocument, algo: str) -> Clustering:
    """Run ``algo`` on the document's graph after checking its class."""
    g = doc.graph
    if algo == "interval-dp":
        return solve_interval_cd(clique_path_of(doc), g)[1]
    if algo == "split":
        try:
            part = split_partition(g)
        except NotSplit as e:
            raise ClassMismatch("split", pattern_witness(e.witness)) from None
        return solve_split_cd(g, part)
    if algo == "one-split-twin":
        s = recognize_one_split_twin(g)
        if s is None:
            raise ClassMismatch("one-split-twin", _twin_side_witness(g, "disjoint-or-equal"))
        return solve_one_split_twin_cd(g, s)
    if algo == "threshold-twin":
        if recognize_threshold_twin(g) is None:
            raise ClassMismatch("threshold-twin", _twin_side_witness(g, "nested"))
        return solve_threshold_twin_cd(g)
    if algo == "greedy":
        if perfect_elimination_order(g) is None:
            raise ClassMismatch("chordal", _cycle_witness(g))
        return greedy_max_clique_clustering(g)
    if algo == "oracle":
        return oracle.exact_cd(g)[1]
    raise ValueError(f"unknown algorithm {algo!r}")


def cross_check(g: Graph, cl: Clustering, algo: str) -> str | None:
    """Compare against the oracle when it is in range; returns a failure
    message or ``None``. Greedy is held to its factor-2 deletion bound."""
    report = oracle.verify_clustering(g, [list(c) for c in cl.clusters])
    if not report.valid:
        return f"solver output invalid: {report.violation}"
    if g.n > oracle.ORACLE_LIMIT:
        return None
    best, _ = oracle.exact_cd(g)
    if algo == "greedy":
        opt_deleted = g.edge_count - best
        if cl.deleted_edges > 2 * opt_deleted:
            return f"greedy deletes {cl.deleted_edges} > 2 * optimum {opt_deleted}"
        return None
    if cl.internal_edges != best:
        return f"{algo} value {cl.internal_edges} != oracle value {best}"
    return None


def recognize(doc: GraphDocument, cls: str) -> dict:
    """Membership verdict with a certificate for members, a witness otherwise."""
    g = doc.graph
    out: dict = {"class": cls}
    if cls == "interval":
        try:
            cp = clique_path_of(doc)
        except ClassMismatch as e:
            return {**out, "member": False, "witness": e.witness}
        cert = {"cliques": [sorted(k) for k in cp.cliques], "a": list(cp.a), "b": list(cp.b)}
        return {**out, "member": True, "certificate": cert}
    if cls == "split":
        try:
            part = split_partition(g)
        except NotSplit as e:
            return {**out, "member": False, "witness": pattern_witness(e.witness)}
        return {**out, "member": True, "certificate": {"C": sorted(part.C), "I": sorted(part.I)}}
    if cls == "split-twin":
        part = recognize_split_twin(g)
        w = forbidden_check_split_twin(g)
        if (part is None) == (w is None):
            raise AssertionError("split-twin recognizer and forbidden-pattern search disagree")
        if part is None:
            return {**out, "member": False, "witness": pattern_witness(w)}
        cert = {"C": sorted(part.C), "I": sorted(part.I), "i_classes": _sorted_sets(part.i_classes)}
        return {**out, "member": True, "certificate": cert}
    if cls == "one-split-twin":
        s = recognize_one_split_twin(g)
        if s is None:
            return {**out, "member": False, "witness": _twin_side_witness(g, "disjoint-or-equal")}
        cert = {
            "C": sorted(s.C), "I": sorted(s.I),
            "c_classes": [sorted(c) for c in s.c_classes],
            "i_groups": [[sorted(c) for c in grp] for grp in s.i_groups],
            "isolated": [sorted(c) for c in s.isolated],
        }
        return {**out, "member": True, "certificate": cert}
    if cls == "threshold-twin":
        chain = recognize_threshold_twin(g)
        if chain is None:
            return {**out, "member": False, "witness": _twin_side_witness(g, "nested")}
        I = set().union(*chain) if chain else set()
        C = sorted(set(range(g.n)) - I)
        return {**out, "member": True, "certificate": {"C": C, "i_chain": [sorted(c) for c in chain]}}
    raise ValueError(f"unknown class {cls!r}")
