"""Command-line entry point.

Exit codes: 0 success, 1 parse or usage error, 2 input outside the class an
algorithm needs, 3 verification or oracle mismatch. Results go to stdout,
diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import driver, oracle
from .classes import NotSplit, split_partition
from .gadgets import CLASSES, RandomSpec, contract_true_twins, ewcd_to_split_twin, generate, reduce_false_twins
from .graph import InputError
from .io import GraphDocument, parse_clustering, parse_graph, serialize_clustering, serialize_graph, verify_document
from .oracle import WeightedSplitInstance

EXIT_OK, EXIT_USAGE, EXIT_CLASS, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class _Exit(Exception):
    def __init__(self, code: int, message: str | dict):
        super().__init__(message)
        self.code = code
        self.message = message


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise _Exit(EXIT_USAGE, f"cannot read {path}: {e.strerror}") from None


def _load_graph(path: str) -> GraphDocument:
    return parse_graph(_read(path))


def _json_line(obj) -> str:
    return json.dumps(obj) + "\n"


def cmd_solve(args) -> int:
    doc = _load_graph(args.input)
    try:
        cl = driver.solve(doc, args.algo)
    except driver.ClassMismatch as e:
        raise _Exit(EXIT_CLASS, {"error": "class-mismatch", "class": e.cls, "witness": e.witness}) from None
    if args.check:
        problem = driver.cross_check(doc.graph, cl, args.algo)
        if problem is not None:
            raise _Exit(EXIT_VERIFY, problem)
        if doc.graph.n > oracle.ORACLE_LIMIT:
            print(f"note: n={doc.graph.n} exceeds the oracle limit; checked validity only", file=sys.stderr)
    sys.stdout.write(serialize_clustering(doc.graph, cl, args.algo))
    return EXIT_OK


def cmd_recognize(args) -> int:
    doc = _load_graph(args.input)
    sys.stdout.write(_json_line(driver.recognize(doc, args.cls)))
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = RandomSpec(args.cls, args.n, args.seed, args.density, args.clique_frac)
    g, model = generate(spec)
    doc = GraphDocument(g, model if args.format == "json" else None)
    sys.stdout.write(serialize_graph(doc, args.format))
    return EXIT_OK


def _graph_obj(g) -> dict:
    return json.loads(serialize_graph(g))


def cmd_reduce(args) -> int:
    doc = _load_graph(args.input)
    g = doc.graph
    if args.rule == "true-twins":
        q, classes = contract_true_twins(g)
        out = {"graph": _graph_obj(q), "classes": [sorted(c) for c in classes]}
    elif args.rule == "false-twins":
        reduced, kept, removed = reduce_false_twins(g)
        out = {"graph": _graph_obj(reduced), "kept": kept, "removed": removed}
    else:
        if doc.clique is not None:
            C = frozenset(doc.clique)
        else:
            try:
                C = split_partition(g).C
            except NotSplit as e:
                raise _Exit(EXIT_CLASS, {"error": "class-mismatch", "class": "split",
                                         "witness": driver.pattern_witness(e.witness)}) from None
        inst = WeightedSplitInstance(g, C, frozenset(range(g.n)) - C)
        gm = ewcd_to_split_twin(inst)
        out = {
            "graph": _graph_obj(gm.target),
            "map": {
                "q": gm.q,
                "offset": gm.offset,
                "clique_map": [[t, s] for t, s in sorted(gm.clique_map.items())],
                "i_class_map": [[w, list(ts)] for w, ts in sorted(gm.i_class_map.items())],
            },
        }
    sys.stdout.write(_json_line(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = _load_graph(args.graph)
    cdoc = parse_clustering(_read(args.clustering))
    ok, violation = verify_document(doc.graph, cdoc)
    if not ok:
        raise _Exit(EXIT_VERIFY, f"invalid clustering: {violation}")
    g = doc.graph
    sys.stdout.write(_json_line({
        "valid": True, "internal_edges": cdoc["internal_edges"],
        "deleted_edges": g.edge_count - cdoc["internal_edges"],
    }))
    return EXIT_OK


BENCH_CLASSES = ("interval", "split", "one-split-twin", "threshold-twin")
NATIVE_ALGO = {"interval": "interval-dp", "split": "split", "one-split-twin": "one-split-twin",
               "threshold-twin": "threshold-twin"}


def _bench_one(task: tuple[str, int, int, str]) -> tuple[str, int, int, str, int | None, float]:
    cls, n, seed, algo = task
    g, model = generate(RandomSpec(cls, n, seed))
    doc = GraphDocument(g, model)
    t0 = time.perf_counter()
    try:
        cl = driver.solve(doc, algo)
    except driver.ClassMismatch:
        return cls, n, seed, algo, None, 0.0
    return cls, n, seed, algo, cl.internal_edges, (time.perf_counter() - t0) * 1000


def cmd_bench(args) -> int:
    algos = args.algo or []
    tasks = []
    for cls in args.cls:
        for n in args.n:
            for seed in range(args.seeds):
                for algo in algos or [NATIVE_ALGO[cls]]:
                    if algo == "oracle" and n > oracle.ORACLE_LIMIT:
                        continue
                    tasks.append((cls, n, seed, algo))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(_bench_one, tasks))
    else:
        rows = [_bench_one(t) for t in tasks]
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["class", "n", "seed", "algo", "value", "millis"])
    for cls, n, seed, algo, value, ms in sorted(rows, key=lambda r: r[:4]):
        if value is None:
            print(f"skip: {algo} does not apply to {cls} n={n} seed={seed}", file=sys.stderr)
            continue
        w.writerow([cls, n, seed, algo, value, f"{ms:.3f}"])
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


def _fraction(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError(f"{x} is outside [0, 1]")
    return x


def _nonneg(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if x < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return x


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cdsolve", description="Exact Cluster Deletion solvers and tooling.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve a graph and print a clustering document")
    s.add_argument("input", help="graph file (edge list or JSON), '-' for stdin")
    s.add_argument("--algo", choices=driver.ALGORITHMS, required=True)
    s.add_argument("--check", action="store_true",
                   help="compare against the exact oracle when n is small enough")
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("recognize", help="test class membership")
    r.add_argument("input")
    r.add_argument("--class", dest="cls", choices=driver.RECOGNIZABLE, required=True)
    r.set_defaults(func=cmd_recognize)

    g = sub.add_parser("generate", help="print a seeded random graph of a class")
    g.add_argument("--class", dest="cls", choices=CLASSES, required=True)
    g.add_argument("--n", type=_nonneg, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--density", type=_fraction, default=0.5)
    g.add_argument("--clique-frac", type=_fraction, default=None)
    g.add_argument("--format", choices=("json", "edges"), default="json")
    g.set_defaults(func=cmd_generate)

    d = sub.add_parser("reduce", help="apply a twin reduction or the weighted-split gadget")
    d.add_argument("input")
    d.add_argument("--rule", choices=("ewcd", "true-twins", "false-twins"), required=True)
    d.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="check a clustering document against a graph")
    v.add_argument("graph")
    v.add_argument("clustering")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="time solvers on generated graphs, CSV on stdout")
    b.add_argument("--class", dest="cls", choices=BENCH_CLASSES, nargs="+", default=list(BENCH_CLASSES))
    b.add_argument("--n", type=_nonneg, nargs="+", default=[10, 20])
    b.add_argument("--seeds", type=_nonneg, default=3, help="seeds 0..SEEDS-1")
    b.add_argument("--algo", choices=driver.ALGORITHMS, nargs="+",
                   help="algorithms to time (default: each class's own solver)")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except _Exit as e:
        msg = e.message if isinstance(e.message, str) else json.dumps(e.message)
        print(msg, file=sys.stderr)
        return e.code
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
