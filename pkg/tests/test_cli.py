import csv
import io
import json
import subprocess
import sys

import pytest

from cdsolve import cli, driver
from cdsolve.graph import Clustering


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return p
    return write


P3 = "3 2\n0 1\n1 2\n"
C4 = "4 4\n0 1\n1 2\n2 3\n3 0\n"
# C = {0,1,2}; 3 sees {0,1}; 4 sees {2}
SPLIT = "5 6\n0 1\n0 2\n1 2\n0 3\n1 3\n2 4\n"


def test_solve_p3(capsys, files):
    code, out, _ = run(capsys, "solve", files("p3.txt", P3), "--algo", "interval-dp", "--check")
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == 1 and doc["algorithm"] == "interval-dp"


def test_solve_c4_is_refused(capsys, files):
    code, out, err = run(capsys, "solve", files("c4.txt", C4), "--algo", "interval-dp")
    assert code == 2 and out == ""
    w = json.loads(err)["witness"]
    assert w["pattern"] == "C4" and sorted(w["vertices"]) == [0, 1, 2, 3]


def test_solve_split_example(capsys, files):
    code, out, _ = run(capsys, "solve", files("s.txt", SPLIT), "--algo", "split", "--check")
    assert code == 0 and json.loads(out)["value"] == 4


@pytest.mark.parametrize("algo, text", [
    ("split", C4), ("one-split-twin", "5 4\n0 1\n1 2\n2 3\n3 4\n"), ("threshold-twin", "4 3\n0 1\n1 2\n2 3\n"),
    ("greedy", C4),
])
def test_class_mismatch_exit_code(capsys, files, algo, text):
    code, _, err = run(capsys, "solve", files("g.txt", text), "--algo", algo)
    assert code == 2 and "witness" in json.loads(err)


def test_one_split_twin_mismatch_names_classes(capsys, files):
    # split graph where the I-vertices 3, 4 see overlapping but different parts of C
    text = "5 7\n0 1\n0 2\n1 2\n3 0\n3 1\n4 1\n4 2\n"
    code, _, err = run(capsys, "solve", files("g.txt", text), "--algo", "one-split-twin")
    w = json.loads(err)["witness"]
    assert code == 2 and w["i_classes"] == [[3], [4]]


def test_oracle_mismatch_exit_code(capsys, files, monkeypatch):
    def bad_solve(doc, algo):
        return Clustering.from_clusters(doc.graph, [[v] for v in range(doc.graph.n)])
    monkeypatch.setattr(driver, "solve", bad_solve)
    code, out, err = run(capsys, "solve", files("p3.txt", P3), "--algo", "interval-dp", "--check")
    assert code == 3 and out == "" and "oracle" in err


def test_greedy_check_uses_factor_two(capsys, files):
    code, out, _ = run(capsys, "solve", files("p4.txt", "4 3\n0 1\n1 2\n2 3\n"), "--algo", "greedy", "--check")
    assert code == 0 and json.loads(out)["clusters"] == [[0, 1], [2, 3]]


def test_oracle_size_refusal_is_usage_error(capsys, files):
    code, _, err = run(capsys, "solve", files("big.txt", "20 0\n"), "--algo", "oracle")
    assert code == 1 and "oracle" in err


def test_recognize_examples(capsys, files):
    code, out, _ = run(capsys, "recognize", files("p5.txt", "5 4\n0 1\n1 2\n2 3\n3 4\n"), "--class", "split-twin")
    v = json.loads(out)
    assert code == 0 and v["member"] is False and v["witness"]["pattern"] == "P5"
    model = files("m.json", '{"n": 3, "intervals": [[1, 2], [2, 3], [3, 4]]}')
    v = json.loads(run(capsys, "recognize", model, "--class", "interval")[1])
    assert v["member"] and v["certificate"]["cliques"] == [[0, 1], [1, 2]]
    v = json.loads(run(capsys, "recognize", files("c4.txt", C4), "--class", "interval")[1])
    assert not v["member"] and v["witness"]["reason"] == "not-chordal"


@pytest.mark.parametrize("cls", driver.RECOGNIZABLE)
def test_recognize_every_class(capsys, files, cls):
    code, out, _ = run(capsys, "recognize", files("s.txt", SPLIT), "--class", cls)
    v = json.loads(out)
    assert code == 0 and v["class"] == cls and ("certificate" in v) == v["member"]


def test_unknown_class_is_usage_error(capsys, files):
    code, _, err = run(capsys, "recognize", files("p3.txt", P3), "--class", "cograph")
    assert code == 1 and "invalid choice" in err


def test_generate_is_byte_identical(capsys):
    first = run(capsys, "generate", "--class", "interval", "--n", 8, "--seed", 1)
    second = run(capsys, "generate", "--class", "interval", "--n", 8, "--seed", 1)
    assert first == second and first[0] == 0
    doc = json.loads(first[1])
    assert doc["n"] == 8 and len(doc["intervals"]) == 8


def test_generate_edge_list_and_bad_knobs(capsys):
    code, out, _ = run(capsys, "generate", "--class", "split", "--n", 5, "--format", "edges")
    assert code == 0 and out.splitlines()[0].startswith("5 ")
    assert run(capsys, "generate", "--class", "split", "--n", 5, "--density", 2)[0] == 1
    assert run(capsys, "generate", "--class", "interval", "--n", 5, "--clique-frac", 0.5)[0] == 1


def test_reduce_ewcd_example(capsys, files):
    src = files("w.json", '{"n": 3, "edges": [[0, 1], [0, 2], [1, 2]], "clique": [0, 1]}')
    code, out, _ = run(capsys, "reduce", src, "--rule", "ewcd")
    doc = json.loads(out)
    assert code == 0
    assert doc["graph"] == {"n": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]}
    assert doc["map"] == {"q": 2, "offset": 1, "clique_map": [[0, 0], [1, 1]], "i_class_map": [[2, [2, 3]]]}


def test_reduce_ewcd_infers_clique_side(capsys, files):
    code, out, _ = run(capsys, "reduce", files("s.txt", SPLIT), "--rule", "ewcd")
    assert code == 0 and json.loads(out)["map"]["q"] == 3
    assert run(capsys, "reduce", files("c4.txt", C4), "--rule", "ewcd")[0] == 2


def test_reduce_twins(capsys, files):
    out = json.loads(run(capsys, "reduce", files("k3.txt", "3 3\n0 1\n0 2\n1 2\n"), "--rule", "true-twins")[1])
    assert out == {"graph": {"n": 1, "edges": []}, "classes": [[0, 1, 2]]}
    out = json.loads(run(capsys, "reduce", files("p3.txt", P3), "--rule", "false-twins")[1])
    assert out["removed"] == [2] and out["graph"]["n"] == 2


def test_verify_good_and_tampered(capsys, files):
    g = files("p3.txt", P3)
    _, out, _ = run(capsys, "solve", g, "--algo", "oracle")
    good = files("good.json", out)
    code, out2, _ = run(capsys, "verify", g, good)
    assert code == 0 and json.loads(out2)["valid"]
    doc = json.loads(out)
    doc["clusters"] = [[0, 2], [1]]
    code, _, err = run(capsys, "verify", g, files("bad.json", json.dumps(doc)))
    assert code == 3 and "not a clique" in err


def test_parse_errors_exit_one(capsys, files):
    code, _, err = run(capsys, "solve", files("dup.txt", "3 2\n0 1\n1 0\n"), "--algo", "oracle")
    assert code == 1 and "line 3" in err
    assert run(capsys, "solve", "/nonexistent/graph.txt", "--algo", "oracle")[0] == 1
    assert run(capsys, "verify", files("p3.txt", P3), files("c.json", "{"))[0] == 1
    assert run(capsys, "bogus")[0] == 1


@pytest.mark.parametrize("algo, cls", [
    ("interval-dp", "interval"), ("split", "split"), ("one-split-twin", "one-split-twin"),
    ("threshold-twin", "threshold-twin"), ("greedy", "chordal"), ("oracle", "arbitrary"),
])
def test_every_solve_output_verifies(capsys, files, algo, cls):
    for seed in range(5):
        _, gtext, _ = run(capsys, "generate", "--class", cls, "--n", 9, "--seed", seed)
        g = files("g.json", gtext)
        code, out, _ = run(capsys, "solve", g, "--algo", algo, "--check")
        assert code == 0
        assert run(capsys, "verify", g, files("c.json", out))[0] == 0


def test_bench_csv(capsys):
    code, out, _ = run(capsys, "bench", "--n", 9, 6, "--seeds", 2)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["class", "n", "seed", "algo", "value", "millis"]
    keys = [(r[0], int(r[1]), int(r[2]), r[3]) for r in rows[1:]]
    assert keys == sorted(keys) and len(keys) == 4 * 2 * 2
    parallel = run(capsys, "bench", "--n", 9, 6, "--seeds", 2, "--jobs", 2)[1]
    strip = lambda text: [r[:5] for r in csv.reader(io.StringIO(text))]
    assert strip(parallel) == strip(out)


def test_bench_skips_inapplicable_algorithms(capsys):
    code, out, err = run(capsys, "bench", "--class", "split", "--n", 6, "--seeds", 3,
                         "--algo", "split", "oracle", "interval-dp")
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert code == 0 and {r[3] for r in rows} >= {"split", "oracle"}
    by = {}
    for r in rows:
        by.setdefault((r[2]), {})[r[3]] = r[4]
    assert all(d["split"] == d["oracle"] for d in by.values())


def test_console_script_runs():
    out = subprocess.run([sys.executable, "-m", "cdsolve.cli", "generate", "--class", "split", "--n", "4"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["n"] == 4
