"""Command-line interface tests: wiring, exit codes, certificates."""

import json
import subprocess
import sys

PY = [sys.executable, "-m", "scatter_calc"]


def run(*argv, stdin=None):
    return subprocess.run(PY + list(argv), capture_output=True, text=True,
                          input=stdin)


def payload(result):
    assert result.returncode in (0, 2), result.stderr
    return json.loads(result.stdout)


def test_parse_ok():
    res = run("parse", "--term", "scaled(ord(w), fin(2))")
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert data["term"] == "scaled(ord(w), fin(2))"
    assert data["schema"] == "scatter-calc.v1"
    assert data["fundamental_sequence"] == "wainer-cnf"


def test_parse_invalid_index_is_usage_error():
    res = run("parse", "--term", "scaled(ord(w), shuffle(w))")
    assert res.returncode == 1
    assert "InvalidIndexTerm" in res.stderr


def test_unknown_flag_is_usage_error():
    res = run("parse", "--term", "fin(2)", "--bogus")
    assert res.returncode == 1


def test_compare_command():
    res = run("compare", "--term", "ord(w)", "--a", '"3"', "--b", '"5"')
    data = payload(res)
    assert data["result"] == "Less"
    assert res.returncode == 0


def test_sample_matches_library(tmp_path):
    res = run("sample", "--term", "ord(w^2)", "--budget", "6", "--seed", "3")
    data = payload(res)
    from scatter_calc import parse_term, sample_elements, encode_element
    term = parse_term("ord(w^2)")
    expected = [encode_element(term, e) for e in sample_elements(term, 6, 3)]
    assert data["elements"] == expected


def test_embed_search_command():
    res = run("embed-search", "--pattern", "fin(3)", "--term", "ord(w^2)",
              "--budget", "8", "--seed", "1")
    data = payload(res)
    assert data["found"] is True and len(data["embedding"]) == 3


def test_sierpinski_command():
    res = run("sierpinski", "--tags", "[3, 1, 2]")
    data = payload(res)
    pairs = {(p["a"], p["b"]): p["c"] for p in data["coloring"]["pairs"]}
    assert pairs == {(0, 1): 1, (0, 2): 1, (1, 2): 0}


def test_extract_unary_command():
    spec = {"p": 2, "nu": 2,
            "F": [{"g": [a, b], "c": a} for a in (0, 1) for b in (0, 1)]}
    res = run("extract-unary", "--input", "-", stdin=json.dumps(spec))
    data = payload(res)
    assert data["colour"] == 1
    assert data["witness"] == [[1, 0], [1, 1]]


def test_step_up_command_deterministic():
    a = run("step-up", "--p", "4", "--n", "2", "--seed", "9")
    b = run("step-up", "--p", "4", "--n", "2", "--seed", "9")
    assert a.returncode == 0 and a.stdout == b.stdout


def test_mr_label_and_bound():
    res = run("mr-label", "--term", "scaled(ord(w), fin(2))",
              "--elem", '{"i": 0, "e": "5"}')
    data = payload(res)
    assert data["label"] == 3
    assert data["chain"] == [{"m": 0, "n": 1, "value": 3}]
    res = run("mr-bound", "--alpha", "w", "--n", "1")
    assert payload(res)["bound"] == "w"


def test_ks_check_exit_codes():
    ok = run("ks-check", "--term", "scaled(ord(w), fin(2))", "--n", "3",
             "--budget", "40", "--seed", "2")
    assert ok.returncode == 0 and payload(ok)["ok"] is True
    # a 200-point sample of the same term does contain the 64-point pattern
    bad = run("ks-check", "--term", "scaled(ord(w), fin(2))", "--n", "3",
              "--budget", "200", "--seed", "2")
    assert bad.returncode == 2 and json.loads(bad.stdout)["ok"] is False


def test_neg_graph_pipeline(tmp_path):
    params = {
        "k": 2, "l": 6,
        "d": {"2": [0, 1], "3": [1, 2], "4": [0, 3], "5": [2, 4]},
        "u": {str(r): [1, 3] for r in range(6)},
        "g": {"2": [0, 1], "3": [0, 2], "4": [1, 3], "5": [2, 4]},
    }
    pfile = tmp_path / "params.json"
    pfile.write_text(json.dumps(params))
    build = run("neg-graph", "build", "--params", str(pfile))
    assert build.returncode == 0
    check = run("neg-graph", "check", "-", stdin=build.stdout)
    assert check.returncode == 0
    data = json.loads(check.stdout)
    assert data["triangle_free"] is True and data["corner_ok"] is True


def test_neg_graph_check_witness_exit_2(tmp_path):
    graph = {"k": 2, "l": 3,
             "edges": [[[0, 2], [1, 1]], [[0, 2], [1, 0]], [[1, 1], [1, 0]]],
             "provenance": [], "csets": []}
    check = run("neg-graph", "check", "-", stdin=json.dumps({"graph": graph}))
    assert check.returncode == 2
    data = json.loads(check.stdout)
    assert data["triangle_free"] is False


def test_ks_search_and_verify(tmp_path):
    search = run("ks", "search", "--delta", "2", "--mu-range", "6",
                 "--level-bound", "2", "--oracle", "length")
    data = payload(search)
    assert data["found"] is True
    tree_file = tmp_path / "tree.json"
    tree_file.write_text(json.dumps(data["tree"]))
    verify = run("ks", "verify", "--tree", str(tree_file), "--oracle", "length")
    assert verify.returncode == 0 and payload(verify)["ok"] is True
    # wrong oracle: levels clash
    verify2 = run("ks", "verify", "--tree", str(tree_file), "--oracle", "parity")
    assert verify2.returncode in (0, 2)


def test_env_seed_default():
    import os
    env = dict(os.environ, SCATTER_CALC_SEED="7")
    with_env = subprocess.run(PY + ["sample", "--term", "ord(w^2)", "--budget", "5"],
                              capture_output=True, text=True, env=env)
    explicit = run("sample", "--term", "ord(w^2)", "--budget", "5", "--seed", "7")
    assert with_env.stdout == explicit.stdout
    assert json.loads(with_env.stdout)["seed"] == 7


def test_ks_embed_command(tmp_path):
    tree = {"alpha": "1", "entries": [{"seq": ["0"], "val": "9"}]}
    tree_file = tmp_path / "tree.json"
    tree_file.write_text(json.dumps(tree))
    res = run("ks", "embed", "--tree", str(tree_file),
              "--source-host", "finsupp(1, fin(3), 0)",
              "--target-host", "finsupp(12, fin(3), 0)",
              "--f", '{"supp": [{"pos": "0", "e": 2}]}')
    data = payload(res)
    assert data["image"] == {"supp": [{"pos": "9", "e": 2}]}
