"""Command-line front end.

Every command prints a JSON certificate with a reproducibility header
(seed, pairing choice and fundamental-sequence system id).  Exit codes:
0 success or verified-ok, 1 usage or input error, 2 a verification witness
was found.  A lone ``-`` means stdin or stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Optional

from .errors import ScatterCalcError
from . import antilex, milner_rado, neg_graph, partition, terms
from .ordinal import FUNDAMENTAL_SEQUENCE_ID, format_ordinal, parse_ordinal

SCHEMA = "scatter-calc.v1"


class _CliParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _emit(payload: dict, out: Optional[str] = None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _header(command: str, seed: Optional[int]) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "seed": seed,
        "pi": "cantor1",
        "fundamental_sequence": FUNDAMENTAL_SEQUENCE_ID,
    }


def _default_seed(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get("SCATTER_CALC_SEED")
    return int(env) if env else 0


def _element(term, raw: str):
    return terms.decode_element(term, json.loads(raw))


_COMPARE_WORD = {-1: "Less", 0: "Equal", 1: "Greater"}


# -- command bodies -----------------------------------------------------------------


def cmd_parse(args) -> int:
    term = terms.parse_term(args.term)
    payload = _header("parse", None)
    payload["term"] = terms.format_term(term)
    payload["finite_size"] = terms.finite_size(term)
    _emit(payload, args.out)
    return 0


def cmd_compare(args) -> int:
    term = terms.parse_term(args.term)
    a = _element(term, args.a)
    b = _element(term, args.b)
    result = terms.compare_elements(term, a, b)
    payload = _header("compare", None)
    payload["term"] = terms.format_term(term)
    payload["result"] = _COMPARE_WORD[result]
    _emit(payload, args.out)
    return 0


def cmd_sample(args) -> int:
    seed = _default_seed(args.seed)
    term = terms.parse_term(args.term)
    sample = terms.sample_elements(term, args.budget, seed)
    payload = _header("sample", seed)
    payload["term"] = terms.format_term(term)
    payload["elements"] = [terms.encode_element(term, e) for e in sample]
    _emit(payload, args.out)
    return 0


def cmd_embed_search(args) -> int:
    seed = _default_seed(args.seed)
    pattern = terms.parse_term(args.pattern)
    target_term = terms.parse_term(args.term)
    sample = terms.sample_elements(target_term, args.budget, seed)
    mapping = terms.search_embedding(
        pattern, sample, lambda x, y: terms.compare_elements(target_term, x, y))
    payload = _header("embed-search", seed)
    payload["pattern"] = terms.format_term(pattern)
    payload["term"] = terms.format_term(target_term)
    payload["found"] = mapping is not None
    payload["embedding"] = None if mapping is None else [
        {"pattern": terms.encode_element(pattern, p),
         "target": terms.encode_element(target_term, t)}
        for p, t in mapping
    ]
    _emit(payload, args.out)
    return 0


def cmd_sierpinski(args) -> int:
    tags = json.loads(args.tags)
    colouring = partition.sierpinski_coloring(list(range(len(tags))), tags)
    payload = _header("sierpinski", None)
    payload["coloring"] = colouring.to_json()
    _emit(payload, args.out)
    return 0


def cmd_extract_unary(args) -> int:
    request = json.loads(_read(args.input))
    p, nu = request["p"], request["nu"]
    table = {tuple(item["g"]): item["c"] for item in request["F"]}

    def F(g):
        return table[g]

    witness, colour = partition.extract_unary(list(range(p)), nu, F)
    payload = _header("extract-unary", None)
    payload["witness"] = [list(g) for g in witness]
    payload["colour"] = colour
    _emit(payload, args.out)
    return 0


def cmd_step_up(args) -> int:
    seed = _default_seed(args.seed)
    p, n = args.p, args.n
    nu = p - 1
    P = list(range(p))
    R = partition.lex_power_domain(P, nu)
    rng = random.Random(seed)
    pairs = [(a, b) for a in P for b in R]
    colour_table = {}
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            colour_table[(pairs[i], pairs[j])] = rng.randrange(2)

    def colour(x, y):
        if (x, y) in colour_table:
            return colour_table[(x, y)]
        return colour_table[(y, x)]

    result = partition.step_up_extract(
        P, R, n, colour,
        partition.make_unary_realizer(P, nu),
        partition.trivial_pair_realizer(p))
    payload = _header("step-up", seed)
    payload["side"] = result.side
    payload["witness"] = [[a, list(b)] for a, b in result.witness]
    _emit(payload, args.out)
    return 0


def cmd_mr_label(args) -> int:
    term = terms.parse_term(args.term)
    elem = _element(term, args.elem)
    pi = milner_rado.PAIRINGS[args.pi]
    label, trace = milner_rado.mr_label_term_trace(term, elem, pi)
    payload = _header("mr-label", None)
    payload["pi"] = pi.name
    payload["term"] = terms.format_term(term)
    payload["label"] = label
    payload["chain"] = [{"m": m, "n": n, "value": v} for m, n, v in trace]
    _emit(payload, args.out)
    return 0


def cmd_mr_bound(args) -> int:
    alpha = parse_ordinal(args.alpha)
    bound = milner_rado.mr_class_type_bound(alpha, args.n)
    payload = _header("mr-bound", None)
    payload["alpha"] = format_ordinal(alpha)
    payload["n"] = args.n
    payload["bound"] = format_ordinal(bound)
    _emit(payload, args.out)
    return 0


def cmd_ks_check(args) -> int:
    seed = _default_seed(args.seed)
    term = terms.parse_term(args.term)
    sample = terms.sample_elements(term, args.budget, seed)
    labeling = milner_rado.mr_labeling(term, sample)
    ok = milner_rado.ks_omega_check(labeling, args.n)
    payload = _header("ks-check", seed)
    payload["term"] = terms.format_term(term)
    payload["n"] = args.n
    payload["ok"] = ok
    _emit(payload, args.out)
    return 0 if ok else 2


def cmd_neg_graph(args) -> int:
    if args.action == "build":
        params = neg_graph.NegGraphParams.from_json(json.loads(_read(args.params)))
        graph = neg_graph.build_neg_graph(params)
        payload = _header("neg-graph build", None)
        payload["graph"] = graph.to_json()
        _emit(payload, args.out)
        return 0
    # check
    data = json.loads(_read(args.graph))
    graph = neg_graph.GridGraph.from_json(data.get("graph", data))
    triangle = neg_graph.check_triangle_free(graph)
    corner = neg_graph.check_corner_invariant(graph)
    payload = _header("neg-graph check", None)
    payload["triangle_free"] = triangle is None
    payload["corner_ok"] = corner is None
    payload["triangle_witness"] = None if triangle is None else [list(v) for v in triangle]
    payload["corner_witness"] = None if corner is None else [list(v) for v in corner]
    _emit(payload, args.out)
    return 0 if triangle is None and corner is None else 2


_KS_ORACLES = {
    "const": lambda chain: 0,
    "length": lambda chain: len(chain),
    "parity": lambda chain: sum(chain) % 2,
}


def cmd_ks(args) -> int:
    if args.action == "search":
        oracle = _KS_ORACLES[args.oracle]
        found = antilex.search_alpha_tree(oracle, args.delta, args.mu_range,
                                          args.level_bound)
        payload = _header("ks search", None)
        payload["oracle"] = args.oracle
        if found is None:
            payload["found"] = False
        else:
            tree, colours = found
            payload["found"] = True
            payload["tree"] = tree.to_json()
            payload["levels"] = {str(k): v for k, v in sorted(colours.items())}
        _emit(payload, args.out)
        return 0
    if args.action == "embed":
        tree = antilex.AlphaTree.from_json(json.loads(_read(args.tree)))
        source = terms.parse_term(args.source_host)
        target = terms.parse_term(args.target_host)
        if not isinstance(source, terms.FinSupp) or not isinstance(target, terms.FinSupp):
            raise ScatterCalcError("hosts must be finsupp(...) terms")
        elem = terms.decode_element(source, json.loads(args.f))
        fn = antilex.FinSuppFn(source, elem)
        image = antilex.ks_embed(tree, fn, target)
        payload = _header("ks embed", None)
        payload["image"] = terms.encode_element(target, image.elem)
        _emit(payload, args.out)
        return 0
    # verify: re-run the searched tree against its oracle on all chains
    tree = antilex.AlphaTree.from_json(json.loads(_read(args.tree)))
    oracle = _KS_ORACLES[args.oracle]
    witness = antilex.validate_alpha_tree(tree)
    levels: dict = {}
    ok = witness is None
    if ok:
        for seq, _ in sorted(tree.entries.items(), key=lambda kv: (len(kv[0]), kv[0].entries)):
            chain = tuple(tree.entries[p].as_int() for p in seq.prefixes())
            colour = oracle(chain)
            level = len(seq) - 1
            if level in levels and levels[level] != colour:
                ok = False
                break
            levels[level] = colour
    payload = _header("ks verify", None)
    payload["ok"] = ok
    payload["tree_witness"] = None if witness is None else [str(w) for w in witness]
    _emit(payload, args.out)
    return 0 if ok else 2


# -- wiring ---------------------------------------------------------------------------


def build_parser() -> _CliParser:
    parser = _CliParser(prog="scatter-calc",
                        description="scattered order calculator and verifiers")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--out", default="-", help="output file, - for stdout")
        return p

    p = add("parse", cmd_parse, help="parse a term and echo its canonical form")
    p.add_argument("--term", required=True)

    p = add("compare", cmd_compare, help="compare two elements of a term")
    p.add_argument("--term", required=True)
    p.add_argument("--a", required=True, help="JSON element encoding")
    p.add_argument("--b", required=True, help="JSON element encoding")

    p = add("sample", cmd_sample, help="deterministic sorted sample of a term")
    p.add_argument("--term", required=True)
    p.add_argument("--budget", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)

    p = add("embed-search", cmd_embed_search,
            help="search a finite pattern inside a sampled fragment")
    p.add_argument("--pattern", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--budget", type=int, default=40)
    p.add_argument("--seed", type=int, default=None)

    p = add("sierpinski", cmd_sierpinski, help="emit the order-vs-tag pair colouring")
    p.add_argument("--tags", required=True, help="JSON list of injective naturals")

    p = add("extract-unary", cmd_extract_unary,
            help="monochromatic copy inside a lexicographic power")
    p.add_argument("--input", default="-", help="JSON {p, nu, F}")

    p = add("step-up", cmd_step_up,
            help="run the pair extraction on a seeded random colouring")
    p.add_argument("--p", type=int, default=4)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--seed", type=int, default=None)

    p = add("mr-label", cmd_mr_label, help="decomposition label of a term element")
    p.add_argument("--term", required=True)
    p.add_argument("--elem", required=True, help="JSON element encoding")
    p.add_argument("--pi", default="cantor1", choices=sorted(milner_rado.PAIRINGS))

    p = add("mr-bound", cmd_mr_bound, help="symbolic class-size bound")
    p.add_argument("--alpha", required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("ks-check", cmd_ks_check,
            help="down-up pattern avoidance in a labelled sample")
    p.add_argument("--term", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=40)
    p.add_argument("--seed", type=int, default=None)

    p = add("neg-graph", cmd_neg_graph, help="build or check the grid graph")
    p.add_argument("action", choices=("build", "check"))
    p.add_argument("--params", default="-", help="params JSON (build)")
    p.add_argument("graph", nargs="?", default="-", help="graph JSON (check)")

    p = add("ks", cmd_ks, help="value-tree search, embedding and verification")
    p.add_argument("action", choices=("search", "embed", "verify"))
    p.add_argument("--delta", type=int, default=2)
    p.add_argument("--mu-range", dest="mu_range", type=int, default=6)
    p.add_argument("--level-bound", dest="level_bound", type=int, default=2)
    p.add_argument("--oracle", default="const", choices=sorted(_KS_ORACLES))
    p.add_argument("--tree", default="-", help="tree JSON file")
    p.add_argument("--source-host", dest="source_host", default=None)
    p.add_argument("--target-host", dest="target_host", default=None)
    p.add_argument("--f", default=None, help="JSON element of the source host")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ScatterCalcError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (json.JSONDecodeError, KeyError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
