"""Command line: ``branched-crystals <command> ...``.

Exit codes: 0 success, 1 parse or usage error, 2 window exhausted, 3 verification failed.
Defaults for ``window``, ``safe_margin``, ``format`` and ``errata`` may be set in a
``branched-crystals.cfg`` file (``key = value`` lines) in the working directory.
"""
from __future__ import annotations

import argparse
import configparser
import itertools
import json
import os
import sys

from .category_o import evaluate, expr_character, expr_top
from .core import Atom, CrystalError, Node, Pair, Tensor, as_expr, factor_count, max_weight, tensor
from .decompose import WeightWindow, WindowExhausted, decompose, default_margin
from .render import dumps, render_dot, render_json, render_multiset, render_rows, render_table
from .syntax import ParseError, parse_crystal, parse_element, parse_module
from .tables import case_for, oracle_decompose, sweep_pairs, write_errata
from .tensor import rule_report
from . import verify as V

CONFIG_NAME = "branched-crystals.cfg"
EXIT_OK, EXIT_PARSE, EXIT_WINDOW, EXIT_FAILED = 0, 1, 2, 3
SUITES = ("axioms", "cases", "comm", "assoc", "thm36", "predicates")


def load_config(directory: str = ".") -> dict:
    path = os.path.join(directory, CONFIG_NAME)
    if not os.path.exists(path):
        return {}
    cp = configparser.ConfigParser()
    with open(path, encoding="utf-8") as fh:
        cp.read_string("[defaults]\n" + fh.read())
    out = dict(cp["defaults"])
    for key in ("window", "safe_margin"):
        if key in out:
            out[key] = int(out[key])
    return out


def _range(text: str) -> tuple:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like 0..3, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("range is empty")
    return lo, hi


def build_parser(config: dict) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", type=int, default=config.get("window", 40),
                        help="enumerate down to weight -W (default 40)")
    common.add_argument("--safe-margin", type=int, default=config.get("safe_margin"),
                        help="report components with head weight >= -W + m (default 10 + 2 * factors)")
    common.add_argument("--format", choices=("table", "json", "dot"), default=config.get("format", "table"))

    p = argparse.ArgumentParser(prog="branched-crystals", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", parents=[common], help="decompose a crystal expression")
    d.add_argument("expr")

    o = sub.add_parser("oracle", parents=[common], help="closed-form table for a product of two labels")
    o.add_argument("expr", help='two labels, e.g. "V(2) (x) M(1)"')

    v = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--range", type=_range, default=(0, 3), help="parameter range lo..hi (default 0..3)")
    v.add_argument("--errata", default=config.get("errata", "errata.json"), help="errata file written by 'cases'")

    c = sub.add_parser("character", parents=[common], help="weight dimensions of a module expression")
    c.add_argument("expr", help='e.g. "M(2) (+) T(0)" or "dual(M(2)) (x) V(3)"')
    c.add_argument("--weight", type=int, help="a single weight instead of a table")
    c.add_argument("--summands", action="store_true", help="list indecomposable summands instead")

    g = sub.add_parser("graph", parents=[common], help="DOT graph of a crystal expression")
    g.add_argument("expr")

    r = sub.add_parser("rules", parents=[common], help="tensor rule conditions at an element pair")
    r.add_argument("element", help='e.g. "V(1):b0 (x) V(1):b1"')
    return p


def _window(args, expr) -> WeightWindow:
    margin = args.safe_margin if args.safe_margin is not None else default_margin(expr)
    if args.window <= margin:
        raise ValueError(f"window {args.window} must exceed the safe margin {margin}")
    return WeightWindow.for_expr(expr, -args.window, margin)


def expr_of_element(x):
    if isinstance(x, Node):
        return Atom(x.label)
    return Tensor(expr_of_element(x.left), expr_of_element(x.right))


def cmd_decompose(args, out):
    expr = parse_crystal(args.expr)
    dec = decompose(expr, _window(args, expr))
    if args.format == "json":
        out.write(render_json(dec))
    elif args.format == "dot":
        out.write(render_dot(expr, dec.window.min_weight))
    else:
        out.write(render_table(dec))
    return EXIT_OK


def cmd_oracle(args, out):
    expr = parse_crystal(args.expr)
    if not (isinstance(expr, Tensor) and isinstance(expr.left, Atom) and isinstance(expr.right, Atom)):
        raise ParseError("oracle takes exactly two labels joined by (x)")
    a, b = expr.left.label, expr.right.label
    window = _window(args, expr)
    extra = {"expr": str(expr), "case": case_for(a, b).case_id,
             "window": {"min": window.min_weight, "safe": window.safe_weight}}
    fmt = "json" if args.format == "json" else "table"
    if fmt == "table":
        extra["window"] = f"min {window.min_weight}, safe {window.safe_weight}"
    out.write(render_multiset("closed-form table", oracle_decompose(a, b, window), fmt, extra))
    return EXIT_OK


def cmd_character(args, out):
    node = parse_module(args.expr)
    lo = -args.window
    if args.summands:
        out.write(render_multiset("summands", evaluate(node, lo), "json" if args.format == "json" else "table",
                                  {"expr": args.expr, "min": lo}))
        return EXIT_OK
    if args.weight is not None:
        value = expr_character(node, args.weight)
        out.write(dumps({"expr": args.expr, "weight": args.weight, "dim": value}) if args.format == "json"
                  else f"{value}\n")
        return EXIT_OK
    rows = [[w, expr_character(node, w)] for w in range(expr_top(node), lo - 1, -1)]
    rows = [r for r in rows if r[1]]
    if args.format == "json":
        out.write(dumps({"expr": args.expr, "dims": [{"weight": w, "dim": n} for w, n in rows]}))
    else:
        out.write(render_rows(["weight", "dim"], [[str(w), str(n)] for w, n in rows]))
    return EXIT_OK


def cmd_graph(args, out):
    expr = parse_crystal(args.expr)
    out.write(render_dot(expr, -args.window))
    return EXIT_OK


def cmd_rules(args, out):
    x = parse_element(args.element)
    if not isinstance(x, Pair):
        raise ParseError("rules needs an element pair joined by (x)")
    rep = rule_report(expr_of_element(x.left), expr_of_element(x.right), x.left, x.right)
    rep = {**rep, "element": str(x), "f": _el(rep["f"]), "e": _el(rep["e"])}
    if args.format == "json":
        out.write(dumps(rep))
    else:
        rows = [[k, "yes" if v else "no"] for k, v in rep["conditions"].items()]
        out.write(f"element  {rep['element']}\n")
        out.write(f"f rule   {rep['f_rule']} -> {rep['f']}\ne rule   {rep['e_rule']} -> {rep['e']}\n\n")
        out.write(render_rows(["condition", "holds"], rows))
    return EXIT_OK


def _el(x):
    return "0" if x is None else str(x)


def cmd_verify(args, out):
    lo, hi = args.range
    neg = -hi if hi > 0 else None
    labels = V.labels_in(max(lo, 0), hi, neg if lo >= 0 else lo)
    pair_margin = args.safe_margin if args.safe_margin is not None else default_margin(tensor(*labels[:2]))
    pair_window = WeightWindow(-args.window, -args.window + pair_margin)
    pairs = list(itertools.product(labels, labels))
    if args.suite == "axioms":
        triples = [tensor(a, b, c) for a, b, c in itertools.product(labels, repeat=3) if a.param + b.param + c.param <= 2]
        res = V.axioms_suite(labels, pairs, triples, -args.window)
    elif args.suite == "cases":
        swept = sweep_pairs(max(lo, 0), hi, neg if lo >= 0 else lo)
        res, entries = V.cases_suite(pair_window, swept)
        write_errata(entries, args.errata)
        res.stats["errata_file"] = args.errata
    elif args.suite == "comm":
        res = V.comm_suite(pairs, pair_window)
    elif args.suite == "thm36":
        res = V.thm36_suite(pairs, pair_window)
    elif args.suite == "predicates":
        res = V.predicates_suite(pairs, -args.window)
    else:
        margin = args.safe_margin if args.safe_margin is not None else default_margin(tensor(*labels[:3]))
        window = WeightWindow(-args.window, -args.window + margin)
        res = V.assoc_suite(list(itertools.product(labels, repeat=3)), window)
    if args.format == "json":
        out.write(dumps(res.as_dict()))
    else:
        verdict = "pass" if res.passed else "FAIL"
        out.write(f"{res.name}: {verdict} ({res.checked} checked, {len(res.failures)} failures)\n")
        for k, v in res.stats.items():
            out.write(f"  {k}: {json.dumps(v)}\n")
        for f in res.failures[:20]:
            out.write(f"  {json.dumps(f)}\n")
    return EXIT_OK if res.passed else EXIT_FAILED


COMMANDS = {"decompose": cmd_decompose, "oracle": cmd_oracle, "verify": cmd_verify,
            "character": cmd_character, "graph": cmd_graph, "rules": cmd_rules}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser(load_config())
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except WindowExhausted as exc:
        err.write(f"window exhausted: {exc}\n")
        return EXIT_WINDOW
    except (ValueError, CrystalError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
