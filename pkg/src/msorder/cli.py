"""Command-line front end.

Exit codes: 0 success, 1 a checked property or verdict is false, 2 bad input,
3 a computation budget was exceeded.  With ``--json`` results go to stdout as
JSON and errors to stderr as ``{"error": ..., "message": ..., "exit_code": ...}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .decomposition import CUT_MAX_N, cotree, cotree_stats, cut_witness
from .forests import is_chordal, split_partition
from .generators import complete_bipartite, generate
from .graph import BudgetExceeded, Graph, PortedGraph, complement, connected_components
from .graphio import GraphFormatError, dumps, loads
from .measures import MINOR_MAX_N, SPARSE_MAX_N, has_minor, is_r_sparse, max_density, sep_witness
from .mso.evaluate import SET_QUANTIFIER_MAX, evaluate
from .mso.structure import encode
from .mso.syntax import FormulaSyntaxError, parse_formula
from .orders import (
    OrderCertificate,
    PreconditionError,
    order_bipartite_supergraph,
    order_chordal,
    order_cograph,
    order_minor_free,
    order_multipartite,
    order_split,
    order_tree_bounded_degree,
    verify_certificate,
)
from .properties import default_corpus, run_suite
from .reductions import reduction_invariant_report
from .orders.traced import coterm_text

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

MEASURES = ("sep", "cut", "sparse", "density", "minor", "components", "chordal", "split", "cotree")
SCHEMES = ("tree", "minor_free", "bipartite", "multipartite", "split", "chordal", "cograph")
TRANSFORMS = ("Inc", "IS", "BP")


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    budget_n: int | None = None
    budget_sets: int = SET_QUANTIFIER_MAX
    seed: int = 0
    json: bool = False
    output: str | None = None

    def __post_init__(self):
        if self.budget_n is not None and self.budget_n < 1:
            raise InputError("--budget-n must be positive")
        if self.budget_sets < 1:
            raise InputError("--budget-sets must be positive")

    def cap_n(self, g: Graph, default: int, what: str) -> int:
        cap = default if self.budget_n is None else self.budget_n
        if g.n > cap:
            raise BudgetExceeded(f"{what} capped at n <= {cap} (got {g.n})")
        return cap


# --- I/O helpers -------------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _read_graph(path: str) -> Graph:
    g = loads(_read_text(path))
    if isinstance(g, PortedGraph):
        g = g.graph
    return g


def _emit(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_result(cfg: RunConfig, data: dict, plain: str) -> None:
    _emit(cfg, json.dumps(data, indent=2, sort_keys=True) if cfg.json else plain)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"expected a comma-separated list of integers, got {text!r}") from None


def _need(value, flag: str, command: str):
    if value is None:
        raise InputError(f"{command} needs {flag}")
    return value


# --- commands ----------------------------------------------------------------


def cmd_gen(args, cfg: RunConfig) -> int:
    g = generate(args.family, *args.params)
    _emit(cfg, dumps(g))
    return EXIT_OK


def cmd_measure(args, cfg: RunConfig) -> int:
    g = _read_graph(args.graph)
    name = args.measure
    verdict: bool | None = None
    if name == "sep":
        k = _need(args.k, "--k", "sep")
        if cfg.budget_n is not None:
            cfg.cap_n(g, cfg.budget_n, "sep")
        w = sep_witness(g, k)
        data = {"measure": "sep", "k": k, "value": w.value, "separator": list(w.separator)}
        plain = str(w.value)
    elif name == "cut":
        k = _need(args.k, "--k", "cut")
        cap = cfg.cap_n(g, CUT_MAX_N, "cut")
        w = cut_witness(g, k, max_n=cap)
        value = 0 if w is None else w.value
        data = {"measure": "cut", "k": k, "value": value}
        if w is not None:
            data["labels"] = list(w.labels)
            data["parts"] = [sorted(p) for p in w.parts]
        plain = str(value)
    elif name in ("sparse", "density"):
        cap = cfg.cap_n(g, SPARSE_MAX_N, "density")
        if name == "density":
            dens, xs = max_density(g, cap)
            data = {"measure": "density", "value": str(dens), "witness": sorted(xs)}
            plain = str(dens)
        else:
            r = Fraction(_need(args.r, "--r", "sparse"))
            verdict, xs = is_r_sparse(g, r, cap)
            data = {"measure": "sparse", "r": str(r), "value": verdict, "witness": None if xs is None else sorted(xs)}
            plain = str(verdict).lower()
    elif name == "minor":
        p = _need(args.p, "--p", "minor")
        cap = cfg.cap_n(g, MINOR_MAX_N, "minor search")
        found = has_minor(g, complete_bipartite(p, p), cap)
        verdict = not found
        data = {"measure": "minor", "p": p, "has_kpp_minor": found}
        plain = f"K_{{{p},{p}}} minor: {'yes' if found else 'no'}"
    elif name == "components":
        comps = connected_components(g)
        data = {"measure": "components", "value": len(comps), "components": sorted(sorted(c) for c in comps)}
        plain = str(len(comps))
    elif name == "chordal":
        verdict = is_chordal(g)
        data = {"measure": "chordal", "value": verdict}
        plain = str(verdict).lower()
    elif name == "split":
        part = split_partition(g)
        verdict = part is not None
        data = {"measure": "split", "value": verdict}
        if part is not None:
            data["clique_side"] = sorted(part.clique_side)
            data["independent_side"] = sorted(part.independent_side)
        plain = str(verdict).lower()
    elif name == "cotree":
        t = cotree(g)
        verdict = t is not None
        if t is None:
            data = {"measure": "cotree", "value": None}
            plain = "none"
        else:
            height, outdegree = cotree_stats(t)
            text = coterm_text(t)
            data = {"measure": "cotree", "value": text, "height": height, "outdegree": outdegree}
            plain = text
    else:
        raise InputError(f"unknown measure {name!r}")
    _emit_result(cfg, data, plain)
    return EXIT_FALSE if verdict is False else EXIT_OK


def _bipartite_sides(g: Graph, a_text: str | None) -> tuple[list[int], list[int]]:
    if a_text is not None:
        a = _int_list(a_text)
        bad = [v for v in a if not 0 <= v < g.n]
        if bad:
            raise InputError(f"--a-side mentions non-vertices {bad}")
        return sorted(a), [v for v in g.vertices() if v not in set(a)]
    # Without explicit sides the graph must be complete bipartite itself.
    comps = sorted((sorted(c) for c in connected_components(complement(g))), key=lambda c: (len(c), c))
    if len(comps) != 2:
        raise InputError("pass --a-side unless the graph is complete bipartite")
    return comps[0], comps[1]


def cmd_order(args, cfg: RunConfig) -> int:
    g = _read_graph(args.graph)
    scheme = args.scheme
    if scheme == "tree":
        cert = order_tree_bounded_degree(g, _need(args.d, "--d", "tree"))
    elif scheme == "minor_free":
        cfg.cap_n(g, MINOR_MAX_N, "minor search")
        cert = order_minor_free(g, _need(args.p, "--p", "minor_free"), _need(args.d, "--d", "minor_free"))
    elif scheme == "bipartite":
        a, b = _bipartite_sides(g, args.a_side)
        cert = order_bipartite_supergraph(g, a, b, _need(args.s, "--s", "bipartite"), args.r or 0)
    elif scheme == "multipartite":
        cert = order_multipartite(g)
    elif scheme == "split":
        cert = order_split(g, _need(args.s, "--s", "split"))
    elif scheme == "chordal":
        cert = order_chordal(g, _need(args.s, "--s", "chordal"))
    elif scheme == "cograph":
        cert = order_cograph(g, _need(args.d, "--d", "cograph"))
    else:
        raise InputError(f"unknown scheme {scheme!r}")
    _emit(cfg, cert.to_json())
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    g = _read_graph(args.graph)
    cert = OrderCertificate.from_json(_read_text(args.certificate))
    report = verify_certificate(g, cert, max_universe=cfg.budget_sets)
    plain = "true" if report.ok else f"false: {report.reason}"
    _emit_result(cfg, {"scheme": cert.scheme, **report.to_dict()}, plain)
    return EXIT_OK if report.ok else EXIT_FALSE


def _element(value: str) -> str:
    # A bare vertex id is shorthand for its element name.
    return f"v:{value}" if value.isdigit() else value


def _valuation(assignments: Sequence[str]) -> dict[str, object]:
    out: dict[str, object] = {}
    for item in assignments:
        name, sep_, value = item.partition("=")
        if not sep_ or not name:
            raise InputError(f"assignment {item!r} is not NAME=VALUE")
        if name[0].isupper():
            out[name] = [_element(v) for v in value.split(",") if v]
        else:
            out[name] = _element(value)
    return out


def cmd_eval(args, cfg: RunConfig) -> int:
    g = _read_graph(args.graph)
    phi = parse_formula(_read_text(args.formula))
    s = encode(g, args.universe)
    valuation = _valuation(args.assign)
    try:
        value = evaluate(s, phi, valuation, max_universe=cfg.budget_sets)
    except KeyError as exc:
        raise InputError(f"unknown element {exc}") from None
    _emit_result(cfg, {"universe": args.universe, "value": value}, str(value).lower())
    return EXIT_OK if value else EXIT_FALSE


def cmd_reduce(args, cfg: RunConfig) -> int:
    g = _read_graph(args.graph)
    report = reduction_invariant_report(g, _need(args.k, "--k", "reduce"), args.transform)
    if cfg.json:
        _emit(cfg, report.to_json())
    else:
        lines = [f"{args.transform} n={report.n} m={report.m}"]
        for m in report.measured:
            lines.append(f"{m.measure}(k={m.k}): base={m.base} transformed={m.transformed}")
        for v in report.verdicts:
            lines.append(f"{'PASS' if v.holds else 'FAIL'} {v.name}: {v.lhs} {v.relation} {v.rhs}")
        _emit(cfg, "\n".join(lines))
    return EXIT_OK if report.ok else EXIT_FALSE


def cmd_suite(args, cfg: RunConfig) -> int:
    if args.corpus is None:
        graphs = default_corpus(cfg.seed)
        source = f"seeded corpus (seed {cfg.seed})"
    else:
        root = Path(args.corpus)
        if not root.is_dir():
            raise InputError(f"{args.corpus} is not a directory")
        files = sorted(p for p in root.iterdir() if p.is_file())
        graphs = [_read_graph(str(p)) for p in files]
        source = str(root)
    results = run_suite(graphs)
    failed = any(r.failed for r in results)
    if cfg.json:
        _emit(cfg, json.dumps({"corpus": source, "graphs": len(graphs), "properties": [r.to_dict() for r in results]}, indent=2))
    else:
        lines = [f"corpus: {source}, {len(graphs)} graphs"]
        for r in results:
            status = "FAIL" if r.failed else "PASS"
            lines.append(f"{status} {r.name}: passed={r.passed} failed={r.failed} skipped={r.skipped}")
        _emit(cfg, "\n".join(lines))
    return EXIT_FALSE if failed else EXIT_OK


# --- argument parsing --------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output and errors")
    p.add_argument("--budget-n", type=int, default=argparse.SUPPRESS, help="max vertices for exact searches")
    p.add_argument("--budget-sets", type=int, default=argparse.SUPPRESS, help="max universe for set quantifiers")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for generated corpora (default 0)")
    p.add_argument("-o", "--output", default=argparse.SUPPRESS, help="write the result to this file")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="msorder", parents=[common], description="MSO-orderability toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a graph from a family")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("measure", parents=[common], help="compute a graph measure")
    p.add_argument("measure", choices=MEASURES)
    p.add_argument("graph")
    p.add_argument("--k", type=int)
    p.add_argument("--r")
    p.add_argument("--p", type=int)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("order", parents=[common], help="build an order certificate")
    p.add_argument("scheme", choices=SCHEMES)
    p.add_argument("graph")
    p.add_argument("--s", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--a-side", help="comma-separated vertex ids of the smaller side (bipartite)")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("verify", parents=[common], help="check a certificate against a graph")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", parents=[common], help="evaluate a formula on a graph")
    p.add_argument("graph")
    p.add_argument("formula")
    p.add_argument("--universe", choices=("floor", "ceil"), default="floor")
    p.add_argument("--assign", action="append", default=[], metavar="NAME=VALUE",
                   help="x=v:0 (or x=0) for individuals, X=v:0,e:0-1 for sets")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("reduce", parents=[common], help="check reduction inequalities")
    p.add_argument("transform", choices=TRANSFORMS)
    p.add_argument("graph")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("suite", parents=[common], help="run the property suite over a corpus")
    p.add_argument("corpus", nargs="?")
    p.set_defaults(func=cmd_suite)
    return parser


def _fail(cfg_json: bool, kind: str, message: str, code: int) -> int:
    if cfg_json:
        sys.stderr.write(json.dumps({"error": kind, "exit_code": code, "message": message}, sort_keys=True) + "\n")
    else:
        sys.stderr.write(f"msorder: {kind}: {message}\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    as_json = getattr(args, "json", False)
    try:
        cfg = RunConfig(
            budget_n=getattr(args, "budget_n", None),
            budget_sets=getattr(args, "budget_sets", SET_QUANTIFIER_MAX),
            seed=getattr(args, "seed", 0),
            json=as_json,
            output=getattr(args, "output", None),
        )
        return args.func(args, cfg)
    except BudgetExceeded as exc:
        return _fail(as_json, "budget", str(exc), EXIT_BUDGET)
    except PreconditionError as exc:
        return _fail(as_json, "precondition", str(exc), EXIT_INPUT)
    except (GraphFormatError, FormulaSyntaxError, InputError, ValueError) as exc:
        return _fail(as_json, "input", str(exc), EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
