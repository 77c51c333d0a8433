"""
Command-line front end.

    python main.py spectral fano.hg
    python main.py berge-check --pattern c3 star.hg
    python main.py berge-check --pattern kst:2,2 --exact-head 0,1 --witness hm.hg
    python main.py bound eval --name spex_kst_c3 --params n=7,r=3,s=2,t=2
    python main.py verify --corpus exhaustive --n 7 --r 3 --forbid c3,k2:2 --checks spex_kst_c3,ex_kst_c3
    python main.py extremal --n 7 --r 3 --forbid c3,k2:2 --objective rho

Exit status: 0 on success, 1 when a pattern is found, a bound is violated or
an iteration fails to converge, 2 on bad input.
"""

import argparse
import logging
import re
import sys
import time
from typing import Dict, List, Optional, Tuple

from berge import PatternGraph, contains_berge, contains_berge_naive, contains_exact_berge_kst, patterns_from_spec
from bounds import CLOSED_FORMS, HYPERGRAPH_CHECKS, evaluate_closed_form, hm_codegree_check, hm_edge_check, run_check
from config import DEFAULT_THREADS, LOG_LEVEL, TOOL_VERSION
from exceptions import ConvergenceError, HypergraphError, InputError
from extremal import CORPUS_KINDS, OBJECTIVES, SearchSpec, build_corpus, enumerate_extremal, random_linear, random_uniform, verify_corpus
from hypergraph import HmBipartition, UniformHypergraph
from hypergraph_io import format_json, format_text, read_hypergraph, write_hypergraph
from reports import BOUND_HEADERS, RunReport, banner, bound_rows, digest_file, format_table, format_value
from shadow import check_shadow_bound, multigraph_spectral_radius, two_shadow
from spectral import spectral_radius

logger = logging.getLogger(__name__)

HM_CHECKS = ("hm_edge", "hm_codegree")


class _Parser(argparse.ArgumentParser):
    """Raise instead of exiting so bad flags map to status 2 through dispatch."""

    def error(self, message):
        raise InputError(message)


# ---------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------
_NUMBER = re.compile(r"^[+-]?\d+$")


def _scalar(text: str):
    text = text.strip()
    if _NUMBER.match(text):
        return int(text)
    try:
        return float(text)
    except ValueError:
        raise InputError(f"expected a number, got {text!r}") from None


def parse_params(text: str) -> Dict[str, object]:
    """``n=7,r=3`` -> {"n": 7, "r": 3}; ``xs=1:2:3`` gives a list."""
    params = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        if "=" not in item:
            raise InputError(f"parameter {item!r} is not of the form name=value")
        key, value = (s.strip() for s in item.split("=", 1))
        params[key] = [_scalar(v) for v in value.split(":")] if ":" in value else _scalar(value)
    return params


def _vertex_list(text: Optional[str]) -> List[int]:
    if not text:
        return []
    return [int(_scalar(v)) for v in text.split(",") if v.strip()]


def _load(path: str, report: RunReport) -> UniformHypergraph:
    hypergraph = read_hypergraph(path)
    report.input_digests[path] = digest_file(path)
    return hypergraph


# ---------------------------------------------------------------------
# Subcommands; each returns an exit status and fills the report
# ---------------------------------------------------------------------
def cmd_spectral(args, report: RunReport) -> int:
    hypergraph = _load(args.file, report)
    result = spectral_radius(hypergraph, tol=args.tol, max_iter=args.max_iter, workers=args.threads)
    report.add(dict(result.to_dict(include_vector=args.vector), kind="spectral", input=args.file))
    if not args.json:
        print(banner(f"SPECTRAL RADIUS: {args.file}"))
        print(f"  r={hypergraph.r}  n={hypergraph.n}  e={hypergraph.m}  components={result.components}")
        print(f"  rho = {result.rho:.12g}")
        print(f"  enclosure [{result.lower:.12g}, {result.upper:.12g}]  residual {result.residual:.3g}")
        print(f"  iterations {result.iterations}  converged {format_value(result.converged)}")
        if args.vector:
            print("  eigenvector " + " ".join(f"{v:.10g}" for v in result.eigenvector))
    return 0 if result.converged else 1


def cmd_shadow(args, report: RunReport) -> int:
    hypergraph = _load(args.file, report)
    graph = two_shadow(hypergraph)
    result = multigraph_spectral_radius(graph, workers=args.threads)
    bound = check_shadow_bound(hypergraph)
    report.add(
        {
            "kind": "shadow",
            "input": args.file,
            "pairs": graph.edge_count(),
            "total_multiplicity": graph.total_multiplicity(),
            "simple": graph.is_simple(),
            "spectral": result.to_dict(),
        }
    )
    report.add(bound.to_dict())
    failed = bound.violated or bound.extra.get("equality_matches_regularity") is False
    if not args.json:
        print(banner(f"2-SHADOW: {args.file}"))
        print(f"  adjacent pairs {graph.edge_count()}  total multiplicity {graph.total_multiplicity()}")
        print(f"  rho(shadow) = {result.rho:.12g}")
        print(format_table(BOUND_HEADERS, bound_rows([bound])))
        if "equality" in bound.extra:
            print(f"  equality {format_value(bound.extra['equality'])}  regular {format_value(bound.extra['regular'])}")
    return 1 if failed else 0


def _exact_search(hypergraph: UniformHypergraph, pattern: PatternGraph, partition: HmBipartition, fast_paths: bool):
    if pattern.parts is None:
        raise InputError(f"--exact-head needs a K_(s,t) pattern, got {pattern.label()}")
    side_a, side_b = pattern.parts
    return contains_exact_berge_kst(hypergraph, partition, len(side_a), len(side_b), fast_paths=fast_paths)


def cmd_berge_check(args, report: RunReport) -> int:
    hypergraph = _load(args.file, report)
    partition = None
    if args.exact_head is not None:
        if args.naive:
            raise InputError("--exact-head cannot be combined with --naive")
        partition = HmBipartition.from_head(hypergraph.n, _vertex_list(args.exact_head))
        partition.validate(hypergraph.n)
    found_any = False
    rows = []
    for pattern in patterns_from_spec(args.pattern):
        if partition is not None:
            witness = _exact_search(hypergraph, pattern, partition, not args.no_fast_paths)
        elif args.naive:
            witness = contains_berge_naive(hypergraph, pattern)
        else:
            witness = contains_berge(hypergraph, pattern, fast_paths=not args.no_fast_paths)
        found_any = found_any or witness is not None
        item = {"kind": "berge", "input": args.file, "pattern": pattern.label(), "found": witness is not None}
        if partition is not None:
            item["exact_head"] = sorted(partition.head)
        if witness is not None and args.witness:
            item["witness"] = witness.to_dict()
        report.add(item)
        row = [pattern.label(), "found" if witness else "not found"]
        if args.witness:
            row += [list(witness.vertex_map) if witness else "-", witness.edge_map if witness else "-"]
        rows.append(row)
    if not args.json:
        headers = ["Pattern", "Result"]
        if args.witness:
            headers += ["Vertex map", "Witness edges"]
        print(banner(f"BERGE CONTAINMENT: {args.file}"))
        print(format_table(headers, rows))
    return 1 if found_any else 0


def cmd_bound(args, report: RunReport) -> int:
    if args.bound_command == "eval":
        result = evaluate_closed_form(args.name, parse_params(args.params))
        report.add(result.to_dict())
        if not args.json:
            print(format_value(result.bound_value))
            if result.hypothesis_ok is not True:
                print(f"  hypothesis: {format_value(result.hypothesis_ok)}", file=sys.stderr)
        return 0

    hypergraph = _load(args.input, report)
    if args.name in HM_CHECKS:
        if args.head is None:
            raise InputError(f"{args.name} needs --head")
        partition = HmBipartition.from_head(hypergraph.n, _vertex_list(args.head))
        if args.name == "hm_edge":
            result = hm_edge_check(hypergraph, partition, args.s, args.t, args.k, strict=args.strict)
        else:
            result = hm_codegree_check(hypergraph, partition, args.s, args.t, strict=args.strict)
    else:
        result = run_check(args.name, hypergraph, s=args.s, t=args.t, P=args.P, Q=args.Q, strict=args.strict)
    report.add(result.to_dict())
    if not args.json:
        print(banner(f"BOUND {args.name}: {args.input}"))
        print(format_table(BOUND_HEADERS, bound_rows([result])))
    return 1 if result.violated else 0


def cmd_verify(args, report: RunReport) -> int:
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = [c for c in checks if c not in HYPERGRAPH_CHECKS]
    if unknown:
        raise InputError(f"unknown checks {unknown}; choose from {', '.join(sorted(HYPERGRAPH_CHECKS))}")
    forbidden = patterns_from_spec(args.forbid) if args.forbid else []
    corpus = build_corpus(
        args.corpus,
        args.n,
        args.r,
        count=args.count,
        seed=args.seed,
        forbidden=forbidden,
        max_edges=args.max_edges,
        connected_only=args.connected,
        workers=args.threads,
    )
    result = verify_corpus(corpus, checks, s=args.s, t=args.t, strict=args.strict)
    report.add(result.to_dict())
    if not args.json:
        print(banner(f"CORPUS {args.corpus}: n={args.n} r={args.r}"))
        print(f"  hypergraphs checked: {result.hypergraphs}")
        rows = [
            [name, s.checked, s.applicable, s.violations, format_value(s.worst_slack)]
            for name, s in result.summaries.items()
        ]
        print(format_table(["Check", "Checked", "Applicable", "Violations", "Worst slack"], rows))
        for violation in result.violations[:10]:
            print(f"  VIOLATION {violation['check']}: edges {violation['hypergraph']['edges']}", file=sys.stderr)
    return 0 if result.ok else 1


def cmd_extremal(args, report: RunReport) -> int:
    spec = SearchSpec(
        n=args.n,
        r=args.r,
        linear=args.linear,
        forbidden=tuple(patterns_from_spec(args.forbid)) if args.forbid else (),
        objective=args.objective,
        node_budget=args.budget_nodes,
        time_budget=args.budget_time,
        max_edges=args.max_edges,
        prune=not args.no_prune,
    )
    result = enumerate_extremal(spec, workers=args.threads)
    report.add(result.to_dict())
    if not args.json:
        print(banner(f"EXTREMAL SEARCH: n={args.n} r={args.r} objective={args.objective}"))
        print(f"  optimum {format_value(result.value)}  ({'exhaustive' if result.exhaustive else 'PARTIAL: budget hit'})")
        print(f"  classes {result.classes}  nodes {result.nodes}  witnesses {len(result.witnesses)}")
        for witness in result.witnesses[: args.show]:
            print("  " + " ".join("{" + ",".join(map(str, e)) + "}" for e in witness.edges))
    return 0


def cmd_gen(args, report: RunReport) -> int:
    if args.uniform:
        hypergraph = random_uniform(args.n, args.r, args.seed, args.edges if args.edges is not None else args.n)
    else:
        hypergraph = random_linear(args.n, args.r, args.seed, args.max_edges)
    report.add({"kind": "hypergraph", "r": hypergraph.r, "n": hypergraph.n, "edges": [list(e) for e in hypergraph.edges]})
    if args.output:
        write_hypergraph(hypergraph, args.output, fmt=args.format)
        logger.info("Wrote %d edges to %s", hypergraph.m, args.output)
    elif not args.json:
        text = format_json(hypergraph) if args.format == "json" else format_text(hypergraph)
        print(text, end="" if text.endswith("\n") else "\n")
    return 0


COMMANDS = {
    "spectral": cmd_spectral,
    "shadow": cmd_shadow,
    "berge-check": cmd_berge_check,
    "bound": cmd_bound,
    "verify": cmd_verify,
    "extremal": cmd_extremal,
    "gen": cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print a JSON run report instead of text.")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging on standard error.")
    common.add_argument("--threads", type=int, default=DEFAULT_THREADS, help="Worker count (default from HYPERSPEC_THREADS).")

    parser = _Parser(prog="hyperspec", description="Spectral and extremal analysis of uniform hypergraphs.")
    parser.add_argument("--version", action="version", version=f"hyperspec {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectral", parents=[common], help="Spectral radius of the adjacency tensor.")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--vector", action="store_true", help="Also print the eigenvector.")

    p = sub.add_parser("shadow", parents=[common], help="2-shadow spectral radius and the shadow bound.")
    p.add_argument("file")

    p = sub.add_parser("berge-check", parents=[common], help="Berge pattern containment.")
    p.add_argument("file")
    p.add_argument("--pattern", required=True, help="e.g. c3, c4, k2:3, kst:2,3, p2, file:edges.txt")
    p.add_argument("--naive", action="store_true", help="Use full enumeration instead of the matching search.")
    p.add_argument("--no-fast-paths", action="store_true")
    p.add_argument("--exact-head", help="Comma-separated head vertices; searches K_(s,t) with s-side in the head.")
    p.add_argument("--witness", action="store_true", help="Print the embedding for every pattern found.")

    p = sub.add_parser("bound", help="Evaluate or verify a bound.")
    bound_sub = p.add_subparsers(dest="bound_command", required=True)
    q = bound_sub.add_parser("eval", parents=[common])
    q.add_argument("--name", required=True, choices=sorted(CLOSED_FORMS))
    q.add_argument("--params", default="", help="name=value pairs, comma separated")
    q = bound_sub.add_parser("verify", parents=[common])
    q.add_argument("--name", required=True, choices=sorted(HYPERGRAPH_CHECKS) + list(HM_CHECKS))
    q.add_argument("--input", required=True)
    q.add_argument("--strict", action="store_true", help="Re-check Berge-freeness hypotheses.")
    q.add_argument("--s", type=int, default=2)
    q.add_argument("--t", type=int, default=2)
    q.add_argument("--k", type=int, default=0)
    q.add_argument("--P", type=float, default=None)
    q.add_argument("--Q", type=float, default=None)
    q.add_argument("--head", default=None, help="Head vertices of the hm-bipartition, comma separated.")

    p = sub.add_parser("verify", parents=[common], help="Run bound checks over a generated corpus.")
    p.add_argument("--corpus", choices=CORPUS_KINDS, default="random-linear")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--checks", default="shadow")
    p.add_argument("--forbid", default="")
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--max-edges", type=int, default=None)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("extremal", parents=[common], help="Exhaustive ex/spex search.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--linear", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--forbid", default="")
    p.add_argument("--objective", choices=OBJECTIVES, default="edges")
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--budget-time", type=float, default=None)
    p.add_argument("--max-edges", type=int, default=None)
    p.add_argument("--no-prune", action="store_true", help="Skip pattern checks during expansion; test classes once at the end.")
    p.add_argument("--show", type=int, default=5, help="Witnesses to print.")

    p = sub.add_parser("gen", parents=[common], help="Random hypergraph generation.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-edges", type=int, default=None)
    p.add_argument("--uniform", action="store_true", help="Draw edges without the linearity constraint.")
    p.add_argument("--edges", type=int, default=None, help="Edge count for --uniform.")
    p.add_argument("--format", choices=("text", "json"), default=None, help="Defaults to the output suffix, else text.")
    p.add_argument("--output", default=None)
    return parser


def dispatch(argv: Optional[List[str]] = None) -> Tuple[int, RunReport]:
    argv = list(sys.argv[1:] if argv is None else argv)
    report = RunReport(command=argv)
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.DEBUG if args.verbose else LOG_LEVEL,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
        )
        if args.threads < 1:
            raise InputError(f"--threads must be at least 1, got {args.threads}")
        status = COMMANDS[args.command](args, report)
    except ConvergenceError as e:
        print(f"error: {e}", file=sys.stderr)
        status = 1
    except HypergraphError as e:
        print(f"error: {e}", file=sys.stderr)
        report.exit_status = 2
        report.wall_time = time.perf_counter() - started
        return 2, report

    report.exit_status = status
    report.wall_time = time.perf_counter() - started
    if getattr(args, "json", False):
        print(report.to_json())
    return status, report


def main(argv: Optional[List[str]] = None) -> int:
    status, _ = dispatch(argv)
    return status


if __name__ == "__main__":
    sys.exit(main())
