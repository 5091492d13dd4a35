"""Command-line front end: validation, solving, sweeps and benchmarks.

Exit codes: 0 a path was found, 1 infeasible (or a negative cycle found by
``validate``), 2 input or usage error, 3 a tractability guard tripped.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .config import Guards
from .conservative import validate_conservative
from .errors import (ConservativenessViolationError, InvalidInputError,
                     OddPathError, ParameterTooLargeError, ParseError,
                     WrongSolverError)
from .forest import negative_forest
from .fpt import (negative_matching_parameter, solve_fpt_derandomized,
                  solve_fpt_negedges, solve_fpt_randomized)
from .generators import (leapfree_single_tree_graph, partial_ktree_graph,
                         random_conservative_graph)
from .graph import (WeightedGraph, constraints_from_text, graph_from_json,
                    graph_from_text, graph_to_text)
from .matching import FOUND
from .oracle import (ORACLE_MAX_VERTICES, SweepSpec, oracle_odd_path, sweep)
from .parity import ParityConstraints, solve_spcop
from .tree_solver import solve_negative_tree
from .treewidth import TreewidthStats, build_decomposition, make_nice, solve_treewidth

EXIT_FOUND = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT = 2
EXIT_GUARD = 3

AUTO = "auto"
TREE = "tree"
FPT_NEG = "fpt-neg"
FPT_RAND = "fpt-rand"
FPT_DERAND = "fpt-derand"
TREEWIDTH = "treewidth"
ORACLE = "oracle"
ALGORITHMS = (AUTO, TREE, FPT_NEG, FPT_RAND, FPT_DERAND, TREEWIDTH, ORACLE)


def _read_graph(path: str) -> tuple[WeightedGraph, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return graph_from_json(text), text
    return graph_from_text(text), text


def _terminals(g: WeightedGraph, args) -> tuple[int, int]:
    s = args.source if args.source is not None else g.source
    t = args.terminal if args.terminal is not None else g.terminal
    if s is None or t is None:
        raise InvalidInputError(
            "terminals missing: pass -s/-t or put 's'/'t' lines in the file")
    return s, t


def instance_parameters(g: WeightedGraph) -> dict:
    """Structural parameters used for routing and reporting."""
    neg = g.negative_edge_ids()
    trees = len(negative_forest(g).trees)
    mu = negative_matching_parameter(g)
    width = build_decomposition(g).width if g.n else 0
    return {"n": g.n, "m": g.m, "neg_edges": len(neg), "trees": trees,
            "mu": mu, "width_estimate": width}


def auto_select(g: WeightedGraph, guards: Guards) -> str:
    """Route by the applicability conditions of the solvers."""
    params = instance_parameters(g)
    if params["trees"] <= 1:
        return TREE
    if 2 * params["mu"] <= guards.mu2_guard:
        return FPT_DERAND
    if params["width_estimate"] <= guards.width_guard:
        return TREEWIDTH
    raise ParameterTooLargeError(
        "no tractable algorithm within budgets: "
        f"trees={params['trees']} neg_edges={params['neg_edges']} "
        f"mu={params['mu']} width_estimate={params['width_estimate']}",
        "instance", params["mu"], guards.mu2_guard)


def dispatch(g: WeightedGraph, s: int, t: int, algorithm: str, guards: Guards,
             *, seed: int = 0, trials: int | None = None,
             rank_reduce: bool = False, exact_width: bool = False,
             assume_conservative: bool = False) -> tuple:
    """Run one algorithm; returns (solution, stats dict)."""
    stats: dict = {}
    if algorithm == TREE:
        sol = solve_negative_tree(g, s, t, assume_conservative=assume_conservative,
                                  disjoint_guard=guards.disjoint_guard)
    elif algorithm == FPT_NEG:
        stats["guesses"] = 1 << len(g.negative_edge_ids())
        sol = solve_fpt_negedges(g, s, t, guard=guards.negedge_guard,
                                 assume_conservative=assume_conservative)
    elif algorithm == FPT_RAND:
        sol = solve_fpt_randomized(g, s, t, seed=seed, trials=trials,
                                   guard=guards.mu2_guard,
                                   assume_conservative=assume_conservative)
    elif algorithm == FPT_DERAND:
        sol = solve_fpt_derandomized(g, s, t, guard=guards.mu2_guard,
                                     assume_conservative=assume_conservative)
    elif algorithm == TREEWIDTH:
        tw_stats = TreewidthStats()
        sol = solve_treewidth(g, s, t, width_guard=guards.width_guard,
                              rank_reduce=rank_reduce, exact_width=exact_width,
                              stats=tw_stats)
        stats.update({"width": tw_stats.width, "nodes": tw_stats.nodes,
                      "table_entries": tw_stats.table_entries})
    elif algorithm == ORACLE:
        if g.n > min(guards.oracle_guard, ORACLE_MAX_VERTICES):
            raise ParameterTooLargeError("oracle guard exceeded", "n", g.n,
                                         guards.oracle_guard)
        sol = oracle_odd_path(g, s, t)
    else:
        raise InvalidInputError(f"unknown algorithm {algorithm!r}")
    return sol, stats


def cmd_validate(args, guards: Guards) -> int:
    g, _text = _read_graph(args.graph)
    report = validate_conservative(g)
    payload = {"conservative": report.conservative}
    if not report.conservative:
        payload["witness_cycle"] = list(report.witness_cycle or ())
        payload["witness_weight"] = str(report.witness_weight)
    print(json.dumps(payload))
    return EXIT_FOUND if report.conservative else EXIT_INFEASIBLE


def cmd_solve(args, guards: Guards) -> int:
    g, _text = _read_graph(args.graph)
    s, t = _terminals(g, args)
    report = validate_conservative(g)
    if not report.conservative:
        raise ConservativenessViolationError(
            f"weights admit negative cycle {list(report.witness_cycle or ())}",
            report.witness_cycle)
    algorithm = args.algorithm
    if algorithm == AUTO:
        algorithm = auto_select(g, guards)
    t0 = time.perf_counter()
    sol, stats = dispatch(g, s, t, algorithm, guards, seed=args.seed,
                          trials=args.trials, rank_reduce=args.rank_reduce,
                          exact_width=args.exact_width,
                          assume_conservative=True)
    stats["time_ms"] = round(1000 * (time.perf_counter() - t0), 3)
    payload = {
        "status": sol.status,
        "weight": str(sol.weight) if sol.found else None,
        "path": list(sol.vertices) if sol.found else None,
        "algorithm": algorithm,
        "stats": stats,
    }
    print(json.dumps(payload))
    return EXIT_FOUND if sol.found else EXIT_INFEASIBLE


def cmd_spcop(args, guards: Guards) -> int:
    g, text = _read_graph(args.graph)
    s, t = _terminals(g, args)
    f_even, f_odd = constraints_from_text(text, g)
    c = ParityConstraints(f_even, f_odd)
    t0 = time.perf_counter()
    sol = solve_spcop(g, s, t, c)
    payload = {
        "status": sol.status,
        "weight": str(sol.weight) if sol.found else None,
        "path": list(sol.vertices) if sol.found else None,
        "stats": {"time_ms": round(1000 * (time.perf_counter() - t0), 3)},
    }
    print(json.dumps(payload))
    return EXIT_FOUND if sol.found else EXIT_INFEASIBLE


def cmd_decompose(args, guards: Guards) -> int:
    g, _text = _read_graph(args.graph)
    td = build_decomposition(g, exact=args.exact_width)
    lines = [f"width {td.width}"]
    for i, bag in enumerate(td.bags):
        lines.append("b " + " ".join(map(str, (i,) + tuple(sorted(bag)))))
    for a, b in td.tree_edges:
        lines.append(f"t {a} {b}")
    if args.nice:
        s, t = _terminals(g, args)
        nd = make_nice(td, g, s, t)
        lines.append(f"nice_nodes {len(nd.nodes)} root {nd.root}")
    print("\n".join(lines))
    return EXIT_FOUND


def cmd_oracle(args, guards: Guards) -> int:
    g, _text = _read_graph(args.graph)
    s, t = _terminals(g, args)
    sol, stats = dispatch(g, s, t, ORACLE, guards)
    payload = {"status": sol.status,
               "weight": str(sol.weight) if sol.found else None,
               "path": list(sol.vertices) if sol.found else None,
               "algorithm": ORACLE, "stats": stats}
    print(json.dumps(payload))
    return EXIT_FOUND if sol.found else EXIT_INFEASIBLE


def cmd_sweep(args, guards: Guards) -> int:
    palette = tuple(Fraction(tok) for tok in args.palette.split(","))
    spec = SweepSpec(max_n=args.max_n, weight_palette=palette,
                     instance_filter=args.filter, count=args.count,
                     seed=args.seed)
    solvers = {}
    for name in args.algorithms.split(","):
        name = name.strip()
        if not name:
            continue
        solvers[name] = lambda g, s, t, _n=name: dispatch(
            g, s, t, _n, guards, assume_conservative=True)[0]
    report = sweep(spec, solvers)
    lines = [json.dumps({"instances": report.instances,
                         "disagreements": report.disagreements,
                         "per_solver_failures": report.per_solver_failures})]
    if report.first_counterexample is not None:
        lines.append(json.dumps({"counterexample": report.first_counterexample}))
    print("\n".join(lines))
    return EXIT_FOUND if report.clean else EXIT_INFEASIBLE


def _bench_corpus(args) -> list[Path]:
    corpus = Path(args.corpus)
    corpus.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)
    written = []
    if args.generate:
        for n in (20, 50, 100, 150, 200):
            g = leapfree_single_tree_graph(rng, n, extra_edges=n, tree_edges=5)
            g.source, g.terminal = 0, n - 1
            path = corpus / f"single_tree_n{n}.graph"
            path.write_text(graph_to_text(g), encoding="utf-8")
            written.append(path)
        for n in (100, 250, 500):
            g = partial_ktree_graph(rng, n, 4, negative_tree_edges=4)
            g.source, g.terminal = 0, n - 1
            path = corpus / f"width4_n{n}.graph"
            path.write_text(graph_to_text(g), encoding="utf-8")
            written.append(path)
        for i in range(args.small_count):
            g = None
            while g is None:
                g = random_conservative_graph(
                    rng, rng.randint(6, 10),
                    tuple(map(Fraction, (-1, 0, 1, 2))), 0.5)
            g.source, g.terminal = 0, g.n - 1
            path = corpus / f"small_{i:03d}.graph"
            path.write_text(graph_to_text(g), encoding="utf-8")
            written.append(path)
    return written


def cmd_bench(args, guards: Guards) -> int:
    _bench_corpus(args)
    corpus = sorted(Path(args.corpus).glob("*.graph"))
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    writer = csv.writer(sys.stdout)
    writer.writerow(["instance", "algorithm", "status", "weight", "time_ms",
                     "n", "m", "neg_edges", "trees", "mu", "width_estimate"])
    for path in corpus:
        g, _text = _read_graph(str(path))
        if g.source is None or g.terminal is None:
            continue
        params = instance_parameters(g)
        for algorithm in algorithms:
            t0 = time.perf_counter()
            try:
                sol, _stats = dispatch(g, g.source, g.terminal, algorithm,
                                       guards, seed=args.seed,
                                       assume_conservative=True)
                status = sol.status
                weight = str(sol.weight) if sol.found else ""
            except OddPathError as exc:
                status, weight = f"error:{type(exc).__name__}", ""
            dt = round(1000 * (time.perf_counter() - t0), 3)
            writer.writerow([path.name, algorithm, status, weight, dt,
                             params["n"], params["m"], params["neg_edges"],
                             params["trees"], params["mu"],
                             params["width_estimate"]])
    return EXIT_FOUND


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oddpath",
        description="Exact minimum-weight odd path solvers for conservative weights")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="JSON file with guard overrides")
    parser.add_argument("--negedge-guard", type=int)
    parser.add_argument("--mu2-guard", type=int)
    parser.add_argument("--width-guard", type=int)
    parser.add_argument("--disjoint-guard", type=int)
    parser.add_argument("--oracle-guard", type=int)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, terminals=True):
        p.add_argument("graph", help="graph file (text or JSON schema)")
        if terminals:
            p.add_argument("-s", "--source", type=int)
            p.add_argument("-t", "--terminal", type=int)

    p = sub.add_parser("validate", help="check conservativeness")
    add_common(p, terminals=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="solve one instance")
    add_common(p)
    p.add_argument("--algorithm", choices=ALGORITHMS, default=AUTO)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int)
    p.add_argument("--rank-reduce", action="store_true")
    p.add_argument("--exact-width", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("spcop", help="parity-constrained solve; the file "
                                     "may carry 'c even|odd <edge>' lines")
    add_common(p)
    p.set_defaults(func=cmd_spcop)

    p = sub.add_parser("decompose", help="emit a tree decomposition")
    add_common(p)
    p.add_argument("--exact-width", action="store_true")
    p.add_argument("--nice", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("oracle", help="brute-force reference solve")
    add_common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="cross-check solvers against the oracle")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--palette", default="-1,0,1")
    p.add_argument("--filter", default="conservative",
                   choices=["conservative", "single_neg_tree", "nonneg"])
    p.add_argument("--algorithms", default="tree,fpt-neg,fpt-derand,treewidth")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bench", help="benchmark a corpus directory to CSV")
    p.add_argument("corpus")
    p.add_argument("--algorithms", default="tree,treewidth")
    p.add_argument("--generate", action="store_true",
                   help="write the seeded corpus before benchmarking")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--small-count", type=int, default=5)
    p.set_defaults(func=cmd_bench)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        guards = Guards.load(args.config, overrides={
            "negedge_guard": getattr(args, "negedge_guard", None),
            "mu2_guard": getattr(args, "mu2_guard", None),
            "width_guard": getattr(args, "width_guard", None),
            "disjoint_guard": getattr(args, "disjoint_guard", None),
            "oracle_guard": getattr(args, "oracle_guard", None),
        })
        return args.func(args, guards)
    except ParameterTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ParseError, InvalidInputError, WrongSolverError,
            ConservativenessViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OddPathError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
