"""Command line: ``srsets solve | verify | gen | bench``.

Exit codes: 0 ok, 2 bad input or configuration, 3 invariant violation,
4 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
import time

EXIT_OK, EXIT_PARSE, EXIT_INVARIANT, EXIT_MISMATCH = 0, 2, 3, 4

FAMILIES = {
    "count": [("{0}", "{1}"), ("{0}", "all"), ("all", ">=1"), ("{0,3}", "{3}"), ("{1}", "{1}"), (">=1", ">=1"), ("co{2}", "co{1}")],
    "structured": [("{0}", "{1}"), ("{0,3}", "{3}"), ("{1}", "{1}")],
    "cofinite": [("co{2}", "co{1}"), (">=2", ">=1"), ("all", ">=1")],
}


def _cap_threads():
    limit = os.environ.get("SRS_THREADS")
    if limit:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ[var] = limit


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _format(answer) -> str:
    if answer is None:
        return "none"
    if isinstance(answer, bool):
        return "true" if answer else "false"
    return str(answer)


def cmd_solve(args) -> int:
    from .graphio import parse_decomposition, parse_graph
    from .setspec import ProblemPair
    from .solver import solve

    g = parse_graph(_read(args.graph))
    td = parse_decomposition(_read(args.td), g) if args.td else None
    pair = ProblemPair.parse(args.sigma, args.rho)
    res = solve(g, pair, args.mode, args.size, args.algo, td)
    if args.output == "json":
        print(json.dumps(res.as_json()))
    else:
        print(_format(res.answer))
    return EXIT_OK


def _applicable(pair, mode):
    from .solver import structured_applies

    algos = ["naive", "auto"]
    if structured_applies(pair):
        algos.append("structured")
    if mode != "count":
        algos.append("repset")
    return algos


def cmd_verify(args) -> int:
    from .graphio import random_graph, write_graph
    from .setspec import ProblemPair
    from .solver import solve

    rng = random.Random(args.seed)
    pairs = FAMILIES[args.family]
    modes = ["count", "min", "max"] if args.family != "cofinite" else ["decide", "min", "max"]
    checks = 0
    for trial in range(args.trials):
        n = rng.randint(1, args.max_n)
        p = rng.choice((0.2, 0.5))
        g = random_graph(n, p, rng)
        for s, r in pairs:
            pair = ProblemPair.parse(s, r)
            for mode in modes:
                expect = solve(g, pair, mode, algo="brute").answer
                for algo in _applicable(pair, mode):
                    got = solve(g, pair, mode, algo=algo).answer
                    checks += 1
                    if got != expect:
                        edges = " ".join(f"{u + 1}-{v + 1}" for u, v in g.edges())
                        print(
                            f"MISMATCH trial={trial} pair=({s}, {r}) mode={mode} algo={algo} "
                            f"expected={expect} got={got} n={n} edges=[{edges}]"
                        )
                        print(write_graph(g), end="", file=sys.stderr)
                        return EXIT_MISMATCH
    print(f"ok: {checks} checks on {args.trials} graphs ({args.family} family)")
    return EXIT_OK


def cmd_gen(args) -> int:
    from .graphio import (
        cycle_graph,
        grid_graph,
        heuristic_decomposition,
        path_decomposition_grid,
        path_graph,
        random_graph,
        write_decomposition,
        write_graph,
    )

    if args.model == "gnp":
        g = random_graph(args.n, args.p, random.Random(args.seed))
        td = heuristic_decomposition(g)
    elif args.model == "path":
        g = path_graph(args.n)
        td = heuristic_decomposition(g)
    elif args.model == "cycle":
        g = cycle_graph(args.n)
        td = heuristic_decomposition(g)
    else:
        cols = args.cols or args.n
        g = grid_graph(args.n, cols)
        td = path_decomposition_grid(args.n, cols)
    if args.out:
        with open(args.out + ".gr", "w") as fh:
            fh.write(write_graph(g))
        with open(args.out + ".td", "w") as fh:
            fh.write(write_decomposition(td, g.n))
    else:
        sys.stdout.write(write_graph(g))
    return EXIT_OK


BENCH_HEADER = ["instance", "n", "width", "algorithm", "mode", "answer", "seconds"]


def cmd_bench(args) -> int:
    from .graphio import grid_graph, path_decomposition_grid, split_grid_decomposition
    from .setspec import ProblemPair
    from .solver import solve

    pair = ProblemPair.parse(args.sigma, args.rho)
    out = csv.writer(sys.stdout)
    out.writerow(BENCH_HEADER)
    for cols in range(args.min_len, args.max_len + 1):
        g = grid_graph(args.rows, cols)
        if args.decomposition == "split":
            td = split_grid_decomposition(args.rows, cols)
        else:
            td = path_decomposition_grid(args.rows, cols)
        for algo in args.algos.split(","):
            t0 = time.perf_counter()
            res = solve(g, pair, args.mode, algo=algo, td=td)
            out.writerow([f"grid{args.rows}x{cols}", g.n, td.width, algo, args.mode, _format(res.answer),
                          f"{time.perf_counter() - t0:.4f}"])
            sys.stdout.flush()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="srsets", description="Exact (sigma, rho)-set solver on tree decompositions.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one instance")
    s.add_argument("-g", "--graph", required=True, help="PACE .gr file")
    s.add_argument("-t", "--td", help="PACE .td file (default: min-degree heuristic)")
    s.add_argument("--sigma", required=True)
    s.add_argument("--rho", required=True)
    s.add_argument("--mode", choices=["decide", "count", "min", "max"], default="decide")
    s.add_argument("--size", type=int, help="size k for count, bound k for min/max")
    s.add_argument("--algo", choices=["auto", "naive", "structured", "repset", "brute"], default="auto")
    s.add_argument("--output", choices=["plain", "json"], default="plain")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="compare all algorithms with brute force on random graphs")
    v.add_argument("--family", choices=sorted(FAMILIES), default="count")
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-n", type=int, default=9)
    v.set_defaults(func=cmd_verify)

    gn = sub.add_parser("gen", help="generate a graph (and decomposition)")
    gn.add_argument("n", type=int, help="vertex count (rows for grid)")
    gn.add_argument("model", choices=["gnp", "path", "cycle", "grid"])
    gn.add_argument("seed", type=int, nargs="?", default=0)
    gn.add_argument("--p", type=float, default=0.3, help="edge probability for gnp")
    gn.add_argument("--cols", type=int, help="grid columns (default: n)")
    gn.add_argument("-o", "--out", help="write <out>.gr and <out>.td instead of printing")
    gn.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="time algorithms on rows x L grids, CSV to stdout")
    b.add_argument("--rows", type=int, default=4)
    b.add_argument("--min-len", type=int, default=2)
    b.add_argument("--max-len", type=int, default=6)
    b.add_argument("--sigma", default="{0}")
    b.add_argument("--rho", default="{1}")
    b.add_argument("--mode", choices=["decide", "count", "min", "max"], default="count")
    b.add_argument("--algos", default="naive,structured")
    b.add_argument("--decomposition", choices=["split", "path"], default="split",
                   help="split meets two column sweeps at a join node; path has no joins")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    _cap_threads()
    args = build_parser().parse_args(argv)
    from .dpcore import InvariantError
    from .graphio import DecompositionError, FormatError
    from .setspec import DegreeSetError, TrivialPairError
    from .solver import ConfigError

    json_out = getattr(args, "output", "plain") == "json"

    def fail(kind, code, exc):
        if json_out:
            print(json.dumps({"schemaVersion": 1, "error": {"kind": kind, "message": str(exc)}}))
        print(f"error[{kind}]: {exc}", file=sys.stderr)
        return code

    try:
        return args.func(args)
    except (FormatError, DecompositionError, DegreeSetError, TrivialPairError, ConfigError, OSError) as exc:
        return fail("parse", EXIT_PARSE, exc)
    except (InvariantError, AssertionError) as exc:
        return fail("invariant", EXIT_INVARIANT, exc)


if __name__ == "__main__":
    sys.exit(main())
