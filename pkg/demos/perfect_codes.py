"""Counting perfect codes on a small graph, step by step.

A perfect code is a set S where no two chosen vertices touch and every other
vertex has exactly one chosen neighbour: sigma = {0}, rho = {1}.

Run with ``python demos/perfect_codes.py``.
"""

from srsets.dpcore import counts_by_size, run_dp
from srsets.graphio import heuristic_decomposition, make_nice, parse_graph
from srsets.oracle import brute_solutions
from srsets.setspec import ProblemPair
from srsets.solver import solve
from srsets.states import format_string

# A 6-cycle with one chord, written in the PACE .gr format.
GRAPH = """c hexagon with a chord
p tw 6 7
1 2
2 3
3 4
4 5
5 6
6 1
1 4
"""

g = parse_graph(GRAPH)
pair = ProblemPair.parse("{0}", "{1}")
print(f"graph: {g.n} vertices, {g.m} edges; pair {pair}")
print(f"the pair is {pair.m_max}-structured, base constant c = {pair.base_c}")

td = heuristic_decomposition(g)
nice = make_nice(td, g)
print(f"min-degree decomposition: width {td.width}, {len(td.bags)} bags, {len(nice)} nice nodes")

# Watch the tables grow and shrink.  Each class i holds strings witnessed by
# partial solutions with |S \ bag| = i (mod m).
def show(i, node, table):
    sizes = [len(lang) for lang in table]
    sample = next((x for lang in table for x in lang), None)
    shown = format_string(sample) if sample else "-"
    print(f"  node {i:2d} {node.kind:9s} bag={node.bag!s:12s} class sizes={sizes} e.g. [{shown}]")

root = run_dp(g, nice, pair, "count", hook=show)
print("solutions by size (DP):   ", counts_by_size(root, g.n))
print("solutions by size (brute):", brute_solutions(g, pair))

for algo in ("naive", "structured", "repset", "brute"):
    mode = "max" if algo == "repset" else "count"
    res = solve(g, pair, mode, algo=algo)
    print(f"{algo:10s} {mode:5s} -> {res.answer}  ({res.elapsed_ms:.1f} ms)")
