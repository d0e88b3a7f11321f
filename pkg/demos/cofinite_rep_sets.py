"""Representative sets keep cofinite tables small.

For sigma = co{2}, rho = co{1} the degree of a vertex can be anything except
one value, so the plain DP needs an alphabet as large as the degree and the
tables can get big.  The representative-set DP keeps, for every sigma-vector,
only a handful of strings that still answer every future question.

Run with ``python demos/cofinite_rep_sets.py``.
"""

import random

from srsets.dpcore import DPContext, run_dp
from srsets.graphio import heuristic_decomposition, make_nice, random_graph
from srsets.oracle import brute_extremum
from srsets.repsets import rep_set_extremum, rep_set_forbidden, run_rep_set_dp
from srsets.setspec import ProblemPair
from srsets.states import Alphabet

# First the core step on its own: which of these values are worth keeping
# if the sum with a future b must avoid 0?
S = [(0,), (1,), (2,), (3,)]
print("representatives of", S, "against F={0}:", rep_set_forbidden(S, [{0}]))

pair = ProblemPair.parse("co{2}", "co{1}")
g = random_graph(14, 0.35, random.Random(4))
nice = make_nice(heuristic_decomposition(g), g)
print(f"\npair {pair} on a random graph with {g.n} vertices, width {nice.width}")

plain, reduced = [], []
ctx = DPContext.create(pair, "decide", m=1, alphabet=Alphabet.unbounded(g.n))
run_dp(g, nice, pair, ctx=ctx, hook=lambda i, nd, t: plain.append(len(t[0])))
run_rep_set_dp(g, nice, pair, hook=lambda i, nd, t: reduced.append(len(t[0])))
print(f"largest table without reduction: {max(plain)} strings")
print(f"largest table with representatives: {max(reduced)} strings")

for direction in ("min", "max"):
    print(f"{direction} size: rep sets {rep_set_extremum(g, nice, pair, direction)}, "
          f"brute force {brute_extremum(g, pair, direction)}")
