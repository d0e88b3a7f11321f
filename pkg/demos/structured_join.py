"""What the fast join does at a single join node.

Two copies of a small random gadget are glued at three portal vertices.
For each copy we take the language of partial perfect codes seen from the
portals and compress its weight vectors into a small cyclic group.  One
convolution then yields the joined language in its nonzero entries.

Run with ``python demos/structured_join.py``.
"""

import random

from srsets.dpcore import DPContext
from srsets.graphio import random_graph
from srsets.oracle import realized_language
from srsets.setspec import ProblemPair
from srsets.states import combine_languages_naive, decompose, format_string
from srsets.structured import Compressor, fast_join, sigma_defining_set

pair = ProblemPair.parse("{0}", "{1}")
ctx = DPContext.create(pair, "count")
print(f"pair {pair}: working modulus m = {ctx.m}")

gadget = random_graph(7, 0.35, random.Random(54))
print("gadget edges:", gadget.edges(), "portals: 0 1 2")
classes = realized_language(gadget, [0, 1, 2], pair, m=ctx.m)
for i, lang in enumerate(classes):
    print(f"class {i}:", {format_string(x): v for x, v in lang.items()})

L = classes[0]
sigs = {decompose(x).sig for x in L}
sds = sigma_defining_set(sigs)
print("sigma-vectors in class 0:", sorted(sigs))
print("sigma-defining positions:", sds.positions, "witnesses:", sds.witnesses)

for sig in sorted(sigs)[:2]:
    comp = Compressor(sds, sig, ctx.m, ctx.alphabet)
    weights = sorted(decompose(x).wt for x in L if decompose(x).sig == sig)
    o = weights[0]
    print(f"sigma-vector {sig}: moduli {comp.moduli}, origin {o}")
    for z in weights[:4]:
        c = comp.compress(z, o)
        print(f"   weights {z} -> {c} -> {comp.decompress(c, o)}")

fast = fast_join(L, L, ctx.alphabet, ctx.m, "count")
slow = combine_languages_naive(L, L, ctx.alphabet, "count")
print(f"joined language: {len(fast)} strings, e.g.",
      {format_string(x): v for x, v in list(fast.items())[:3]})
print("fast join equals the pairwise naive join:", fast == slow)
