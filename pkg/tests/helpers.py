"""Shared instance generators for the test-suite."""

from __future__ import annotations

import random

from srsets.graphio import Graph, heuristic_decomposition, make_nice, random_graph
from srsets.setspec import ProblemPair

COUNT_FAMILY = [
    ("{0}", "{1}"),
    ("{0}", "all"),
    ("all", ">=1"),
    ("{0,3}", "{3}"),
    ("{1}", "{1}"),
    (">=1", ">=1"),
    ("co{2}", "co{1}"),
]
STRUCTURED_FAMILY = [("{0}", "{1}"), ("{0,3}", "{3}"), ("{1}", "{1}")]
COFINITE_FAMILY = [("co{2}", "co{1}"), (">=2", ">=1")]


def pairs(family):
    return [ProblemPair.parse(s, r) for s, r in family]


def random_instances(seed, count, n_lo=1, n_hi=10, densities=(0.2, 0.5), max_width=None):
    """Yield (graph, nice decomposition) pairs, alternating densities."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        n = rng.randint(n_lo, n_hi)
        g = random_graph(n, densities[made % len(densities)], rng)
        td = heuristic_decomposition(g)
        if max_width is not None and td.width > max_width:
            continue
        made += 1
        yield g, make_nice(td, g)


def induced(g: Graph, vertices):
    """Induced subgraph on ``vertices`` plus the old -> new index map."""
    vs = sorted(vertices)
    where = {v: i for i, v in enumerate(vs)}
    edges = [(where[u], where[v]) for u, v in g.edges() if u in where and v in where]
    return Graph(len(vs), edges), where


def subtree_vertices(nice):
    """For every node, the vertices introduced somewhere in its subtree."""
    out = []
    for nd in nice.nodes:
        vs = set(nd.bag)
        for c in nd.children:
            vs |= out[c]
        out.append(vs)
    return out
