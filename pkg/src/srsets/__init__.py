"""Exact solvers for (sigma, rho)-domination problems on graphs of bounded treewidth."""

from .graphio import Graph, TreeDecomposition, heuristic_decomposition, make_nice, parse_decomposition, parse_graph
from .setspec import DegreeSet, ProblemPair, parse_degree_set

__version__ = "0.1.0"

__all__ = [
    "DegreeSet",
    "Graph",
    "ProblemPair",
    "TreeDecomposition",
    "heuristic_decomposition",
    "make_nice",
    "parse_decomposition",
    "parse_degree_set",
    "parse_graph",
    "solve",
]


def __getattr__(name):
    # numpy-backed modules load on first use so the CLI can cap threads first
    if name == "solve":
        from .solver import solve

        return solve
    raise AttributeError(name)
