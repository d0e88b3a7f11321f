"""One entry point that picks an algorithm and returns a uniform result."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .dpcore import finalize, run_dp
from .graphio import Graph, TreeDecomposition, heuristic_decomposition, make_nice
from .oracle import brute_solutions
from .repsets import rep_set_sizes, dp_decide_rep_sets
from .setspec import INFINITE, ProblemPair, trivial_counts_by_size
from .structured import structured_joiner

ALGORITHMS = ("auto", "naive", "structured", "repset", "brute")
MODES = ("decide", "count", "min", "max")


class ConfigError(ValueError):
    """The requested algorithm cannot handle this pair or mode."""


@dataclass
class SolveResult:
    answer: object
    algorithm: str
    width: int
    node_count: int
    elapsed_ms: float

    def as_json(self) -> dict:
        return {
            "schemaVersion": 1,
            "answer": self.answer,
            "algorithm": self.algorithm,
            "width": self.width,
            "nodeCount": self.node_count,
            "elapsedMs": round(self.elapsed_ms, 3),
        }


def structured_applies(pair: ProblemPair) -> bool:
    m = pair.m_max
    return pair.both_finite and (m == INFINITE or m >= 2)


def choose_algorithm(pair: ProblemPair, mode: str) -> str:
    if pair.trivial:
        return "trivial"
    if structured_applies(pair):
        return "structured"
    if not pair.both_finite and mode in ("decide", "min", "max"):
        return "repset"
    return "naive"


def answer_from_sizes(sizes_or_counts, mode: str, k: int | None):
    """Answer from counts by size (a list) or from a set of attainable sizes."""
    if isinstance(sizes_or_counts, list):
        counts = sizes_or_counts
        sizes = [s for s, c in enumerate(counts) if c]
    else:
        counts = None
        sizes = sorted(sizes_or_counts)
    if mode == "decide":
        return bool(sizes)
    if mode == "count":
        if counts is None:
            raise ConfigError("counting needs exact counts")
        return sum(counts) if k is None else (counts[k] if 0 <= k < len(counts) else 0)
    if mode in ("min", "max"):
        if k is not None:
            return any(s <= k for s in sizes) if mode == "min" else any(s >= k for s in sizes)
        if not sizes:
            return None
        return sizes[0] if mode == "min" else sizes[-1]
    raise ConfigError(f"unknown mode {mode!r}")


def solve(
    g: Graph,
    pair: ProblemPair,
    mode: str = "decide",
    k: int | None = None,
    algo: str = "auto",
    td: TreeDecomposition | None = None,
) -> SolveResult:
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}")
    if algo not in ALGORITHMS:
        raise ConfigError(f"unknown algorithm {algo!r}")
    pair.require_nonempty()
    start = time.perf_counter()
    td = td or heuristic_decomposition(g)
    nice = make_nice(td, g)
    chosen = choose_algorithm(pair, mode) if algo == "auto" else algo
    if chosen == "trivial":
        answer = answer_from_sizes(trivial_counts_by_size(g, pair), mode, k)
    elif chosen == "brute":
        answer = answer_from_sizes(brute_solutions(g, pair), mode, k)
    elif chosen == "naive":
        answer = finalize(run_dp(g, nice, pair, mode), mode, k)
    elif chosen == "structured":
        if not structured_applies(pair):
            raise ConfigError(f"structured join needs finite sets with m >= 2; {pair} has m = {pair.m_max}")
        answer = finalize(run_dp(g, nice, pair, mode, joiner=structured_joiner()), mode, k)
    elif chosen == "repset":
        if mode == "count":
            raise ConfigError("representative sets cannot count solutions")
        if mode == "decide":
            answer = dp_decide_rep_sets(g, nice, pair)
        else:
            answer = answer_from_sizes(rep_set_sizes(g, nice, pair), mode, k)
    else:
        raise ConfigError(f"unknown algorithm {chosen!r}")
    elapsed = (time.perf_counter() - start) * 1000
    return SolveResult(answer, chosen, td.width, len(nice), elapsed)
