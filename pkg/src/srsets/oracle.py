"""Ground truth by exhaustive enumeration.

Everything here is deliberately simple: subsets are enumerated in numpy
chunks and checked directly against the definition.
"""

from __future__ import annotations

import itertools

import numpy as np

from .graphio import Graph
from .setspec import DegreeSet, ProblemPair

CHUNK = 1 << 15


def _members(s: DegreeSet, counts: np.ndarray) -> np.ndarray:
    hit = np.isin(counts, np.array(s.members, dtype=counts.dtype))
    return hit if s.is_finite else ~hit


def _subset_chunks(n: int):
    total = 1 << n
    bits = np.arange(n, dtype=np.int64)
    for start in range(0, total, CHUNK):
        ids = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        yield ((ids[:, None] >> bits) & 1).astype(np.int64)


def _adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1
    return a


def brute_solutions(g: Graph, pair: ProblemPair, max_n: int = 24) -> list[int]:
    """Number of (sigma, rho)-sets of each size 0..n."""
    if g.n > max_n:
        raise ValueError(f"brute force refused: n = {g.n} > {max_n}")
    counts = [0] * (g.n + 1)
    if g.n == 0:
        counts[0] = 1
        return counts
    adj = _adjacency(g)
    for sel in _subset_chunks(g.n):
        deg = sel @ adj
        ok = np.where(sel == 1, _members(pair.sigma, deg), _members(pair.rho, deg)).all(axis=1)
        sizes = sel[ok].sum(axis=1)
        for k, c in enumerate(np.bincount(sizes, minlength=g.n + 1)):
            counts[k] += int(c)
    return counts


def brute_count(g: Graph, pair: ProblemPair, k: int | None = None) -> int:
    c = brute_solutions(g, pair)
    return sum(c) if k is None else (c[k] if 0 <= k < len(c) else 0)


def brute_decide(g: Graph, pair: ProblemPair) -> bool:
    return any(brute_solutions(g, pair))


def brute_extremum(g: Graph, pair: ProblemPair, direction: str):
    sizes = [k for k, c in enumerate(brute_solutions(g, pair)) if c]
    if not sizes:
        return None
    return min(sizes) if direction == "min" else max(sizes)


def realized_language(
    g: Graph,
    portals,
    pair: ProblemPair,
    m: int | None = None,
    clamp: bool = True,
    max_n: int = 20,
):
    """Compatible strings over the sorted portals with witness counts.

    Returns a dict ``string -> {|S \\ U|: count}``; with ``m`` given, a list of
    ``m`` such dicts split by ``|S \\ U| mod m``.  With ``clamp`` the indices
    are projected onto the solver alphabet (cofinite sides saturate at the
    top, finite sides drop indices past the top); without it the full
    alphabet is used.
    """
    if g.n > max_n:
        raise ValueError(f"brute force refused: n = {g.n} > {max_n}")
    portals = sorted(set(portals))
    inside = np.zeros(g.n, dtype=bool)
    inside[portals] = True
    adj = _adjacency(g)
    s_top, r_top = pair.s_top, pair.r_top
    result: dict = {}
    chunks = _subset_chunks(g.n) if g.n else [np.zeros((1, 0), dtype=np.int64)]
    for sel in chunks:
        deg = sel @ adj
        ok = np.where(sel == 1, _members(pair.sigma, deg), _members(pair.rho, deg))
        ok = (ok | inside).all(axis=1)
        sel, deg = sel[ok], deg[ok]
        idx = deg[:, portals]
        sig = sel[:, portals]
        keep = np.ones(len(sel), dtype=bool)
        if clamp:
            for side, top, cof in ((1, s_top, pair.sigma.is_cofinite), (0, r_top, pair.rho.is_cofinite)):
                mask = sig == side
                if cof:
                    idx = np.where(mask, np.minimum(idx, top), idx)
                else:
                    keep &= ~(mask & (idx > top)).any(axis=1)
        codes = (idx << 1) | sig
        outside = (sel[:, ~inside].sum(axis=1) if (~inside).any() else np.zeros(len(sel), dtype=np.int64))
        rows = np.concatenate([codes, outside[:, None]], axis=1)[keep]
        if len(rows) == 0:
            continue
        uniq, cnt = np.unique(rows, axis=0, return_counts=True)
        for row, c in zip(uniq.tolist(), cnt.tolist()):
            x, size = tuple(row[:-1]), row[-1]
            d = result.setdefault(x, {})
            d[size] = d.get(size, 0) + c
    if m is None:
        return result
    classes = [dict() for _ in range(m)]
    for x, d in result.items():
        for size, c in d.items():
            cd = classes[size % m].setdefault(x, {})
            cd[size] = cd.get(size, 0) + c
    return classes


def naive_convolve(f, g, modulus: int | None = None) -> np.ndarray:
    """Cyclic convolution over the array's shape by direct summation."""
    f = np.asarray(f)
    g = np.asarray(g)
    if f.shape != g.shape:
        raise ValueError("shape mismatch")
    if modulus is None:
        f = f.astype(object)
        g = g.astype(object)
        out = np.zeros(f.shape, dtype=object)
    else:
        f = f.astype(np.int64) % modulus
        g = g.astype(np.int64) % modulus
        out = np.zeros(f.shape, dtype=np.int64)
    axes = tuple(range(f.ndim))
    for a in zip(*np.nonzero(f)):
        term = np.roll(g, a, axis=axes) * f[a]
        out = out + term if modulus is None else (out + term % modulus) % modulus
    return out


def edge_ok(a, b, forbidden, positive) -> bool:
    k = len(forbidden)
    for i, fs in enumerate(forbidden):
        if a[i] + b[i] in fs:
            return False
    for j, ps in enumerate(positive):
        if a[k + j] + b[k + j] not in ps:
            return False
    return True


def brute_representative_check(S, S_rep, forbidden, positive=()):
    """True (and None) iff S_rep represents S; else False and a witness b."""
    ranges = [range(max(fs, default=-1) + 2) for fs in forbidden]
    ranges += [range(max(ps, default=-1) + 2) for ps in positive]
    S, S_rep = list(S), list(S_rep)
    for b in itertools.product(*ranges):
        lhs = any(edge_ok(a, b, forbidden, positive) for a in S)
        rhs = any(edge_ok(a, b, forbidden, positive) for a in S_rep)
        if lhs != rhs:
            return False, b
    return True, None
