"""Bottom-up dynamic programming over a nice tree decomposition.

A table is a list of ``m`` languages.  Class ``i`` holds strings witnessed by
a partial solution S with ``|S \\ X_t| = i (mod m)``; the value stored with a
string records witness sizes as dictated by the mode.  Sizes always count
only forgotten selected vertices, so join nodes need no size correction.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

from .graphio import FORGET, INTRODUCE, JOIN, LEAF, Graph, NiceTreeDecomposition
from .setspec import ProblemPair, working_modulus
from .states import Alphabet, Mode, combine_languages_naive, get_mode


class InvariantError(RuntimeError):
    """A table reached a state that valid inputs can never produce."""


@dataclass
class DPContext:
    pair: ProblemPair
    alphabet: Alphabet
    mode: Mode
    m: int = 1

    @classmethod
    def create(cls, pair: ProblemPair, mode="decide", m: int | None = None, alphabet=None):
        pair.require_nonempty()
        return cls(
            pair,
            alphabet or Alphabet.for_pair(pair),
            get_mode(mode),
            working_modulus(pair) if m is None else m,
        )

    def happy(self, code: int) -> bool:
        idx = code >> 1
        return idx in (self.pair.sigma if code & 1 else self.pair.rho)


def leaf_table(ctx: DPContext) -> list[dict]:
    table = [dict() for _ in range(ctx.m)]
    table[0][()] = ctx.mode.unit()
    return table


def forget_step(table, bag, v, ctx: DPContext) -> list[dict]:
    """Drop position ``v`` from every string whose state there is satisfied."""
    pos = bag.index(v)
    m, mode = ctx.m, ctx.mode
    out = [dict() for _ in range(m)]
    for i, lang in enumerate(table):
        for x, val in lang.items():
            c = x[pos]
            if not ctx.happy(c):
                continue
            y = x[:pos] + x[pos + 1:]
            if c & 1:
                mode.add_to(out[(i + 1) % m], y, mode.shift(val))
            else:
                mode.add_to(out[i], y, val)
    return out


def introduce_step(table, bag, v, nbr_positions, ctx: DPContext) -> list[dict]:
    """Extend every string by a state for the new vertex ``v``.

    ``bag`` is the child bag and ``nbr_positions`` the positions (in it) of
    the bag neighbours of ``v``.
    """
    pos = bisect_left(bag, v)
    alpha = ctx.alphabet
    mode = ctx.mode
    out = [dict() for _ in range(ctx.m)]
    for i, lang in enumerate(table):
        dst = out[i]
        for y, val in lang.items():
            k = sum(y[p] & 1 for p in nbr_positions)
            r = alpha.make(0, k)
            if r is not None:
                mode.add_to(dst, y[:pos] + (r,) + y[pos:], val)
            s = alpha.make(1, k)
            if s is None:
                continue
            z = list(y)
            ok = True
            for p in nbr_positions:
                b = alpha.bump(z[p])
                if b is None:
                    ok = False
                    break
                z[p] = b
            if ok:
                mode.add_to(dst, tuple(z[:pos]) + (s,) + tuple(z[pos:]), val)
    return out


def bag_neighbor_positions(bag, g: Graph) -> list[list[int]]:
    where = {v: i for i, v in enumerate(bag)}
    return [[where[w] for w in g.adj[v] if w in where] for v in bag]


def adjust_string(x, nbrs, alphabet: Alphabet):
    """Subtract at every position the number of selected bag neighbours.

    Saturated positions of a cofinite side stay put: "top or more" minus a
    bounded amount is still recovered exactly once the other side, which
    sees the same bag neighbours, is added back.
    """
    out = []
    for p, c in enumerate(x):
        k = sum(x[q] & 1 for q in nbrs[p])
        if k and not alphabet.is_saturated(c):
            c -= k << 1
            if c < 0:
                raise InvariantError(f"join adjustment underflow at position {p}")
        out.append(c)
    return tuple(out)


def join_adjust(table, bag, g: Graph, ctx: DPContext) -> list[dict]:
    nbrs = bag_neighbor_positions(bag, g)
    if not any(nbrs):
        return table
    out = []
    for lang in table:
        new = {}
        for x, val in lang.items():
            ctx.mode.add_to(new, adjust_string(x, nbrs, ctx.alphabet), val)
        out.append(new)
    return out


def naive_joiner(L1, L2, ctx: DPContext) -> dict:
    return combine_languages_naive(L1, L2, ctx.alphabet, ctx.mode)


def join_step(table1, table2, joiner, ctx: DPContext) -> list[dict]:
    """Class i of the result is the union over j of class j (+) class i-j."""
    if len(table1) != ctx.m or len(table2) != ctx.m:
        raise InvariantError("tables with the wrong number of classes")
    m, mode = ctx.m, ctx.mode
    out = [dict() for _ in range(m)]
    for j in range(m):
        if not table1[j]:
            continue
        for k in range(m):
            if not table2[k]:
                continue
            part = joiner(table1[j], table2[k], ctx)
            dst = out[(j + k) % m]
            for z, val in part.items():
                mode.add_to(dst, z, val)
    return out


def finalize(root_table, mode, k: int | None = None):
    """Turn the root table into an answer.

    decide -> bool; count -> int (of size ``k`` when given); min/max -> the
    extremal size, or None when there is no solution.  With ``k`` given,
    min/max answer whether a solution of size at most / at least ``k`` exists.
    """
    mode = get_mode(mode)
    vals = [lang[()] for lang in root_table if () in lang]
    if mode.name == "decide":
        return bool(vals)
    if mode.name == "count":
        total: dict[int, int] = {}
        for v in vals:
            for s, c in v.items():
                total[s] = total.get(s, 0) + c
        return sum(total.values()) if k is None else total.get(k, 0)
    if mode.name in ("min", "max"):
        best = None
        for v in vals:
            best = v if best is None else mode.merge(best, v)
        if k is None:
            return best
        if best is None:
            return False
        return best <= k if mode.name == "min" else best >= k
    if mode.name == "sizes":
        out = set()
        for v in vals:
            out |= v
        return out
    raise ValueError(f"unknown mode {mode.name}")


def counts_by_size(root_table, n: int) -> list[int]:
    counts = [0] * (n + 1)
    for lang in root_table:
        for s, c in lang.get((), {}).items():
            counts[s] += c
    return counts


def run_dp(
    g: Graph,
    nice: NiceTreeDecomposition,
    pair: ProblemPair,
    mode="decide",
    joiner=None,
    m: int | None = None,
    hook=None,
    ctx: DPContext | None = None,
    reduce=None,
):
    """Run the DP and return the root table.

    ``reduce(table)``, when given, may shrink every table right after it is
    built; ``hook(index, node, table)`` sees the final table of every node.
    """
    ctx = ctx or DPContext.create(pair, mode, m)
    joiner = joiner or naive_joiner
    tables: dict[int, list[dict]] = {}
    for i, nd in enumerate(nice.nodes):
        if nd.kind == LEAF:
            t = leaf_table(ctx)
        elif nd.kind == FORGET:
            (c,) = nd.children
            t = forget_step(tables.pop(c), nice.nodes[c].bag, nd.vertex, ctx)
        elif nd.kind == INTRODUCE:
            (c,) = nd.children
            child_bag = nice.nodes[c].bag
            where = {w: p for p, w in enumerate(child_bag)}
            nbr = [where[w] for w in g.adj[nd.vertex] if w in where]
            t = introduce_step(tables.pop(c), child_bag, nd.vertex, nbr, ctx)
        elif nd.kind == JOIN:
            c1, c2 = nd.children
            adj = join_adjust(tables.pop(c1), nd.bag, g, ctx)
            t = join_step(adj, tables.pop(c2), joiner, ctx)
        else:
            raise InvariantError(f"unknown node kind {nd.kind}")
        if reduce is not None:
            t = reduce(t)
        if hook is not None:
            hook(i, nd, t)
        tables[i] = t
    return tables[nice.root]


def solve_dp(g, nice, pair, mode="decide", k=None, joiner=None, m=None):
    return finalize(run_dp(g, nice, pair, mode, joiner, m), mode, k)
