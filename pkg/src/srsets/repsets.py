"""Representative sets for degree constraints and the DP that keeps only them.

A tuple ``a`` is compatible with ``b`` when ``a_i + b_i`` avoids the forbidden
set ``F_i`` on the first k coordinates and lies in the positive set ``P_j`` on
the remaining ones.  A subset ``S'`` of ``S`` represents ``S`` when every ``b``
compatible with some tuple of ``S`` is compatible with some tuple of ``S'``.
"""

from __future__ import annotations

import math

from .dpcore import DPContext, run_dp
from .graphio import Graph, NiceTreeDecomposition
from .setspec import ProblemPair
from .states import Alphabet, sigma_vector


def _poly_coeffs(a: int, forbidden) -> list[int]:
    """Coefficients (in y, lowest first) of prod over f in F of (a + y - f)."""
    coeffs = [1]
    for f in sorted(forbidden):
        c0 = a - f
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] += c * c0
            nxt[i + 1] += c
        coeffs = nxt
    return coeffs


def signature(a, forbidden) -> list[int]:
    """Tensor product of the per-coordinate coefficient vectors.

    Its dot product with the moment vector of ``b`` is prod_i prod_f (a_i + b_i - f),
    which is nonzero exactly when ``a`` and ``b`` are compatible.
    """
    vec = [1]
    for ai, fs in zip(a, forbidden):
        coeffs = _poly_coeffs(ai, fs)
        vec = [x * c for x in vec for c in coeffs]
    return vec


def moment_vector(b, forbidden) -> list[int]:
    vec = [1]
    for bi, fs in zip(b, forbidden):
        vec = [x * bi**e for x in vec for e in range(len(fs) + 1)]
    return vec


class _Basis:
    """Incremental fraction-free row echelon form over the integers."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[tuple[int, list[int]]] = []  # (pivot column, row)

    def add(self, vec) -> bool:
        v = list(vec)
        for piv, row in self.rows:
            if v[piv]:
                a, b = row[piv], v[piv]
                v = [a * x - b * y for x, y in zip(v, row)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        g = 0
        for x in v:
            g = math.gcd(g, x)
        self.rows.append((piv, [x // g for x in v]))
        return True

    @property
    def full(self) -> bool:
        return len(self.rows) == self.dim


def rep_set_forbidden(S, forbidden):
    """A representative subset of size at most prod(|F_i| + 1)."""
    S = list(dict.fromkeys(tuple(a) for a in S))
    if not S:
        return []
    forbidden = [frozenset(fs) for fs in forbidden]
    dim = math.prod(len(fs) + 1 for fs in forbidden)
    basis = _Basis(dim)
    chosen = []
    seen = set()
    for a in S:
        # values beyond max(F_i) behave alike, so canonicalize before ranking
        canon = tuple(min(x, max(fs, default=-1) + 1) for x, fs in zip(a, forbidden))
        if canon in seen:
            continue
        seen.add(canon)
        if basis.add(signature(canon, forbidden)):
            chosen.append(a)
            if basis.full:
                break
    return chosen


def rep_set_mixed(S, forbidden, positive=()):
    """Representative subset for forbidden sets on the first coordinates and
    positive sets on the last ones."""
    k = len(forbidden)
    positive = [frozenset(ps) for ps in positive]
    tops = [max(ps, default=-1) for ps in positive]
    groups: dict[tuple, list] = {}
    for a in dict.fromkeys(tuple(x) for x in S):
        tail = a[k:]
        if any(x > t for x, t in zip(tail, tops)):
            continue  # compatible with nothing
        groups.setdefault(tail, []).append(a)
    out = []
    for tail, members in groups.items():
        heads = rep_set_forbidden([a[:k] for a in members], forbidden)
        keep = set(heads)
        picked = set()
        for a in members:
            if a[:k] in keep and a[:k] not in picked:
                picked.add(a[:k])
                out.append(a)
    return out


# ---------------------------------------------------------------- the DP


def _constraints(sig, pair: ProblemPair):
    """Split positions into forbidden (cofinite side) and positive (finite side)."""
    forb_pos, forb, pos_pos, pos = [], [], [], []
    for i, s in enumerate(sig):
        side = pair.sigma if s else pair.rho
        if side.is_cofinite:
            forb_pos.append(i)
            forb.append(frozenset(side.members))
        else:
            pos_pos.append(i)
            pos.append(frozenset(side.members))
    return forb_pos + pos_pos, forb, pos


def reduce_language(lang: dict, pair: ProblemPair, by_size: bool = False) -> dict:
    """Keep a representative subset of every sigma-vector (and size) stratum."""
    strata: dict = {}
    for x, val in lang.items():
        sig = sigma_vector(x)
        if by_size:
            for k in val:
                strata.setdefault((sig, k), []).append(x)
        else:
            strata.setdefault(sig, []).append(x)
    out: dict = {}
    for key, strings in strata.items():
        sig = key[0] if by_size else key
        order, forb, pos = _constraints(sig, pair)
        tuples = {}
        for x in strings:
            tuples.setdefault(tuple(x[i] >> 1 for i in order), x)
        for t in rep_set_mixed(list(tuples), forb, pos):
            x = tuples[t]
            if by_size:
                out[x] = out.get(x, frozenset()) | {key[1]}
            else:
                out[x] = True
    return out


def run_rep_set_dp(g: Graph, nice: NiceTreeDecomposition, pair: ProblemPair, by_size: bool = False, hook=None):
    """DP over the unbounded alphabet that reduces every table to representatives."""
    mode = "sizes" if by_size else "decide"
    ctx = DPContext.create(pair, mode, m=1, alphabet=Alphabet.unbounded(max(g.n, 1)))
    table = run_dp(g, nice, pair, ctx=ctx, hook=hook, reduce=lambda t: [reduce_language(t[0], pair, by_size)])
    return table[0]


def dp_decide_rep_sets(g: Graph, nice: NiceTreeDecomposition, pair: ProblemPair) -> bool:
    return () in run_rep_set_dp(g, nice, pair)


def rep_set_sizes(g: Graph, nice: NiceTreeDecomposition, pair: ProblemPair) -> set[int]:
    """All sizes of (sigma, rho)-sets, computed with size-stratified representatives."""
    return set(run_rep_set_dp(g, nice, pair, by_size=True).get((), ()))


def rep_set_extremum(g, nice, pair, direction: str):
    sizes = rep_set_sizes(g, nice, pair)
    if not sizes:
        return None
    return min(sizes) if direction == "min" else max(sizes)


def dp_optimize_rep_sets(g, nice, pair, direction: str, k: int) -> bool:
    """Is there a solution of size at most (``min``) or at least (``max``) k?"""
    best = rep_set_extremum(g, nice, pair, direction)
    if best is None:
        return False
    return best <= k if direction == "min" else best >= k

