"""The fast join for m-structured pairs.

Strings that share a sigma-vector have their weight vectors compressed into
a small cyclic group, with two checksum coordinates that expose overflows.
One convolution of the compressed count functions then does the whole join,
and each nonzero entry of the result decompresses to one joined string.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fastconv import CyclicDomain, convolve_exact, convolve_mod_p, find_prime_plan
from .states import Alphabet, compose, get_mode, group_by_sigma


@dataclass(frozen=True)
class SigmaDefiningSet:
    """Positions that pin down the sigma-vector, with one witness pair each.

    ``witnesses[l] = (w1, w0)``: two sigma-vectors of the set that agree on
    every other position of ``positions`` and have 1 resp. 0 at ``l``.
    """

    n: int
    positions: tuple[int, ...]
    witnesses: dict

    @property
    def rest(self) -> tuple[int, ...]:
        s = set(self.positions)
        return tuple(i for i in range(self.n) if i not in s)


def _collision(vectors, keep):
    seen = {}
    for v in vectors:
        key = tuple(v[i] for i in keep)
        if key in seen:
            return seen[key], v
        seen[key] = v
    return None


def sigma_defining_set(sigma_vectors) -> SigmaDefiningSet:
    """Greedily drop positions while the projection stays injective."""
    vecs = sorted(set(tuple(v) for v in sigma_vectors))
    if not vecs:
        raise ValueError("empty set of sigma-vectors")
    n = len(vecs[0])
    S = list(range(n))
    changed = True
    while changed:
        changed = False
        for i in list(S):
            keep = [j for j in S if j != i]
            if _collision(vecs, keep) is None:
                S = keep
                changed = True
    witnesses = {}
    for i in S:
        a, b = _collision(vecs, [j for j in S if j != i])
        witnesses[i] = (a, b) if a[i] == 1 else (b, a)
    return SigmaDefiningSet(n, tuple(S), witnesses)


def is_sigma_defining(sds: SigmaDefiningSet, sigma_vectors) -> bool:
    """Injective projection onto the positions, and no position can be dropped."""
    vecs = set(tuple(v) for v in sigma_vectors)
    S = list(sds.positions)
    if _collision(vecs, S) is not None:
        return False
    return all(_collision(vecs, [j for j in S if j != i]) is not None for i in S)


def remainder(u, o, sds: SigmaDefiningSet, ell: int) -> int:
    w1, w0 = sds.witnesses[ell]
    return sum((u[i] - o[i]) * (w1[i] - w0[i]) for i in sds.rest)


class Compressor:
    """Compression with checksums for one sigma-vector ``sig``."""

    def __init__(self, sds: SigmaDefiningSet, sig, m: int, alphabet: Alphabet):
        self.sds = sds
        self.sig = tuple(sig)
        self.m = m
        self.n = n = sds.n
        self.t = t = max(alphabet.s_top, alphabet.r_top)
        self.cap = tuple(alphabet.cap(s) for s in self.sig)
        self.in_S = [False] * n
        for ell in sds.positions:
            self.in_S[ell] = True
        self.rest = sds.rest
        self.moduli = tuple(
            math.ceil((self.cap[ell] + 1) / m) if self.in_S[ell] else t + 1 for ell in range(n)
        ) + (2 * n * (t + 1),) * 2
        # coefficient of (u[i] - o[i]) in the remainder at each position of S
        self.diff = {
            ell: [(i, w1[i] - w0[i]) for i in self.rest if w1[i] != w0[i]]
            for ell, (w1, w0) in sds.witnesses.items()
        }

    def _rem(self, z, o, ell):
        return sum((z[i] - o[i]) * c for i, c in self.diff[ell])

    def compress(self, z, o) -> tuple[int, ...]:
        out = []
        for ell in range(self.n):
            if self.in_S[ell]:
                num = z[ell] - o[ell] + self._rem(z, o, ell)
                if num % self.m:
                    raise ValueError("origin does not satisfy the divisibility premise")
                out.append((num // self.m) % self.moduli[ell])
            else:
                out.append(z[ell] % (self.t + 1))
        chk = 2 * self.n * (self.t + 1)
        out.append(sum(z[i] for i in self.rest) % chk)
        out.append(sum(z[i] for i in self.sds.positions) % chk)
        return tuple(out)

    def decompress(self, c, o):
        """The weight vector compressing to ``c``, or None if there is none."""
        n = self.n
        z = [0] * n
        for i in self.rest:
            z[i] = c[i]
            if z[i] > self.cap[i]:
                return None
        for ell in self.sds.positions:
            mod = self.m * self.moduli[ell]
            z[ell] = (self.m * c[ell] + o[ell] - self._rem(z, o, ell)) % mod
            if z[ell] > self.cap[ell]:
                return None
        chk = 2 * n * (self.t + 1)
        if sum(z[i] for i in self.rest) % chk != c[n] or sum(z[i] for i in self.sds.positions) % chk != c[n + 1]:
            return None
        return tuple(z)


def _size_span(values):
    keys = [k for v in values for k in v]
    return min(keys), max(keys)


def fast_join(L1: dict, L2: dict, alphabet: Alphabet, m: int, mode="decide", origin_choice: int = 0) -> dict:
    """L1 (+) L2 through compressed convolution.

    Both languages must satisfy the residue relation modulo ``m``.
    ``origin_choice`` picks which weight vector (in sorted order) serves as
    origin for each sigma-vector; the result does not depend on it.
    """
    mode = get_mode(mode)
    g1, g2 = group_by_sigma(L1), group_by_sigma(L2)
    common = sorted(set(g1) & set(g2))
    if not common:
        return {}
    out: dict = {}
    if len(common[0]) == 0:
        out[()] = mode.mul(L1[()], L2[()])
        return out
    sds = sigma_defining_set(common)
    for sig in common:
        comp = Compressor(sds, sig, m, alphabet)
        items1 = [(tuple(c >> 1 for c in x), mode.to_sizes(v)) for x, v in g1[sig]]
        items2 = [(tuple(c >> 1 for c in x), mode.to_sizes(v)) for x, v in g2[sig]]
        w1 = sorted(w for w, _ in items1)
        w2 = sorted(w for w, _ in items2)
        o = w1[origin_choice % len(w1)]
        p = w2[origin_choice % len(w2)]
        lo1, hi1 = _size_span(v for _, v in items1)
        lo2, hi2 = _size_span(v for _, v in items2)
        shape = comp.moduli + ((hi1 - lo1) + (hi2 - lo2) + 1,)
        total1 = sum(c for _, v in items1 for c in v.values())
        total2 = sum(c for _, v in items2 for c in v.values())
        bound = total1 * total2
        dtype = np.int64 if max(total1, total2) < 1 << 62 else object
        f1 = np.zeros(shape, dtype=dtype)
        f2 = np.zeros(shape, dtype=dtype)
        for w, sizes in items1:
            key = comp.compress(w, o)
            for k, c in sizes.items():
                f1[key + (k - lo1,)] += c
        for w, sizes in items2:
            key = comp.compress(w, p)
            for k, c in sizes.items():
                f2[key + (k - lo2,)] += c
        if mode.name == "count":
            h = convolve_exact(f1, f2, bound)
        else:
            h = convolve_mod_p(f1, f2, find_prime_plan(CyclicDomain(shape), bound))
        origin = tuple(a + b for a, b in zip(o, p))
        found: dict = {}
        for idx in zip(*(a.tolist() for a in np.nonzero(h))):
            z = comp.decompress(idx[:-1], origin)
            if z is None:
                continue
            sizes = found.setdefault(z, {})
            sizes[int(idx[-1]) + lo1 + lo2] = int(h[idx])
        for z, sizes in found.items():
            out[compose(sig, z)] = mode.from_sizes(sizes)
    return out


def structured_joiner(origin_choice: int = 0):
    """A joiner for :func:`srsets.dpcore.join_step` that uses :func:`fast_join`."""

    def joiner(L1, L2, ctx):
        return fast_join(L1, L2, ctx.alphabet, ctx.m, ctx.mode, origin_choice)

    return joiner
