"""Finite and cofinite degree sets, (sigma, rho) pairs and their parameters."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce

#: Returned by :func:`max_structure` when the pair is m-structured for every m.
INFINITE = math.inf

FINITE = "finite"
COFINITE = "cofinite"


class DegreeSetError(ValueError):
    """Malformed or unusable degree set."""


class TrivialPairError(ValueError):
    """The pair is trivial; use the closed-form shortcut instead."""


@dataclass(frozen=True)
class DegreeSet:
    """A subset of the non-negative integers that is finite or cofinite.

    For a cofinite set ``members`` lists the *missing* integers.
    """

    kind: str
    members: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in (FINITE, COFINITE):
            raise DegreeSetError(f"unknown kind {self.kind!r}")
        m = tuple(self.members)
        if any(b <= a for a, b in zip(m, m[1:])) or any(x < 0 for x in m):
            raise DegreeSetError("members must be strictly increasing and non-negative")
        object.__setattr__(self, "members", m)

    @classmethod
    def finite(cls, elements) -> "DegreeSet":
        return cls(FINITE, tuple(sorted(set(elements))))

    @classmethod
    def cofinite(cls, missing=()) -> "DegreeSet":
        return cls(COFINITE, tuple(sorted(set(missing))))

    @classmethod
    def at_least(cls, k: int) -> "DegreeSet":
        return cls.cofinite(range(k))

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @property
    def is_cofinite(self) -> bool:
        return self.kind == COFINITE

    @property
    def is_empty(self) -> bool:
        return self.is_finite and not self.members

    @property
    def is_all(self) -> bool:
        return self.is_cofinite and not self.members

    def __contains__(self, k: int) -> bool:
        if self.is_finite:
            return k in self.members
        return k >= 0 and k not in self.members

    def min(self) -> int:
        if self.is_finite:
            if not self.members:
                raise DegreeSetError("empty set has no minimum")
            return self.members[0]
        k = 0
        while k in self.members:
            k += 1
        return k

    def top(self) -> int:
        return top_value(self)

    def cost(self) -> int:
        return cost_value(self)

    def __str__(self):
        body = ",".join(map(str, self.members))
        if self.is_finite:
            return "{" + body + "}"
        if not self.members:
            return "all"
        if self.members == tuple(range(len(self.members))):
            return f">={len(self.members)}"
        return "co{" + body + "}"


_SET_RE = re.compile(r"^(co)?\{([0-9,]*)\}$")


def parse_degree_set(text: str) -> DegreeSet:
    """Parse ``{a,b}``, ``co{a,b}``, ``>=k`` or ``all`` (whitespace-insensitive)."""
    s = re.sub(r"\s+", "", text)
    if s == "all":
        return DegreeSet.cofinite()
    if s.startswith(">="):
        num = s[2:]
        if not num.isdigit():
            raise DegreeSetError(f"malformed degree set {text!r}")
        return DegreeSet.at_least(int(num))
    m = _SET_RE.match(s)
    if not m:
        raise DegreeSetError(f"malformed degree set {text!r}")
    body = m.group(2)
    items = [] if body == "" else body.split(",")
    if any(not it.isdigit() for it in items):
        raise DegreeSetError(f"malformed degree set {text!r}")
    values = [int(it) for it in items]
    if len(set(values)) != len(values):
        raise DegreeSetError(f"duplicate element in {text!r}")
    values.sort()
    return DegreeSet(COFINITE if m.group(1) else FINITE, tuple(values))


def top_value(s: DegreeSet) -> int:
    """Largest element of a finite set, or largest missing value plus one.

    The full set ``all`` gets 0.
    """
    if s.is_finite:
        if not s.members:
            raise DegreeSetError("empty set has no top value")
        return s.members[-1]
    return s.members[-1] + 1 if s.members else 0


def cost_value(s: DegreeSet) -> int:
    """Max element for finite sets, number of missing values for cofinite ones."""
    if s.is_finite:
        if not s.members:
            raise DegreeSetError("empty set has no cost")
        return s.members[-1]
    return len(s.members)


def _diff_gcd(s: DegreeSet) -> int:
    if s.is_empty:
        raise DegreeSetError("empty set")
    if s.is_cofinite:
        # contains two consecutive integers
        return 1
    base = s.members[0]
    return reduce(math.gcd, (x - base for x in s.members), 0)


def max_structure(sigma: DegreeSet, rho: DegreeSet):
    """Largest m such that (sigma, rho) is m-structured, or INFINITE."""
    g = math.gcd(_diff_gcd(sigma), _diff_gcd(rho))
    return INFINITE if g == 0 else g


def is_trivial(sigma: DegreeSet, rho: DegreeSet) -> bool:
    if rho.is_finite and rho.members == (0,):
        return True
    return sigma.is_all and rho.is_all


@dataclass(frozen=True)
class ProblemPair:
    """A (sigma, rho) pair together with the scalar parameters the solvers use."""

    sigma: DegreeSet
    rho: DegreeSet

    @classmethod
    def parse(cls, sigma: str, rho: str) -> "ProblemPair":
        return cls(parse_degree_set(sigma), parse_degree_set(rho))

    @property
    def s_top(self) -> int:
        return top_value(self.sigma)

    @property
    def r_top(self) -> int:
        return top_value(self.rho)

    @property
    def t_top(self) -> int:
        return max(self.s_top, self.r_top)

    @property
    def s_min(self) -> int:
        return self.sigma.min()

    @property
    def r_min(self) -> int:
        return self.rho.min()

    @property
    def m_max(self):
        return max_structure(self.sigma, self.rho)

    @property
    def both_finite(self) -> bool:
        return self.sigma.is_finite and self.rho.is_finite

    @property
    def trivial(self) -> bool:
        return is_trivial(self.sigma, self.rho)

    @property
    def base_c(self) -> int:
        return base_constant(self)

    @property
    def t_cost(self) -> int:
        return max(cost_value(self.sigma), cost_value(self.rho))

    def require_nonempty(self):
        if self.sigma.is_empty or self.rho.is_empty:
            raise DegreeSetError("solvers require non-empty sigma and rho")

    def __str__(self):
        return f"({self.sigma}, {self.rho})"


def base_constant(p: ProblemPair) -> int:
    if p.trivial:
        raise TrivialPairError(f"{p} is trivial")
    m = p.m_max
    s, r, t = p.s_top, p.r_top, p.t_top
    if m == 1:
        return s + r + 2
    if m == 2 and s == r and s % 2 == 0:
        return t + 2
    return t + 1


def working_modulus(p: ProblemPair) -> int:
    """Number of residue classes the structured DP partitions by (1 = none)."""
    m = p.m_max
    if not p.both_finite or m == 1:
        return 1
    if m == INFINITE:
        return max(2, p.t_top + 1)
    return int(m)


def inverse_state(state: tuple[bool, int], p: ProblemPair) -> tuple[bool, int]:
    """Inverse of a state ``(is_sigma, index)`` with respect to (sigma, rho)."""
    is_sigma, idx = state
    top = p.s_top if is_sigma else p.r_top
    if not 0 <= idx <= top:
        raise ValueError(f"state index {idx} outside 0..{top}")
    return is_sigma, top - idx


def _components(graph):
    seen = [False] * graph.n
    comps = []
    for start in range(graph.n):
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in graph.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(comp)
    return comps


def trivial_counts_by_size(graph, p: ProblemPair) -> list[int]:
    """Exact number of (sigma, rho)-sets of each size 0..n for a trivial pair."""
    if not p.trivial:
        raise ValueError(f"{p} is not trivial")
    n = graph.n
    if p.sigma.is_all and p.rho.is_all:
        return [math.comb(n, k) for k in range(n + 1)]
    # rho = {0}: a selected vertex forces its whole component in
    counts = [0] * (n + 1)
    counts[0] = 1
    for comp in _components(graph):
        if all(len(graph.adj[v]) in p.sigma for v in comp):
            size = len(comp)
            for k in range(n, size - 1, -1):
                counts[k] += counts[k - size]
    return counts


def trivial_count(graph, p: ProblemPair) -> int:
    return sum(trivial_counts_by_size(graph, p))
