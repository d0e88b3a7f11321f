"""State strings over a small alphabet, and how two of them combine.

A state is packed into one small integer ``(index << 1) | is_sigma`` so that a
state string is a plain tuple of ints and can be hashed cheaply.  A language is
a dict mapping state strings to a value whose meaning depends on the solver
mode (see :class:`Mode`).
"""

from __future__ import annotations

from dataclasses import dataclass

from .setspec import ProblemPair


def sigma_state(index: int) -> int:
    return (index << 1) | 1


def rho_state(index: int) -> int:
    return index << 1


def is_sigma(code: int) -> bool:
    return bool(code & 1)


def state_index(code: int) -> int:
    return code >> 1


def format_string(x) -> str:
    """Debug form such as ``s3 s3 s2 r1 r0``."""
    return " ".join(("s" if c & 1 else "r") + str(c >> 1) for c in x)


def parse_string(text: str) -> tuple[int, ...]:
    out = []
    for tok in text.split():
        if tok[0] not in "sr" or not tok[1:].isdigit():
            raise ValueError(f"bad state token {tok!r}")
        idx = int(tok[1:])
        out.append(sigma_state(idx) if tok[0] == "s" else rho_state(idx))
    return tuple(out)


@dataclass(frozen=True)
class Alphabet:
    """Capacities of the sigma and rho states and whether they saturate.

    A saturating side is cofinite: indices past the top collapse onto the top
    state, which stands for "top or more".  A non-saturating side drops
    strings whose index would exceed the top.
    """

    s_top: int
    r_top: int
    sat_sigma: bool = False
    sat_rho: bool = False

    @classmethod
    def for_pair(cls, pair: ProblemPair) -> "Alphabet":
        return cls(pair.s_top, pair.r_top, pair.sigma.is_cofinite, pair.rho.is_cofinite)

    @classmethod
    def unbounded(cls, n: int) -> "Alphabet":
        """The alphabet with indices 0..n on both sides and no saturation."""
        return cls(n, n, False, False)

    def cap(self, sig: int) -> int:
        return self.s_top if sig else self.r_top

    def saturates(self, sig: int) -> bool:
        return self.sat_sigma if sig else self.sat_rho

    def is_saturated(self, code: int) -> bool:
        sig = code & 1
        return self.saturates(sig) and (code >> 1) == self.cap(sig)

    def bump(self, code: int, amount: int = 1):
        """Add ``amount`` to the index of ``code``; None when it overflows."""
        sig = code & 1
        idx = (code >> 1) + amount
        top = self.cap(sig)
        if idx > top:
            if not self.saturates(sig):
                return None
            idx = top
        return (idx << 1) | sig

    def make(self, sig: int, idx: int):
        top = self.cap(sig)
        if idx > top:
            if not self.saturates(sig):
                return None
            idx = top
        return (idx << 1) | sig

    def states(self):
        return [rho_state(i) for i in range(self.r_top + 1)] + [
            sigma_state(i) for i in range(self.s_top + 1)
        ]


@dataclass(frozen=True)
class VectorTriple:
    sig: tuple[int, ...]
    wt: tuple[int, ...]
    mwt: tuple[int, ...]


def sigma_vector(x) -> tuple[int, ...]:
    return tuple(c & 1 for c in x)


def weight_vector(x) -> tuple[int, ...]:
    return tuple(c >> 1 for c in x)


def decompose(x, m: int = 1) -> VectorTriple:
    wt = weight_vector(x)
    return VectorTriple(sigma_vector(x), wt, tuple(w % m for w in wt))


def capacity(sig, alphabet: Alphabet) -> tuple[int, ...]:
    return tuple(alphabet.cap(s) for s in sig)


def compose(sig, wt) -> tuple[int, ...]:
    """Inverse of :func:`decompose`: rebuild a string from its vectors."""
    return tuple((w << 1) | s for s, w in zip(sig, wt))


def combine(x, y, alphabet: Alphabet):
    """Position-wise combination; None stands for the undefined result."""
    if len(x) != len(y):
        raise ValueError("strings of different length")
    out = []
    for a, b in zip(x, y):
        if (a ^ b) & 1:
            return None
        c = alphabet.make(a & 1, (a >> 1) + (b >> 1))
        if c is None:
            return None
        out.append(c)
    return tuple(out)


def in_relation(x, y, m: int) -> bool:
    """sigma(x) . d_m(y) == sigma(y) . d_m(x) modulo m."""
    lhs = sum((a >> 1) for a, b in zip(y, x) if b & 1)
    rhs = sum((a >> 1) for a, b in zip(x, y) if b & 1)
    return (lhs - rhs) % m == 0


def relation_violations(lang, m: int, limit: int | None = None):
    """All pairs of strings of ``lang`` that break the residue relation."""
    items = list(lang)
    bad = []
    for i, x in enumerate(items):
        for y in items[i + 1:]:
            if not in_relation(x, y, m):
                bad.append((x, y))
                if limit is not None and len(bad) >= limit:
                    return bad
    return bad


# ---------------------------------------------------------------- modes


class Mode:
    """How the value stored with a string behaves under the DP steps.

    Subclasses say what the empty witness is worth and how values merge or
    multiply at joins.
    """

    name = "?"

    def unit(self):
        raise NotImplementedError

    def shift(self, v):
        raise NotImplementedError

    def merge(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def add_to(self, lang: dict, key, v):
        old = lang.get(key)
        lang[key] = v if old is None else self.merge(old, v)

    # the structured join works with size -> weight maps
    def to_sizes(self, v) -> dict[int, int]:
        raise NotImplementedError

    def from_sizes(self, sizes: dict[int, int]):
        """Rebuild a value from a size -> positive weight map (None if empty)."""
        raise NotImplementedError


class DecideMode(Mode):
    name = "decide"

    def unit(self):
        return True

    def shift(self, v):
        return v

    def merge(self, a, b):
        return True

    def mul(self, a, b):
        return True

    def to_sizes(self, v):
        return {0: 1}

    def from_sizes(self, sizes):
        return True if sizes else None


class CountMode(Mode):
    """Values are size -> number of witnesses."""

    name = "count"

    def unit(self):
        return {0: 1}

    def shift(self, v):
        return {k + 1: c for k, c in v.items()}

    def merge(self, a, b):
        out = dict(a)
        for k, c in b.items():
            out[k] = out.get(k, 0) + c
        return out

    def mul(self, a, b):
        out: dict[int, int] = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                out[k] = out.get(k, 0) + ca * cb
        return out

    def to_sizes(self, v):
        return v

    def from_sizes(self, sizes):
        return dict(sizes) if sizes else None


class MinMode(Mode):
    """Values are the smallest witness size."""

    name = "min"

    def unit(self):
        return 0

    def shift(self, v):
        return v + 1

    def merge(self, a, b):
        return a if a <= b else b

    def mul(self, a, b):
        return a + b

    def to_sizes(self, v):
        return {v: 1}

    def from_sizes(self, sizes):
        return min(sizes) if sizes else None


class MaxMode(MinMode):
    name = "max"

    def merge(self, a, b):
        return a if a >= b else b

    def from_sizes(self, sizes):
        return max(sizes) if sizes else None


class SizeSetMode(Mode):
    """Values are the set of attainable witness sizes."""

    name = "sizes"

    def unit(self):
        return frozenset((0,))

    def shift(self, v):
        return frozenset(k + 1 for k in v)

    def merge(self, a, b):
        return a | b

    def mul(self, a, b):
        return frozenset(x + y for x in a for y in b)

    def to_sizes(self, v):
        return {k: 1 for k in v}

    def from_sizes(self, sizes):
        return frozenset(sizes) if sizes else None


MODES = {
    "decide": DecideMode(),
    "count": CountMode(),
    "min": MinMode(),
    "max": MaxMode(),
    "sizes": SizeSetMode(),
}


def get_mode(mode) -> Mode:
    return mode if isinstance(mode, Mode) else MODES[mode]


def group_by_sigma(lang: dict) -> dict[tuple, list]:
    groups: dict[tuple, list] = {}
    for x, v in lang.items():
        groups.setdefault(sigma_vector(x), []).append((x, v))
    return groups


def combine_languages_naive(L1: dict, L2: dict, alphabet: Alphabet, mode="decide") -> dict:
    """L1 (+) L2 by trying every pair of strings with equal sigma-vectors."""
    mode = get_mode(mode)
    g2 = group_by_sigma(L2)
    out: dict = {}
    for sv, items1 in group_by_sigma(L1).items():
        items2 = g2.get(sv)
        if not items2:
            continue
        for x, vx in items1:
            for y, vy in items2:
                z = combine(x, y, alphabet)
                if z is not None:
                    mode.add_to(out, z, mode.mul(vx, vy))
    return out
