"""Cyclic convolution over Z_{d_1} x ... x Z_{d_n} in a prime field, and exact
integer convolution by Chinese remaindering over several primes.

Arrays have shape ``(d_1, ..., d_n)``; the flat little-endian index of a tuple
``a`` is ``a_1 + d_1 * (a_2 + d_2 * (...))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

#: Primes below this use the exact float64 kernel; larger ones fall back to
#: Python integers.
SMALL_PRIME_LIMIT = 1 << 28
LIMB_BITS = 14
LIMB_MASK = (1 << LIMB_BITS) - 1
BLOCK = 1 << 11
#: Largest merged axis transformed in one pass.
GROUP_LIMIT = 64
SEARCH_CAP = 10_000_000

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24 with the first twelve prime bases."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class CyclicDomain:
    moduli: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(d) for d in self.moduli))
        if any(d < 1 for d in self.moduli):
            raise ValueError("moduli must be positive")

    @property
    def size(self) -> int:
        return math.prod(self.moduli)

    @property
    def distinct(self) -> tuple[int, ...]:
        return tuple(sorted(set(d for d in self.moduli if d > 1)))

    @property
    def d_prime(self) -> int:
        return math.prod(self.distinct)

    def flat_index(self, a) -> int:
        idx = 0
        for x, d in zip(reversed(tuple(a)), reversed(self.moduli)):
            idx = idx * d + x % d
        return idx

    def unflatten(self, idx: int) -> tuple[int, ...]:
        out = []
        for d in self.moduli:
            out.append(idx % d)
            idx //= d
        return tuple(out)


@dataclass(frozen=True)
class PrimePlan:
    p: int
    roots: dict  # modulus d -> element of multiplicative order exactly d


def root_of_unity(d: int, p: int) -> int:
    """An element of order exactly ``d`` in F_p (requires d | p - 1)."""
    if d == 1:
        return 1
    if (p - 1) % d:
        raise ValueError(f"{d} does not divide {p} - 1")
    qs = prime_factors(d)
    for x in range(2, p):
        w = pow(x, (p - 1) // d, p)
        if all(pow(w, d // q, p) != 1 for q in qs):
            return w
    raise ValueError(f"no root of order {d} mod {p}")


def roots_for(domain: CyclicDomain, p: int) -> dict:
    return {d: root_of_unity(d, p) for d in domain.distinct}


def find_prime_plan(domain, M: int) -> PrimePlan:
    """Smallest prime p = 1 + D' j with p > max(M, D), plus the needed roots."""
    domain = domain if isinstance(domain, CyclicDomain) else CyclicDomain(domain)
    dp = domain.d_prime
    bound = max(M, domain.size)
    j = (bound - 1) // dp + 1
    for _ in range(SEARCH_CAP):
        p = 1 + dp * j
        if p > bound and is_prime(p):
            return PrimePlan(p, roots_for(domain, p))
        j += 1
    raise RuntimeError(f"no prime found for D' = {dp} above {bound}")


def primes_for_product(domain, M: int, below: int = SMALL_PRIME_LIMIT) -> list[int]:
    """Primes p = 1 (mod D'), p < ``below``, largest first, with product > M."""
    domain = domain if isinstance(domain, CyclicDomain) else CyclicDomain(domain)
    dp = domain.d_prime
    j = (below - 2) // dp
    out, prod = [], 1
    while prod <= M or not out:
        if j < 1:
            raise RuntimeError("ran out of primes for the requested bound")
        p = 1 + dp * j
        if p > domain.size and is_prime(p):
            out.append(p)
            prod *= p
        j -= 1
    return out


def _dft_matrix(d: int, w: int, p: int, dtype):
    e = (np.arange(d)[:, None] * np.arange(d)[None, :]) % d
    powers = [1] * d
    for i in range(1, d):
        powers[i] = powers[i - 1] * w % p
    return np.array(powers, dtype=object)[e].astype(dtype)


def _apply_axis(arr: np.ndarray, mat: np.ndarray, axis: int, p: int) -> np.ndarray:
    """Multiply ``mat`` into ``arr`` along ``axis`` modulo p."""
    moved = np.moveaxis(arr, axis, -1)
    if arr.dtype == object:
        out = moved.dot(mat.T) % p
        return np.moveaxis(out, -1, axis)
    shape = moved.shape
    flat = np.ascontiguousarray(moved).reshape(-1, shape[-1])
    out = _mulmod(flat, mat.T, p).reshape(shape)
    return np.moveaxis(out, -1, axis)


def _mulmod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p for int64 matrices with entries in [0, p), p < 2**28.

    The left factor is split into 14-bit limbs so each float64 product stays
    below 2**42; blocks of at most 2**11 terms keep every sum exact.
    """
    bf = b.astype(np.float64)
    lo = (a & LIMB_MASK).astype(np.float64)
    hi = (a >> LIMB_BITS).astype(np.float64)
    d = a.shape[1]
    out_lo = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    out_hi = np.zeros_like(out_lo)
    for start in range(0, d, BLOCK):
        stop = min(d, start + BLOCK)
        out_lo += (lo[:, start:stop] @ bf[start:stop]).astype(np.int64) % p
        out_hi += (hi[:, start:stop] @ bf[start:stop]).astype(np.int64) % p
    return ((out_hi % p) * (1 << LIMB_BITS) + out_lo) % p


def _axis_groups(shape, limit: int):
    """Split the axes into runs whose product stays within ``limit``."""
    groups, start, size = [], 0, 1
    for i, d in enumerate(shape):
        if i > start and size * d > limit:
            groups.append((start, i))
            start, size = i, 1
        size *= d
    groups.append((start, len(shape)))
    return groups


@lru_cache(maxsize=256)
def _group_matrix(dims: tuple, roots: tuple, p: int, dtype_name: str):
    mat = np.ones((1, 1), dtype=object)
    for d, w in zip(dims, roots):
        mat = np.kron(mat, _dft_matrix(d, w, p, object)) % p
    return mat.astype(np.dtype(dtype_name))


def transform(arr: np.ndarray, plan: PrimePlan, inverse: bool = False) -> np.ndarray:
    """Per-axis DFT over F_p (inverse includes the 1/D scaling).

    Runs of small consecutive axes are merged and transformed together with
    the Kronecker product of their DFT matrices, which is the same linear map
    applied in fewer passes.
    """
    p = plan.p
    dtype = np.int64 if p < SMALL_PRIME_LIMIT else object
    out = np.asarray(arr)
    out = (out % p).astype(dtype) if out.dtype == object else out.astype(dtype) % p
    shape = out.shape
    groups = _axis_groups(shape, GROUP_LIMIT)
    out = out.reshape([math.prod(shape[a:b]) for a, b in groups])
    scale = 1
    for axis, (a, b) in enumerate(groups):
        dims = tuple(d for d in shape[a:b] if d > 1)
        if not dims:
            continue
        roots = tuple(plan.roots[d] for d in dims)
        if inverse:
            roots = tuple(pow(w, -1, p) for w in roots)
            scale = scale * math.prod(dims) % p
        mat = _group_matrix(dims, roots, p, "int64" if dtype is np.int64 else "object")
        out = _apply_axis(out, mat, axis, p)
    if inverse and scale != 1:
        out = out * pow(scale, -1, p) % p
    return out.reshape(shape)


def convolve_mod_p(f, g, plan: PrimePlan) -> np.ndarray:
    """h(a) = sum over a1 + a2 = a of f(a1) g(a2), in F_p."""
    f = np.asarray(f)
    g = np.asarray(g)
    if f.shape != g.shape:
        raise ValueError("shape mismatch")
    p = plan.p
    F = transform(f, plan)
    G = transform(g, plan)
    if F.dtype == object:
        H = F * G % p
    else:
        H = (F * G) % p  # both < 2**28, product < 2**56
    return transform(H, plan, inverse=True)


def crt_combine(residues, primes):
    """Combine per-prime arrays into integers in [0, prod(primes))."""
    if len(primes) == 1:
        return np.asarray(residues[0])
    x = np.asarray(residues[0]).astype(object)
    mod = primes[0]
    for r, p in zip(residues[1:], primes[1:]):
        r = np.asarray(r).astype(object)
        inv = pow(mod, -1, p)
        t = ((r - x) % p) * inv % p
        x = x + mod * t
        mod *= p
    return x


def _reduce_mod(a: np.ndarray, p: int) -> np.ndarray:
    if a.dtype == object:
        return (a % p).astype(np.int64)
    return a % p


def convolve_exact(f, g, M: int | None = None) -> np.ndarray:
    """Exact convolution of non-negative integer arrays by CRT over several primes.

    ``M`` must bound every entry of the result; by default it is taken as
    sum(f) * sum(g).  The result is int64 when one prime suffices and an
    object array of Python integers otherwise.
    """
    f = np.asarray(f)
    g = np.asarray(g)
    if f.shape != g.shape:
        raise ValueError("shape mismatch")
    if f.dtype != object:
        f = f.astype(np.int64)
    if g.dtype != object:
        g = g.astype(np.int64)
    if M is None:
        M = int(f.astype(object).sum()) * int(g.astype(object).sum())
    domain = CyclicDomain(f.shape)
    primes = primes_for_product(domain, M)
    residues = []
    for p in primes:
        plan = PrimePlan(p, roots_for(domain, p))
        residues.append(convolve_mod_p(_reduce_mod(f, p), _reduce_mod(g, p), plan))
    return crt_combine(residues, primes)
