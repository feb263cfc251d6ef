"""Prime generation, smallest-prime-factor tables, and fast evaluation of
completely multiplicative functions over integer ranges.

Conventions used throughout the package:

* spf(1) is stored as the sentinel 1; the least prime factor of 1 is treated
  as +infinity in comparisons (see `p_minus` / `is_rough`), and the largest
  prime factor of 1 as 1.
* Tables store 32-bit entries, so covered ranges must sit below 2^32.
* All bulk work is segmented and vectorised; per-element Python loops are
  reserved for single-integer queries.
"""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError, CapacityError, OutOfRangeError

_MAGIC = b"SPFT"
_CACHE_VERSION = 1
_HEADER = struct.Struct("<4sIII")  # magic, version, lo, hi  (16 bytes)

DEFAULT_MEMORY_CAP = 2**31  # bytes of spf storage a single table may use

# ---------------------------------------------------------------------------
# prime generation (cached, grow-on-demand)

_prime_cache: dict[str, np.ndarray] = {}


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array.  The underlying array is cached and
    only regrown when a larger bound is requested; callers receive a view."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    base = _prime_cache.get("primes")
    limit = int(_prime_cache.get("limit", 0))
    if base is None or limit < n:
        limit = max(int(n * 1.2) + 64, 1 << 16)
        sieve = np.ones(limit + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, math.isqrt(limit) + 1):
            if sieve[p]:
                sieve[p * p :: p] = False
        base = np.nonzero(sieve)[0].astype(np.int64)
        _prime_cache["primes"] = base
        _prime_cache["limit"] = limit
    k = int(np.searchsorted(base, n, side="right"))
    return base[:k]


def prime_count(x: float) -> int:
    """pi(x) for x within the cached prime range (grows the cache as needed)."""
    if x < 2:
        return 0
    ps = primes_up_to(int(x))
    return int(np.searchsorted(ps, int(x), side="right"))


def prime_base(n: int) -> np.ndarray:
    """The full cached prime array, grown to cover n.  The returned object is
    stable across calls until a larger bound forces a regrow, which makes it a
    usable identity key for per-assignment value caches."""
    primes_up_to(n)
    return _prime_cache["primes"]


def segments(lo: int, hi: int, size: int = 1 << 20):
    """Yield half-open segment bounds covering [lo, hi)."""
    a = lo
    while a < hi:
        b = min(a + size, hi)
        yield a, b
        a = b


# ---------------------------------------------------------------------------
# smallest-prime-factor tables


@dataclass
class Factorization:
    """n = prod p^a as a list of (p, a) pairs, p ascending."""

    n: int
    pairs: list[tuple[int, int]]

    @property
    def big_omega(self) -> int:
        return sum(a for _, a in self.pairs)

    @property
    def omega(self) -> int:
        return len(self.pairs)

    @property
    def p_minus(self) -> float:
        """Least prime factor; +inf for n = 1 so range comparisons read right."""
        return self.pairs[0][0] if self.pairs else math.inf

    @property
    def p_plus(self) -> int:
        """Greatest prime factor; 1 for n = 1."""
        return self.pairs[-1][0] if self.pairs else 1


@dataclass
class SpfTable:
    """Smallest prime factor for every integer in [base_offset, limit]."""

    base_offset: int
    limit: int
    spf: np.ndarray = field(repr=False)

    def covers(self, n: int) -> bool:
        return self.base_offset <= n <= self.limit

    def spf_of(self, n: int) -> int:
        if not self.covers(n):
            raise OutOfRangeError(f"{n} outside table [{self.base_offset}, {self.limit}]")
        return int(self.spf[n - self.base_offset])


def build_spf_table(lo: int, hi: int, memory_cap: int = DEFAULT_MEMORY_CAP) -> SpfTable:
    """Sieve smallest prime factors over [lo, hi] (inclusive).

    Only primes <= sqrt(hi) are needed; entries left unmarked after that pass
    are primes and get themselves, and 1 gets the sentinel 1."""
    if lo < 1 or hi < lo:
        raise ArgumentError(f"bad range [{lo}, {hi}]")
    if hi >= 2**32:
        raise CapacityError("32-bit spf entries require hi < 2^32")
    n_entries = hi - lo + 1
    if 4 * n_entries > memory_cap:
        raise CapacityError(
            f"table [{lo}, {hi}] needs {4 * n_entries} bytes > cap {memory_cap}"
        )
    spf = np.zeros(n_entries, dtype=np.uint32)
    for p in primes_up_to(math.isqrt(hi)):
        p = int(p)
        start = max(p, ((lo + p - 1) // p) * p)
        sl = spf[start - lo :: p]
        sl[sl == 0] = p
    rest = np.nonzero(spf == 0)[0]
    spf[rest] = (rest + lo).astype(np.uint32)  # primes > sqrt(hi), and spf(1) = 1
    return SpfTable(base_offset=lo, limit=hi, spf=spf)


def save_spf_table(table: SpfTable, path: str) -> None:
    """Persist as 16-byte header (magic, version, lo, hi) + little-endian u32."""
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, _CACHE_VERSION, table.base_offset, table.limit))
        fh.write(table.spf.astype("<u4").tobytes())


def load_spf_table(path: str) -> SpfTable:
    with open(path, "rb") as fh:
        raw = fh.read(_HEADER.size)
        if len(raw) != _HEADER.size:
            raise ArgumentError(f"{path}: truncated header")
        magic, version, lo, hi = _HEADER.unpack(raw)
        if magic != _MAGIC:
            raise ArgumentError(f"{path}: not an spf cache file")
        if version != _CACHE_VERSION:
            raise ArgumentError(f"{path}: unsupported cache version {version}")
        data = np.frombuffer(fh.read(), dtype="<u4")
    if data.size != hi - lo + 1:
        raise ArgumentError(f"{path}: payload size does not match header range")
    return SpfTable(base_offset=lo, limit=hi, spf=data.astype(np.uint32))


def cache_dir() -> str | None:
    return os.environ.get("PRETLAB_CACHE_DIR")


# ---------------------------------------------------------------------------
# factorisation and pointwise evaluation


def factorize(n: int, table: SpfTable) -> Factorization:
    """Factor n.  Uses the spf chain when the table starts at 1 or 2 and covers
    n; otherwise falls back to trial division, which is valid for n <= limit^2."""
    if n < 1:
        raise ArgumentError("factorize needs n >= 1")
    if n == 1:
        return Factorization(1, [])
    pairs: list[tuple[int, int]] = []
    if table.base_offset <= 2 and table.covers(n):
        m = n
        while m > 1:
            p = int(table.spf[m - table.base_offset])
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            pairs.append((p, a))
        return Factorization(n, pairs)
    if n > table.limit**2:
        raise OutOfRangeError(f"{n} exceeds limit^2 of table (limit {table.limit})")
    m = n
    for p in primes_up_to(math.isqrt(n)):
        p = int(p)
        if p * p > m:
            break
        if m % p == 0:
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            pairs.append((p, a))
    if m > 1:
        pairs.append((m, 1))
    return Factorization(n, pairs)


def is_rough(n: int, y: float, table: SpfTable) -> bool:
    """P^-(n) > y, with P^-(1) treated as +infinity."""
    if n == 1:
        return True
    if table.base_offset <= 2 and table.covers(n):
        return table.spf_of(n) > y
    return factorize(n, table).p_minus > y


def eval_cm(f, n: int, table: SpfTable) -> complex:
    """f(n) = prod f(p)^a for a completely multiplicative prime assignment.

    Powers go by repeated multiplication (a <= ~60 for 64-bit n), so no
    complex pow() branch cuts are involved."""
    fact = factorize(n, table)
    out: complex = 1.0 + 0.0j
    for p, a in fact.pairs:
        z = f.at(p)
        for _ in range(a):
            out *= z
    return out


def eval_cm_range(f, lo: int, hi: int) -> np.ndarray:
    """Vectorised f(n) for n in [lo, hi).

    Sieves with primes <= sqrt(hi-1) only.  Multiples of each p^k pick up one
    factor f(p), and a parallel float64 product `found` records the sieved
    part of n exactly (products stay below 2^53), so the leftover cofactor
    n / found is either 1 or a single prime > sqrt(hi), recovered without any
    integer division.  Assignments that are constant on primes short-circuit
    to a factor-count table lookup.  This is the hot path behind the
    streaming sums."""
    if lo < 1 or hi <= lo:
        raise ArgumentError(f"bad range [{lo}, {hi})")
    if hi - 1 > 2**52:
        raise CapacityError("range endpoints must stay below 2^52")
    n_len = hi - lo
    top = hi - 1
    real = getattr(f, "is_real", False)
    const = getattr(f, "constant_value", None)
    found = np.ones(n_len, dtype=np.float64)
    if const is None:
        vals = np.ones(n_len, dtype=np.float64 if real else np.complex128)
    else:
        nfac = np.zeros(n_len, dtype=np.int8)  # Omega(n), total factor count
        vals = None
    for p in primes_up_to(math.isqrt(top)):
        p = int(p)
        fp = None
        if const is None:
            fp = f.at(p)
            if real:
                fp = fp.real
        pf = float(p)
        pk = p
        while pk <= top:
            start = ((lo + pk - 1) // pk) * pk
            if start <= top:
                sl = slice(start - lo, None, pk)
                found[sl] *= pf
                if const is None:
                    vals[sl] *= fp
                else:
                    nfac[sl] += 1
            if pk > top // p:
                break
            pk *= p
    n_float = np.arange(lo, hi, dtype=np.float64)
    left = found < n_float  # leftover prime > sqrt(hi) divides n
    if const is not None:
        nfac[left] += 1
        max_omega = int(nfac.max()) if n_len else 0
        z = complex(const)
        if z == -1.0:  # Liouville fast path: (-1)^Omega
            return 1.0 - 2.0 * (nfac & 1)
        table = np.array([z**a for a in range(max_omega + 1)])
        if real:
            table = table.real
        return table[nfac]
    if left.any():
        big = f.at_many((n_float[left] / found[left]).astype(np.int64))
        vals[left] *= big.real if real else big
    return vals


def rough_mask_range(lo: int, hi: int, y: float) -> np.ndarray:
    """Boolean mask over [lo, hi): True where P^-(n) > y (n = 1 counts)."""
    if lo < 1 or hi <= lo:
        raise ArgumentError(f"bad range [{lo}, {hi})")
    mask = np.ones(hi - lo, dtype=bool)
    if y >= 2:
        for p in primes_up_to(min(int(y), hi - 1)):
            p = int(p)
            start = max(p, ((lo + p - 1) // p) * p)
            if start < hi:
                mask[start - lo :: p] = False
    if lo == 1:
        mask[0] = True
    return mask
