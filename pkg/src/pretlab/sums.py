"""Streaming partial sums of completely multiplicative functions.

Index sets: all n <= x, the y-rough n <= x (P^-(n) > y, which keeps n = 1),
primes only, or prime powers (von Mangoldt weighting).  Optional weights
(log n)^k and n^{-s}.  Everything is segmented, vectorised, and accumulated
with compensation; segment results merge in a fixed order so output does not
depend on the thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .accumulate import ComplexAccumulator, comp_sum_complex
from .catalog import FunctionSpec, PrimeAssignment, as_assignment
from .errors import ArgumentError
from .sieve import eval_cm_range, primes_up_to, rough_mask_range, segments

WEIGHTS = ("unit", "log_p", "von_mangoldt", "reciprocal")

MAX_LOG_POWER = 12


@dataclass
class SumRequest:
    f: "FunctionSpec | PrimeAssignment"
    x: int
    k: int = 0
    y: float | None = None
    prime_only: bool = False
    weight: str = "unit"
    s: complex | None = None
    threads: int = 1
    segment_size: int = 1 << 20

    def validate(self) -> None:
        if self.x < 1:
            raise ArgumentError("x must be >= 1")
        if not 0 <= self.k <= MAX_LOG_POWER:
            raise ArgumentError(f"k must lie in [0, {MAX_LOG_POWER}]")
        if self.weight not in WEIGHTS:
            raise ArgumentError(f"weight must be one of {WEIGHTS}")
        if self.weight == "von_mangoldt" and self.prime_only:
            raise ArgumentError("von_mangoldt weight already implies prime powers")
        if self.weight == "log_p" and not self.prime_only:
            raise ArgumentError("log_p weight is defined on primes; set prime_only")
        if self.weight == "reciprocal" and self.s is None:
            raise ArgumentError("reciprocal weight needs the point s")
        if self.y is not None and self.y < 0:
            raise ArgumentError("y must be >= 0")


@dataclass
class SumResult:
    value: complex
    terms: int
    compensation: float


def _weight_factor(n_float: np.ndarray, logn: np.ndarray, req: SumRequest) -> np.ndarray:
    w = None
    if req.k:
        w = logn**req.k
    if req.weight == "reciprocal":
        s = complex(req.s)
        damp = np.exp(-s.real * logn)
        if s.imag:
            damp = damp * np.exp(-1j * s.imag * logn)
        w = damp if w is None else w * damp
    if w is None:
        w = np.ones_like(n_float)
    return w


def _prime_power_entries(x: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All q = p^a <= x as (p, a, q) arrays, q unsorted across levels."""
    ps_all, as_all, qs_all = [], [], []
    a = 1
    while 2**a <= x:
        ps = primes_up_to(int(round(x ** (1.0 / a) + 1e-9)))
        ps = ps[ps ** a <= x] if a > 1 else ps
        if ps.size:
            ps_all.append(ps)
            as_all.append(np.full(ps.shape, a, dtype=np.int64))
            qs_all.append(ps**a)
        a += 1
    if not ps_all:
        z = np.empty(0, dtype=np.int64)
        return z, z, z
    return np.concatenate(ps_all), np.concatenate(as_all), np.concatenate(qs_all)


def _prime_sum(req: SumRequest, fn: PrimeAssignment) -> SumResult:
    ps = primes_up_to(req.x)
    if req.y is not None:
        ps = ps[ps > req.y]
    if ps.size == 0:
        return SumResult(0j, 0, 0.0)
    pf = ps.astype(np.float64)
    logp = np.log(pf)
    vals = fn.at_many(ps)
    w = _weight_factor(pf, logp, req)
    if req.weight == "log_p":
        w = w * logp
    value, comp = comp_sum_complex(vals * w)
    return SumResult(value, int(ps.size), comp)


def _von_mangoldt_sum(req: SumRequest, fn: PrimeAssignment) -> SumResult:
    ps, aa, qs = _prime_power_entries(req.x)
    if req.y is not None:
        keep = ps > req.y
        ps, aa, qs = ps[keep], aa[keep], qs[keep]
    if qs.size == 0:
        return SumResult(0j, 0, 0.0)
    logp = np.log(ps.astype(np.float64))
    logq = aa * logp
    fvals = fn.at_many(ps) ** aa
    w = _weight_factor(qs.astype(np.float64), logq, req)
    value, comp = comp_sum_complex(fvals * logp * w)
    return SumResult(value, int(qs.size), comp)


def _segment_job(req: SumRequest, fn: PrimeAssignment, a: int, b: int):
    vals = eval_cm_range(fn, a, b)
    n_float = np.arange(a, b, dtype=np.float64)
    logn = np.log(n_float)
    w = _weight_factor(n_float, logn, req)
    if req.y is not None:
        mask = rough_mask_range(a, b, req.y)
        terms = int(mask.sum())
        w = np.where(mask, w, 0.0)
    else:
        terms = b - a
    value, comp = comp_sum_complex(vals * w)
    return value, terms, comp


def partial_sum(req: SumRequest) -> SumResult:
    """Evaluate the requested sum with compensated accumulation."""
    req.validate()
    fn = as_assignment(req.f)
    if req.weight == "von_mangoldt":
        return _von_mangoldt_sum(req, fn)
    if req.prime_only:
        return _prime_sum(req, fn)

    primes_up_to(math.isqrt(req.x))  # warm the shared cache before any pool
    segs = list(segments(1, req.x + 1, req.segment_size))
    if req.threads > 1 and len(segs) > 1:
        with ThreadPoolExecutor(max_workers=req.threads) as pool:
            parts = list(pool.map(lambda ab: _segment_job(req, fn, *ab), segs))
    else:
        parts = [_segment_job(req, fn, a, b) for a, b in segs]

    acc = ComplexAccumulator()
    terms = 0
    comp = 0.0
    for value, seg_terms, seg_comp in parts:  # fixed merge order
        acc.add(value)
        terms += seg_terms
        comp = max(comp, seg_comp)
    return SumResult(acc.value, terms, max(comp, acc.compensation))


def prime_log_sum(f, x: int, y: float | None = None) -> SumResult:
    """sum_{p <= x} f(p) log p, primes only (no prime powers)."""
    return partial_sum(SumRequest(f=f, x=x, y=y, prime_only=True, weight="log_p"))


def prime_reciprocal_sum(f, y: float, x: int, t: float = 0.0) -> SumResult:
    """sum_{y < p <= x} f(p) / p^{1+it}."""
    if y >= x:
        raise ArgumentError("need y < x")
    return partial_sum(
        SumRequest(f=f, x=x, y=y, prime_only=True, weight="reciprocal", s=1 + 1j * t)
    )


def grid_sums(
    f,
    xs: "list[int] | np.ndarray",
    k: int = 0,
    y: float | None = None,
    threads: int = 1,
    segment_size: int = 1 << 20,
) -> np.ndarray:
    """S_k at every grid point in one streaming pass.

    Returns complex values aligned with sorted(xs); the caller gets exactly
    what repeated partial_sum calls would give, to compensation accuracy."""
    xs_sorted = np.asarray(sorted(int(x) for x in xs), dtype=np.int64)
    if xs_sorted.size == 0:
        return np.empty(0, dtype=np.complex128)
    if xs_sorted[0] < 1:
        raise ArgumentError("grid points must be >= 1")
    fn = as_assignment(f)
    x_max = int(xs_sorted[-1])
    primes_up_to(math.isqrt(x_max))

    def job(ab):
        a, b = ab
        vals = eval_cm_range(fn, a, b)
        n_float = np.arange(a, b, dtype=np.float64)
        if k:
            vals = vals * np.log(n_float) ** k
        if y is not None:
            vals = np.where(rough_mask_range(a, b, y), vals, 0.0)
        total = comp_sum_complex(vals)[0]
        inner = []
        idx = np.searchsorted(xs_sorted, a, side="left")
        csum = None
        while idx < xs_sorted.size and xs_sorted[idx] < b:
            if csum is None:
                csum = np.cumsum(vals)
            inner.append((int(idx), complex(csum[xs_sorted[idx] - a])))
            idx += 1
        return total, inner

    segs = list(segments(1, x_max + 1, segment_size))
    if threads > 1 and len(segs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(job, segs))
    else:
        parts = [job(ab) for ab in segs]

    out = np.zeros(xs_sorted.size, dtype=np.complex128)
    acc = ComplexAccumulator()
    for total, inner in parts:  # fixed merge order
        for idx, upto in inner:
            out[idx] = acc.value + upto
        acc.add(total)
    return out


@dataclass
class CertifyReport:
    """Grid certification of a smallness hypothesis for S_0(x; f)."""

    kind: str
    max_ratio: float
    argmax_x: int
    rows: list[tuple[int, float, float, float]] = field(repr=False)  # x, |S|, bound, ratio
    params: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.max_ratio <= 1.0


def _log_grid(lo: int, hi: int, points: int) -> np.ndarray:
    g = np.unique(np.round(np.exp(np.linspace(math.log(lo), math.log(hi), points))).astype(np.int64))
    return g[g >= lo]


def certify_small_on_average(
    f,
    Q: float,
    A: float,
    x_max: int,
    grid: "list[int] | None" = None,
    grid_points: int = 64,
    threads: int = 1,
) -> CertifyReport:
    """Max over the grid of |S_0(x;f)| (log x)^A / (x (log Q)^{A-2}).

    A value <= 1 certifies the small-on-average hypothesis with constant 1 on
    the grid (grid evidence only, not a proof for all x)."""
    if Q < 3:
        raise ArgumentError("need Q >= 3")
    if A < 2:
        raise ArgumentError("need A >= 2")
    if x_max < Q:
        raise ArgumentError("need x_max >= Q")
    xs = np.asarray(grid, dtype=np.int64) if grid is not None else _log_grid(int(math.ceil(Q)), x_max, grid_points)
    if (xs < Q).any():
        raise ArgumentError("certification grid must start at x >= Q")
    sums = grid_sums(f, xs, threads=threads)
    rows = []
    max_ratio, argmax_x = -math.inf, int(xs[0])
    for x, s0 in zip(sorted(int(v) for v in xs), sums):
        bound = x * math.log(Q) ** (A - 2) / math.log(x) ** A
        ratio = abs(s0) / bound
        rows.append((int(x), float(abs(s0)), float(bound), float(ratio)))
        if ratio > max_ratio:
            max_ratio, argmax_x = ratio, int(x)
    return CertifyReport(
        kind="small_on_average",
        max_ratio=float(max_ratio),
        argmax_x=argmax_x,
        rows=rows,
        params={"Q": Q, "A": A, "x_max": x_max},
    )


def certify_power_saving(
    f,
    Q: float,
    x_max: int,
    grid: "list[int] | None" = None,
    grid_points: int = 64,
    threads: int = 1,
) -> CertifyReport:
    """Max over the grid of |S_0(x;f)| (log x)^2 / x^{1-delta}, delta = 1/log Q."""
    if Q < 3:
        raise ArgumentError("need Q >= 3")
    if x_max < Q:
        raise ArgumentError("need x_max >= Q")
    delta = 1.0 / math.log(Q)
    xs = np.asarray(grid, dtype=np.int64) if grid is not None else _log_grid(int(math.ceil(Q)), x_max, grid_points)
    sums = grid_sums(f, xs, threads=threads)
    rows = []
    max_ratio, argmax_x = -math.inf, int(xs[0])
    for x, s0 in zip(sorted(int(v) for v in xs), sums):
        bound = x ** (1.0 - delta) / math.log(x) ** 2
        ratio = abs(s0) / bound
        rows.append((int(x), float(abs(s0)), float(bound), float(ratio)))
        if ratio > max_ratio:
            max_ratio, argmax_x = ratio, int(x)
    return CertifyReport(
        kind="power_saving",
        max_ratio=float(max_ratio),
        argmax_x=argmax_x,
        rows=rows,
        params={"Q": Q, "x_max": x_max, "delta": delta},
    )
