"""Truncated Dirichlet series and their derivative/log-derivative toolbox.

Conventions shared by everything in this module:

* Series are restricted to y-rough integers: L_y(s,f) = sum over n <= N with
  P^-(n) > y of f(n) n^{-s}.  n = 1 always participates (P^-(1) = +inf).
  y = 1 (or anything < 2) means no restriction.
* Convergent-mode evaluations require Re(s) > 1 and carry a rigorous tail
  majorant sum_{n>N} (log n)^k n^{-sigma} bounded by the integral
  Gamma(k+1, (sigma-1) log N)/(sigma-1)^{k+1} plus one term covering the
  non-monotone hump when log N < k/sigma.
* Window-mode evaluations (sigma <= 1, used by the real-zero scanner) are
  plain truncated partial sums; they report an empirical tail scale taken
  from the last dyadic block instead of a divergent majorant.
* Quadratures reduce in a fixed order regardless of blocking, so repeated
  runs give byte-identical numbers.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import gammaincc

from .accumulate import comp_sum, comp_sum_complex
from .catalog import as_assignment
from .distance import v_sub_t
from .errors import (
    ArgumentError,
    CapacityError,
    DegenerateError,
    DivergenceError,
    PretlabError,
    SignChangeError,
)
from .sieve import eval_cm_range, primes_up_to, rough_mask_range, segments
from .sums import MAX_LOG_POWER, _prime_power_entries

CAP_N = 1 << 31  # largest truncation any series walk will attempt
PSI_ENVELOPE = 1.04  # prime-power counting stays below PSI_ENVELOPE * x

_T_BLOCK = 4  # t rows per phase-matrix block; keeps buffers ~16 MB
_SEG = 1 << 18


# ---------------------------------------------------------------------------
# truncated series with tail control


@dataclass
class SeriesEvaluation:
    s: complex
    y: float
    k: int
    value: complex
    truncation_N: int
    tail_bound: float


def _tail_majorant(sigma: float, k: int, N: int) -> float:
    """Upper bound for sum_{n>N} (log n)^k n^{-sigma}, sigma > 1."""
    d = sigma - 1.0
    z = d * math.log(N)
    integral = gammaincc(k + 1, z) * math.factorial(k) / d ** (k + 1)
    # one extra term dominates the hump if (log u)^k u^{-sigma} still grows at N
    u_star = max(float(N), math.exp(k / sigma))
    hump = math.log(u_star) ** k * u_star**-sigma
    return float(integral + hump)


def _compressed_rough(f, y: float, N: int, segment_size: int = 1 << 20):
    """(log n, f(n)) arrays over y-rough n <= N; f=None means f == 1."""
    if N < 1:
        raise ArgumentError("need N >= 1")
    if N > CAP_N:
        raise CapacityError(f"truncation {N} exceeds capacity {CAP_N}")
    logs, vals = [], []
    for a, b in segments(1, N + 1, segment_size):
        mask = rough_mask_range(a, b, y)
        n = np.arange(a, b, dtype=np.float64)[mask]
        logs.append(np.log(n))
        if f is not None:
            vals.append(eval_cm_range(f, a, b)[mask])
    logn = np.concatenate(logs) if logs else np.empty(0)
    if f is None:
        return logn, None
    return logn, np.concatenate(vals)


def l_y_derivative(f, y: float, s: complex, k: int = 0, N: int = 10**6) -> SeriesEvaluation:
    """k-th s-derivative of the y-rough series of f, truncated at N.

    Returns the partial sum of f(n) (-log n)^k n^{-s} together with a tail
    bound valid for every completely multiplicative f with |f(p)| <= 1."""
    s = complex(s)
    if s.real <= 1.0:
        raise DivergenceError(f"convergent mode needs Re(s) > 1, got {s.real}")
    if not 0 <= k <= MAX_LOG_POWER:
        raise ArgumentError(f"derivative order {k} outside [0, {MAX_LOG_POWER}]")
    logn, vals = _compressed_rough(f, y, N)
    terms = vals * np.exp(-s * logn)
    if k:
        terms = terms * (-logn) ** k
    value, _ = comp_sum_complex(terms)
    return SeriesEvaluation(
        s=s, y=y, k=k, value=value, truncation_N=N, tail_bound=_tail_majorant(s.real, k, N)
    )


def l_derivative_grid(
    f, y: float, sigma: float, ts, orders, N: int = 10**6
) -> tuple[np.ndarray, list[float]]:
    """Series derivatives on a t-grid sharing one phase matrix.

    Returns (values[len(ts), len(orders)], tail bounds per order).  Blocked so
    the exp(-it log n) matrix never exceeds ~16 MB; block boundaries do not
    affect the result (per-(t, order) accumulation is in fixed segment order).
    """
    if sigma <= 1.0:
        raise DivergenceError(f"convergent mode needs sigma > 1, got {sigma}")
    orders = list(orders)
    if any(k < 0 or k > MAX_LOG_POWER for k in orders):
        raise ArgumentError("derivative order outside supported range")
    ts = np.asarray(ts, dtype=np.float64)
    out = np.zeros((ts.size, len(orders)), dtype=np.complex128)
    for a, b in segments(1, N + 1, _SEG):
        mask = rough_mask_range(a, b, y)
        n = np.arange(a, b, dtype=np.float64)[mask]
        if n.size == 0:
            continue
        logn = np.log(n)
        base = eval_cm_range(f, a, b)[mask] * n**-sigma
        weights = [base * (-logn) ** k if k else base for k in orders]
        for lo in range(0, ts.size, _T_BLOCK):
            tb = ts[lo : lo + _T_BLOCK]
            phase = np.exp(np.multiply.outer(tb, logn) * (-1j))
            for col, w in enumerate(weights):
                out[lo : lo + tb.size, col] += phase @ w
    tails = [_tail_majorant(sigma, k, N) for k in orders]
    return out, tails


def euler_factor_product(f, y: float, s: complex) -> complex:
    """prod_{p <= y} (1 - f(p) p^{-s})."""
    ps = primes_up_to(int(y)) if y >= 2 else np.empty(0)
    if len(ps) == 0:
        return 1.0 + 0.0j
    fer = as_assignment(f).at_many(ps)
    return complex(np.prod(1.0 - fer * np.asarray(ps, dtype=np.float64) ** -complex(s)))


# ---------------------------------------------------------------------------
# rough zeta correction constant


def zeta_y_gamma(y: int, s: complex, x_proxy: int) -> complex:
    """Correction constant of the y-rough zeta partial sum.

    Solved from   sum_{n<=x, P^-(n)>y} n^{-s}
                = ((1 - x^{1-s})/(s-1) + gamma) * prod_{p<=y}(1 - 1/p),
    so the returned value absorbs the truncation error of the finite sum."""
    if y < 2:
        raise ArgumentError("need y >= 2")
    s = complex(s)
    if s.real < 1.0 - 1.0 / (60.0 * math.log(y)):
        raise ArgumentError(f"sigma = {s.real} below the supported window for y = {y}")
    threshold = v_sub_t(abs(s.imag)) ** 100
    if y < threshold:
        warnings.warn(
            f"y = {y} is below the regularity threshold {threshold:.3g}; "
            "the correction constant may be off by O(1)",
            stacklevel=2,
        )
    logn, _ = _compressed_rough(None, y, x_proxy)
    rough, _ = comp_sum_complex(np.exp(-s * logn))
    ps = primes_up_to(int(y)).astype(np.float64)
    euler = float(np.prod(1.0 - 1.0 / ps))
    logx = math.log(x_proxy)
    if abs(s - 1.0) < 1e-12:
        main = complex(logx)
    else:
        main = -np.expm1((1.0 - s) * logx) / (s - 1.0)
    gamma = rough / euler - main
    if s.imag == 0.0 and abs(gamma.imag) > 1e-6:
        raise PretlabError(f"imaginary residue {gamma.imag} on real input")
    return complex(gamma)


# ---------------------------------------------------------------------------
# generalized von Mangoldt tables


@dataclass
class LambdaTable:
    k: int
    limit: int
    values: np.ndarray  # values[n] for 0 <= n <= limit; [0] unused

    def __post_init__(self) -> None:
        if (self.values < 0).any():
            raise PretlabError("negative entry in a von Mangoldt table")


def _prime_power_sites(limit: int):
    """(q, log p) for prime powers q = p^a <= limit."""
    qs, logps = [], []
    for p in primes_up_to(limit):
        lp = math.log(p)
        q = int(p)
        while q <= limit:
            qs.append(q)
            logps.append(lp)
            q *= int(p)
    return qs, logps


def lambda_k_table(k: int, limit: int) -> LambdaTable:
    """Order-k table via the recursion  next = table * log + conv(order-1 base).

    The base case is the classical prime-power weight.  Nonnegativity and the
    support bound (zero beyond k distinct prime factors) are inherited exactly:
    every update adds products of nonnegative entries."""
    if not 1 <= k <= 8:
        raise CapacityError("supported orders are 1..8")
    if limit > 10**6:
        raise CapacityError("dense tables stop at 10^6")
    if limit < 1:
        raise ArgumentError("need limit >= 1")
    qs, logps = _prime_power_sites(limit)
    lam1 = np.zeros(limit + 1)
    lam1[qs] = logps
    table = lam1
    logn = np.zeros(limit + 1)
    if limit >= 2:
        logn[1:] = np.log(np.arange(1, limit + 1, dtype=np.float64))
    for _ in range(k - 1):
        nxt = table * logn
        for q, lp in zip(qs, logps):
            nxt[q::q] += lp * table[1 : limit // q + 1]
        table = nxt
    return LambdaTable(k=k, limit=limit, values=table)


def lambda_k_by_moebius(k: int, limit: int) -> np.ndarray:
    """Independent route: Dirichlet convolution of the Moebius function
    against (log)^k.  Deliberately shares no code with lambda_k_table."""
    if limit > 10**6:
        raise CapacityError("dense tables stop at 10^6")
    mu = np.ones(limit + 1, dtype=np.int64)
    for p in primes_up_to(limit):
        p = int(p)
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p :: p * p] = 0
    logk = np.zeros(limit + 1)
    if limit >= 1:
        logk[1:] = np.log(np.arange(1, limit + 1, dtype=np.float64)) ** k
    out = np.zeros(limit + 1)
    for d in range(1, limit + 1):
        m = mu[d]
        if m:
            out[d::d] += m * logk[1 : limit // d + 1]
    out[0] = 0.0
    return out


# ---------------------------------------------------------------------------
# log-derivative partition identity and the derivative-ratio diagnostic


@lru_cache(maxsize=None)
def _partitions(k: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All multisets {j: a_j} with sum j * a_j = k, as sorted item tuples."""
    out: list[tuple[tuple[int, int], ...]] = []

    def rec(remaining: int, largest: int, acc: dict[int, int]) -> None:
        if remaining == 0:
            out.append(tuple(sorted(acc.items())))
            return
        for j in range(min(largest, remaining), 0, -1):
            acc[j] = acc.get(j, 0) + 1
            rec(remaining - j, j, acc)
            acc[j] -= 1
            if not acc[j]:
                del acc[j]

    rec(k, k, {})
    return tuple(out)


def comb_log_derivative(derivs) -> complex:
    """(k-1)-st derivative of -F'/F from the derivative list [F, F', ..., F^{(k)}].

    Exact integer partition coefficients; only the final combination is float.
    """
    derivs = [complex(v) for v in derivs]
    k = len(derivs) - 1
    if k < 1:
        raise ArgumentError("need at least [F, F']")
    if k > 10:
        raise ArgumentError("orders beyond 10 are not supported")
    f0 = derivs[0]
    if f0 == 0:
        raise DegenerateError("F(s) = 0: log-derivative undefined")
    ratios = {j: -derivs[j] / (math.factorial(j) * f0) for j in range(1, k + 1)}
    total = 0.0 + 0.0j
    for partition in _partitions(k):
        count = sum(a for _, a in partition)
        coeff = Fraction(math.factorial(count - 1))
        term = 1.0 + 0.0j
        for j, a in partition:
            coeff /= math.factorial(a)
            term *= ratios[j] ** a
        total += float(coeff) * term
    return math.factorial(k) * total


def der_ratio_check(derivs) -> tuple[float, float]:
    """Largest normalized derivative ratio M vs its log-derivative analogue N.

    M = max_j |F^{(j)}/(j! F)|^{1/j},  N = max_j |(F'/F)^{(j-1)}/j!|^{1/j};
    the two are always within a factor of two of each other, and that sandwich
    is enforced here (violation means a broken identity, not bad data)."""
    derivs = [complex(v) for v in derivs]
    if not derivs or derivs[0] == 0:
        raise DegenerateError("F(s) = 0: ratios undefined")
    f0 = derivs[0]
    kmax = len(derivs) - 1
    m_val = 0.0
    n_val = 0.0
    for j in range(1, kmax + 1):
        fact = math.factorial(j)
        m_val = max(m_val, abs(derivs[j] / (fact * f0)) ** (1.0 / j))
        n_val = max(n_val, (abs(comb_log_derivative(derivs[: j + 1])) / fact) ** (1.0 / j))
    if not (m_val / 2 - 1e-9 <= n_val <= 2 * m_val + 1e-9):
        raise PretlabError(f"derivative-ratio sandwich failed: M={m_val}, N={n_val}")
    return m_val, n_val


# ---------------------------------------------------------------------------
# prime-power partial sums, the exponentially weighted L2 norm, Plancherel


def _prime_power_profile(f, k: int, x_max: float):
    """Sorted prime powers q <= x_max with weights log(p) f(p)^a (log q)^k."""
    ps, aa, qs = _prime_power_entries(int(x_max))
    if len(qs) == 0:
        return np.empty(0), np.empty(0, dtype=np.complex128)
    fn = as_assignment(f)
    vals = fn.at_many(ps) ** aa * np.log(ps.astype(np.float64))
    if k:
        vals = vals * np.log(qs.astype(np.float64)) ** k
    order = np.argsort(qs, kind="stable")
    return qs[order].astype(np.float64), np.asarray(vals, dtype=np.complex128)[order]


def weighted_prime_sums(f, k: int, u_grid: np.ndarray) -> np.ndarray:
    """S_k(e^u) = sum over prime powers q <= e^u of log(p) f(p)^a (log q)^k."""
    u_grid = np.asarray(u_grid, dtype=np.float64)
    q, vals = _prime_power_profile(f, k, math.exp(float(u_grid.max())))
    cum = np.concatenate(([0.0 + 0.0j], np.cumsum(vals)))
    # evaluate at e^u with a half-ulp nudge so u = log(q) includes q itself
    idx = np.searchsorted(q, np.exp(u_grid) * (1 + 1e-12), side="right")
    return cum[idx]


@dataclass
class IkProfile:
    value: float  # sqrt(quadrature + tail majorant)
    quadrature: float
    tail_majorant: float
    sigma: float
    k: int
    u_max: float
    step: float


def i_k_profile(f, k: int, sigma: float, u_max: float, step: float) -> IkProfile:
    if sigma <= 1.0:
        raise DivergenceError("need sigma > 1")
    if step <= 0 or u_max <= 0:
        raise ArgumentError("need positive step and u_max")
    if math.exp(u_max) > CAP_N:
        raise CapacityError("e^{u_max} exceeds sieve capacity")
    n_steps = int(round(u_max / step))
    grid = np.linspace(0.0, n_steps * step, n_steps + 1)
    s_vals = weighted_prime_sums(f, k, grid)
    integrand = np.abs(s_vals) ** 2 * np.exp(-2.0 * sigma * grid)
    quad = float(np.trapezoid(integrand, dx=step))
    # |S_k(e^u)| <= PSI_ENVELOPE e^u u^k, so the tail integrand is dominated
    # by PSI_ENVELOPE^2 u^{2k} e^{-2(sigma-1)u}
    d = 2.0 * (sigma - 1.0)
    tail = (
        PSI_ENVELOPE**2
        * gammaincc(2 * k + 1, d * u_max)
        * math.factorial(2 * k)
        / d ** (2 * k + 1)
    )
    return IkProfile(
        value=math.sqrt(quad + tail),
        quadrature=quad,
        tail_majorant=float(tail),
        sigma=sigma,
        k=k,
        u_max=float(n_steps * step),
        step=step,
    )


def i_k_norm(f, k: int, sigma: float, u_max: float, step: float) -> float:
    """Exponentially weighted L2 norm of the order-k prime-power partial sums."""
    return i_k_profile(f, k, sigma, u_max, step).value


def _panel_series_derivatives(
    fn, sigma: float, panels, orders, N: int
) -> list[np.ndarray]:
    """Series derivatives at every node of uniform t-panels.

    Within a panel the phase advances by one complex multiply per node
    (exp(-i(t0+mh)log n) = exp(-it0 log n) * exp(-ih log n)^m), so the grid
    costs two exponentials per (panel, segment) instead of one per node.
    Accumulation order is fixed by the segment loop: deterministic output."""
    out = [np.zeros((len(panel), len(orders)), dtype=np.complex128) for panel in panels]
    for a, b in segments(1, N + 1, _SEG):
        n = np.arange(a, b, dtype=np.float64)
        logn = np.log(n)
        base = eval_cm_range(fn, a, b) * n**-sigma
        weights = [base * (-logn) ** k if k else base for k in orders]
        for acc, panel in zip(out, panels):
            row = np.exp(-1j * float(panel[0]) * logn)
            mult = np.exp(-1j * float(panel[1] - panel[0]) * logn)
            for m in range(len(panel)):
                for col, w in enumerate(weights):
                    acc[m, col] += row @ w
                if m + 1 < len(panel):
                    row *= mult
    return out


def _graded_t_grid(t_max: float) -> list[np.ndarray]:
    """Simpson panels covering [0, t_max], dense near 0, dyadic far out."""
    edges = [0.0, min(0.5, t_max)]
    while edges[-1] < t_max:
        edges.append(min(2 * edges[-1], t_max))
    panels = []
    for a, b in zip(edges, edges[1:]):
        n = 64 if a == 0.0 else 32  # Simpson needs an even interval count
        panels.append(np.linspace(a, b, n + 1))
    return panels


def _simpson(values: np.ndarray, h: float) -> float:
    acc = values[0] + values[-1] + 4.0 * values[1:-1:2].sum() + 2.0 * values[2:-1:2].sum()
    return float(acc * h / 3.0)


@dataclass
class PlancherelReport:
    lhs: float
    rhs: float
    k: int
    sigma: float
    u_max: float
    t_max: float
    lhs_quadrature: float
    lhs_tail_model: float
    rhs_deficit_estimate: float
    series_truncation: int
    series_tail_bound: float  # worst formal majorant among the derivative orders

    @property
    def relative_gap(self) -> float:
        return abs(self.lhs - self.rhs) / self.lhs if self.lhs else math.inf


def plancherel_pair(
    f,
    k: int,
    sigma: float,
    u_max: float,
    t_max: float,
    step: float = 0.02,
    n_trunc: int | None = None,
) -> PlancherelReport:
    """Both sides of the frequency identity for order-k prime-power sums.

    lhs: integral over u of |S_k(e^u) e^{-sigma u}|^2, trapezoid on [0, u_max]
    plus a model tail (degree-k polynomial times e^u fitted to the top half of
    the computed range; the dominant-singularity shape).  rhs: integral over t
    of |(L'/L)^{(k)}(sigma+it)|^2 / (sigma^2+t^2) / (2 pi), graded Simpson, with
    the log-derivative taken through the partition identity applied to plain
    series derivatives.  The two code paths share nothing downstream of the
    prime tables, which is the point of the comparison."""
    if sigma <= 1.0:
        raise DivergenceError("need sigma > 1")
    if t_max <= 0:
        raise ArgumentError("need t_max > 0")
    fn = as_assignment(f)

    # time side
    n_steps = int(round(u_max / step))
    grid = np.linspace(0.0, n_steps * step, n_steps + 1)
    s_vals = weighted_prime_sums(fn, k, grid)
    integrand = np.abs(s_vals) ** 2 * np.exp(-2.0 * sigma * grid)
    lhs_quad = float(np.trapezoid(integrand, dx=step))
    # fit on the top third only: lower u still carries secondary terms of
    # relative size ~ e^{-u/2} that would tilt the extrapolation
    top = grid >= grid[-1] * 2.0 / 3.0
    coeffs = np.polynomial.polynomial.polyfit(
        grid[top], s_vals[top] * np.exp(-grid[top]), deg=k
    )
    d = 2.0 * (sigma - 1.0)
    tail = 0.0
    for i, ci in enumerate(coeffs):
        for j, cj in enumerate(coeffs):
            w = (ci * np.conj(cj)).real
            tail += w * gammaincc(i + j + 1, d * u_max) * math.factorial(i + j) / d ** (i + j + 1)
    lhs = lhs_quad + max(tail, 0.0)

    # frequency side
    if n_trunc is None:
        n_trunc = max(4 * 10**6, int(math.exp(u_max)))
    panels = _graded_t_grid(t_max)
    if not fn.is_real:
        panels = panels + [-panel[::-1] for panel in panels]
    orders = list(range(k + 2))
    panel_derivs = _panel_series_derivatives(fn, sigma, panels, orders, n_trunc)
    rhs = 0.0
    edge = 0.0
    for panel, derivs in zip(panels, panel_derivs):
        scale = float(np.abs(derivs[:, 0]).max())
        vals = np.empty(len(panel))
        for m, t in enumerate(panel):
            if abs(derivs[m, 0]) < 1e-12 * scale:
                raise PretlabError(f"series value vanishes on the grid at t = {t}")
            v = comb_log_derivative(derivs[m])
            vals[m] = abs(v) ** 2 / (sigma**2 + t**2)
        rhs += _simpson(vals, panel[1] - panel[0])
        if abs(panel[-1]) >= t_max:  # ~ c/t^2 beyond the cut
            edge += vals[-1] * t_max / (2.0 * math.pi)
        if abs(panel[0]) >= t_max:
            edge += vals[0] * t_max / (2.0 * math.pi)
    if fn.is_real:
        rhs *= 2.0  # even integrand
        edge *= 2.0
    rhs /= 2.0 * math.pi
    tails = [_tail_majorant(sigma, kk, n_trunc) for kk in orders]
    return PlancherelReport(
        lhs=lhs,
        rhs=rhs,
        k=k,
        sigma=sigma,
        u_max=float(n_steps * step),
        t_max=t_max,
        lhs_quadrature=lhs_quad,
        lhs_tail_model=float(max(tail, 0.0)),
        rhs_deficit_estimate=float(edge),
        series_truncation=n_trunc,
        series_tail_bound=max(tails),
    )


# ---------------------------------------------------------------------------
# pretension scale and the real-zero window scanner


def pretentious_scale(f, Q: int, x_proxy: int) -> float:
    """log of the scale up to which f's rough series keeps pretending.

    Estimates the rough series at s = 1 + 1/log(x_proxy) and at the doubled
    offset (proxy sqrt(x)), extrapolates linearly to s = 1, and returns
    log(Q)/|value|.  When the extrapolated value is below 10^-8, or smaller
    than half the drift between the two scales (indistinguishable from a
    vanishing limit at this resolution), the scale is reported as +inf."""
    if Q < 2:
        raise ArgumentError("need Q >= 2")
    if x_proxy < 100:
        raise ArgumentError("need x_proxy >= 100")
    d1 = 1.0 / math.log(x_proxy)
    e1 = l_y_derivative(f, Q, 1.0 + d1, 0, x_proxy).value
    e2 = l_y_derivative(f, Q, 1.0 + 2.0 * d1, 0, max(int(math.isqrt(x_proxy)), 100)).value
    extrapolated = 2.0 * e1 - e2
    drift = abs(e1 - e2)
    if abs(extrapolated) < max(1e-8, 0.5 * drift):
        return math.inf
    return math.log(Q) / abs(extrapolated)


def _window_arrays(f, Q: float, truncation: int):
    fn = as_assignment(f)
    if not fn.is_real:
        raise ArgumentError("window scans need a real-valued function")
    logn, vals = _compressed_rough(fn, Q, truncation)
    vals = vals.real
    q4 = int(np.searchsorted(logn, math.log(max(truncation // 4, 1)), side="right"))
    q2 = int(np.searchsorted(logn, math.log(max(truncation // 2, 1)), side="right"))
    return logn, vals, (q4, q2)


def _window_eval(logn, vals, splits, sigmas):
    # Partial sum plus an Abel-style tail estimate.  The two top octave
    # increments calibrate a geometric tail model (Aitken's delta-squared);
    # sign-changing functions lose a stable factor per octave below sigma = 1
    # and the extrapolation removes most of the truncation error.  When the
    # increments fail to contract (divergent or already-noise-level series)
    # no correction is applied and the last increment is the resolution.
    q4, q2 = splits
    out, scales = [], []
    for sigma in np.atleast_1d(np.asarray(sigmas, dtype=np.float64)):
        terms = vals * np.exp(-sigma * logn)
        head, _ = comp_sum(terms[:q4])
        d_mid, _ = comp_sum(terms[q4:q2])
        d_last, _ = comp_sum(terms[q2:])
        total = head + d_mid + d_last
        if d_mid * d_last > 0.0 and abs(d_mid) >= 1.2 * abs(d_last):
            corr = d_last / (d_mid / d_last - 1.0)
            out.append(total + corr)
            # the increment ratio drifts a few percent per octave; keep a
            # fifth of the applied correction as the honest resolution
            scales.append(0.2 * abs(corr))
        else:
            out.append(total)
            scales.append(abs(d_last))
    return np.array(out), np.array(scales)


def l_window_values(f, Q: float, sigmas, truncation: int = 10**6):
    """Rough partial sums at real sigma, window mode (sigma <= 1 allowed).

    Returns (values, scales).  Each value is the truncated sum with an Abel
    tail correction extrapolated from the top two octave increments; the
    paired scale is the estimated resolution of that correction (a formal
    majorant does not exist below sigma = 1).  Series whose increments do
    not contract geometrically are returned uncorrected with the last
    octave increment as the scale."""
    return _window_eval(*_window_arrays(f, Q, truncation), sigmas)


def l_line_value(f, y: float, t0: float = 0.0, truncation: int = 10**6):
    """L_y(1 + i t0, f) in window mode, complex-capable.

    Same octave extrapolation as l_window_values but on the line itself:
    the increment ratio may rotate, so the geometric model runs in the
    complex plane and the correction applies only when the increments
    both contract and stay within a quarter turn of each other.  Returns
    (value, scale) with scale the estimated resolution."""
    fn = as_assignment(f)
    logn, vals = _compressed_rough(fn, y, truncation)
    q4 = int(np.searchsorted(logn, math.log(max(truncation // 4, 1)), side="right"))
    q2 = int(np.searchsorted(logn, math.log(max(truncation // 2, 1)), side="right"))
    terms = vals * np.exp(-(1.0 + 1j * t0) * logn)
    head = comp_sum_complex(terms[:q4])[0]
    d_mid = comp_sum_complex(terms[q4:q2])[0]
    d_last = comp_sum_complex(terms[q2:])[0]
    total = head + d_mid + d_last
    aligned = (d_mid * np.conj(d_last)).real > 0.0
    if aligned and abs(d_mid) >= 1.2 * abs(d_last):
        corr = d_last / (d_mid / d_last - 1.0)
        return total + corr, 0.2 * abs(corr)
    return total, abs(d_last)


@dataclass
class SiegelProfile:
    Q: int
    beta: float
    beta_is_zero: bool
    samples: list[tuple[float, float]]
    c_window: float
    ratio_low: float
    ratio_high: float
    truncation: int

    def summary(self) -> dict:
        return {
            "Q": self.Q,
            "beta": self.beta,
            "beta_is_zero": self.beta_is_zero,
            "c_window": self.c_window,
            "ratio_low": self.ratio_low,
            "ratio_high": self.ratio_high,
            "truncation": self.truncation,
            "samples": [[s, v] for s, v in self.samples],
        }


def siegel_locate(
    f, Q: int, c_window: float = 0.5, samples: int = 64, truncation: int = 10**6
) -> SiegelProfile:
    """Scan the window [1 - 2c/log Q, 1 + c/log Q] for a real zero.

    Sign changes are counted between consecutive samples that clear three
    times their own truncation resolution, so an unresolved strip around a
    genuine zero still yields exactly one bracket.  Two or more changes
    abort the scan (the window is supposed to hold at most one zero, so
    multiples flag numerical trouble or a function outside the intended
    class).  Without a change, beta sits at the left boundary by
    convention.  The ratio band reports L(sigma)/((sigma - beta) log Q)
    extremes over the window."""
    fn = as_assignment(f)
    if not fn.is_real:
        raise ArgumentError("the window scan needs a real-valued function")
    if samples < 16:
        raise ArgumentError("need samples >= 16 for a usable window profile")
    if Q < 3:
        raise ArgumentError("need Q >= 3")
    if c_window <= 0:
        raise ArgumentError("need c_window > 0")
    logq = math.log(Q)
    lo, hi = 1.0 - 2.0 * c_window / logq, 1.0 + c_window / logq
    grid = np.linspace(lo, hi, samples)
    arrays = _window_arrays(fn, Q, truncation)  # sieve once; bisection reuses it
    vals, tails = _window_eval(*arrays, grid)

    resolved = [i for i in range(samples) if abs(vals[i]) > 3.0 * tails[i]]
    flips = [
        (i, j) for i, j in zip(resolved, resolved[1:]) if vals[i] * vals[j] < 0
    ]
    if len(flips) > 1:
        raise SignChangeError(
            f"{len(flips)} sign changes in the window; expected at most one"
        )
    if flips:
        a, b = float(grid[flips[0][0]]), float(grid[flips[0][1]])
        va = float(vals[flips[0][0]])
        for _ in range(40):  # bisection to ~1e-13 of the window width
            mid = 0.5 * (a + b)
            vm = float(_window_eval(*arrays, [mid])[0][0])
            if vm == 0.0:
                a = b = mid
                break
            if (vm > 0) == (va > 0):
                a, va = mid, vm
            else:
                b = mid
        beta, beta_is_zero = 0.5 * (a + b), True
    else:
        beta, beta_is_zero = lo, False

    width = (hi - lo) / (samples - 1)
    ratios = [
        float(vals[i]) / ((float(grid[i]) - beta) * logq)
        for i in resolved
        if abs(float(grid[i]) - beta) > 1.5 * width
    ]
    return SiegelProfile(
        Q=int(Q),
        beta=float(beta),
        beta_is_zero=beta_is_zero,
        samples=[(float(s), float(v)) for s, v in zip(grid, vals)],
        c_window=c_window,
        ratio_low=min(ratios) if ratios else math.nan,
        ratio_high=max(ratios) if ratios else math.nan,
        truncation=truncation,
    )


def eta_estimate(f, Q: int, p_max: int = 10**6) -> float:
    """Truncated prod_{Q < p <= p_max} (1 - f(p)/p)^{-1} for real-valued f."""
    fn = as_assignment(f)
    if not fn.is_real:
        raise ArgumentError("eta is defined for real-valued functions")
    ps = primes_up_to(p_max)
    ps = ps[ps > Q].astype(np.float64)
    vals = np.real(fn.at_many(ps.astype(np.int64)))
    return float(np.exp(-np.log1p(-vals / ps).sum()))


# ---------------------------------------------------------------------------
# mean squares of Dirichlet polynomials (majorization spot checks)


def dirichlet_mean_square(
    ns, coeffs, sigma: float, T: float, step: float = 0.02
) -> float:
    """integral over [-T, T] of |sum_n c_n n^{-sigma-it}|^2 dt, Simpson grid.

    Real coefficient lists fold the grid in half (even integrand)."""
    ns = np.asarray(ns, dtype=np.float64)
    coeffs = np.asarray(coeffs)
    if ns.size == 0:
        return 0.0
    if (ns < 1).any():
        raise ArgumentError("polynomial indices must be >= 1")
    amp = coeffs * ns**-sigma
    logn = np.log(ns)
    real_coeffs = np.isrealobj(coeffs) or np.allclose(coeffs.imag, 0.0)
    n_steps = int(math.ceil(T / step))
    if n_steps % 2:
        n_steps += 1
    h = T / n_steps
    t_grid = np.linspace(0.0, T, n_steps + 1)
    vals = np.empty(t_grid.size)
    for lo in range(0, t_grid.size, 256):
        tb = t_grid[lo : lo + 256]
        phase = np.exp(np.multiply.outer(tb, logn) * (-1j))
        vals[lo : lo + tb.size] = np.abs(phase @ amp) ** 2
    half = _simpson(vals, h)
    if real_coeffs:
        return 2.0 * half
    vals_neg = np.empty(t_grid.size)
    for lo in range(0, t_grid.size, 256):
        tb = t_grid[lo : lo + 256]
        phase = np.exp(np.multiply.outer(tb, logn) * (+1j))
        vals_neg[lo : lo + tb.size] = np.abs(phase @ amp) ** 2
    return half + _simpson(vals_neg, h)


# ---------------------------------------------------------------------------
# size-vs-prime-sum envelope rows


@dataclass
class EnvelopeRow:
    x: int
    t: float
    log_abs_series: float
    prime_sum: float

    @property
    def deviation(self) -> float:
        return abs(self.log_abs_series - self.prime_sum)


def log_series_envelope(f, y: float, xs, ts) -> list[EnvelopeRow]:
    """log|L_y(1 + 1/log x + it, f)| against sum_{y<p<=x} Re(f(p)p^{-it})/p.

    One row per (x, t) pair; the caller judges the deviation band."""
    from .sums import prime_reciprocal_sum

    fn = as_assignment(f)
    rows = []
    for x in xs:
        x = int(x)
        sigma = 1.0 + 1.0 / math.log(x)
        values, _ = l_derivative_grid(fn, y, sigma, np.asarray(ts, float), [0], x)
        for t, val in zip(ts, values[:, 0]):
            mag = abs(complex(val))
            if mag == 0.0:
                raise DegenerateError(f"series vanished at x={x}, t={t}")
            psum = prime_reciprocal_sum(fn, y, x, float(t)).value.real
            rows.append(
                EnvelopeRow(
                    x=x, t=float(t), log_abs_series=math.log(mag), prime_sum=psum
                )
            )
    return rows
