"""Combinatorial sieve weight pairs (beta sieve, beta = 2).

The weights are Moebius values restricted by the classical parity-dependent
truncation: a squarefree d = p_1 ... p_r with y >= p_1 > ... > p_r enters the
upper-bound support when

    p_1 ... p_{m-1} p_m^3 <= D   for every odd m <= r,

and the lower-bound support with the same condition at even m.  With
D = y^u, u >= 2, the pair sandwiches the y-rough indicator and reproduces
prime-density main terms to a relative error that decays like e^{-u}.
Support maps are sparse dicts {d: mu(d)}; the DFS also keeps each d's prime
chain so that multiplicative values g(d) never need refactoring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .catalog import as_assignment
from .errors import ArgumentError
from .sieve import primes_up_to

MAIN_TERM_ENVELOPE = 10.0  # |ratio - 1| <= ENVELOPE * e^{-u} is the monitored band


@dataclass
class SieveWeights:
    y: float
    u: float
    D: float
    lambda_plus: dict[int, int] = field(repr=False)
    lambda_minus: dict[int, int] = field(repr=False)
    chains: dict[int, tuple[int, ...]] = field(repr=False)

    def __post_init__(self) -> None:
        if self.lambda_plus.get(1) != 1 or self.lambda_minus.get(1) != 1:
            raise ArgumentError("sieve weights must carry lambda(1) = 1")


def build_beta_sieve(y: float, u: float) -> SieveWeights:
    """Construct the weight pair supported on y-smooth squarefree d <= y^u."""
    if y < 2:
        raise ArgumentError("need y >= 2")
    if u < 2:
        raise ArgumentError("need u >= 2")
    D = float(y) ** float(u)
    ps = [int(p) for p in primes_up_to(int(y))]
    ps.reverse()  # descending; chains prepend strictly smaller primes
    lam_plus: dict[int, int] = {1: 1}
    lam_minus: dict[int, int] = {1: 1}
    chains: dict[int, tuple[int, ...]] = {1: ()}

    # Depth-first over descending prime chains.  ok_plus / ok_minus track
    # whether every parity condition seen so far holds; both False prunes.
    stack = [(1, 0, 0, True, True, ())]  # d, next prime index, r, ok+, ok-, chain
    while stack:
        d, i, r, okp, okm, chain = stack.pop()
        for j in range(i, len(ps)):
            p = ps[j]
            d2 = d * p
            if d2 > D:
                continue  # later primes are smaller; they may still fit
            m = r + 1
            cond = d * (p**3) <= D  # prefix p_1..p_{m-1} times p_m^3
            okp2 = okp and (cond or m % 2 == 0)
            okm2 = okm and (cond or m % 2 == 1)
            if not (okp2 or okm2):
                continue
            chain2 = chain + (p,)
            sign = -1 if m % 2 else 1
            if okp2:
                lam_plus[d2] = sign
            if okm2:
                lam_minus[d2] = sign
            chains.setdefault(d2, chain2)
            stack.append((d2, j + 1, m, okp2, okm2, chain2))
    return SieveWeights(y=float(y), u=float(u), D=D, lambda_plus=lam_plus,
                        lambda_minus=lam_minus, chains=chains)


@dataclass
class MainTermRatio:
    ratio_plus: float
    ratio_minus: float
    main_term: float
    envelope: float  # MAIN_TERM_ENVELOPE * e^{-u}, the monitored band

    @property
    def within_envelope(self) -> bool:
        return (
            abs(self.ratio_plus - 1.0) <= self.envelope
            and abs(self.ratio_minus - 1.0) <= self.envelope
        )


def main_term_ratio(w: SieveWeights, g) -> MainTermRatio:
    """sum_d lambda(d) g(d)/d against prod_{p <= y} (1 - g(p)/p), both signs.

    g must take values in [0, 1] at primes (density-like); the main term must
    not vanish."""
    gn = as_assignment(g)
    ps = primes_up_to(int(w.y))
    gp = np.real(gn.at_many(ps))
    if (gp < -1e-12).any() or (gp > 1 + 1e-12).any():
        raise ArgumentError("main_term_ratio needs g(p) in [0, 1]")
    main = float(np.prod(1.0 - gp / ps.astype(np.float64)))
    if abs(main) < 1e-300:
        raise ArgumentError("main term vanishes; some g(p)/p = 1")

    gval: dict[int, float] = {int(p): float(v) for p, v in zip(ps, gp)}
    sums = {}
    for name, lam in (("plus", w.lambda_plus), ("minus", w.lambda_minus)):
        total = 0.0
        for d, wt in lam.items():
            gd = 1.0
            for p in w.chains[d]:
                gd *= gval[p]
                if gd == 0.0:
                    break
            if gd:
                total += wt * gd / d
        sums[name] = total
    env = MAIN_TERM_ENVELOPE * math.exp(-w.u)
    return MainTermRatio(sums["plus"] / main, sums["minus"] / main, main, env)


@dataclass
class SandwichReport:
    checked: int
    rough_count: int
    violations: int
    first_violation: int | None = None

    @property
    def clean(self) -> bool:
        return self.violations == 0


def sandwich_scan(w: SieveWeights, x: int) -> SandwichReport:
    """Exhaustively verify, for every n <= x:

        (lambda- * 1)(n) <= [P^-(n) > y] <= (lambda+ * 1)(n),

    with equality (= 1) on the rough side.  Convolutions are exact integer
    arrays, so no tolerance is involved."""
    if x < 1:
        raise ArgumentError("need x >= 1")
    conv_p = np.zeros(x + 1, dtype=np.int32)
    conv_m = np.zeros(x + 1, dtype=np.int32)
    for d, wt in w.lambda_plus.items():
        if d <= x:
            conv_p[d::d] += wt
    for d, wt in w.lambda_minus.items():
        if d <= x:
            conv_m[d::d] += wt
    rough = np.ones(x + 1, dtype=bool)
    rough[0] = False
    for p in primes_up_to(min(int(w.y), x)):
        rough[p::p] = False
    if x >= 1:
        rough[1] = True

    bad = np.zeros(x + 1, dtype=bool)
    bad[rough] = (conv_p[rough] != 1) | (conv_m[rough] != 1)
    sieved = ~rough
    sieved[0] = False
    bad[sieved] = (conv_m[sieved] > 0) | (conv_p[sieved] < 0)
    violations = int(bad.sum())
    first = int(np.nonzero(bad)[0][0]) if violations else None
    return SandwichReport(
        checked=x,
        rough_count=int(rough.sum()),
        violations=violations,
        first_violation=first,
    )
