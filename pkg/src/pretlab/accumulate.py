"""Compensated accumulation helpers.

Every streaming sum in the package funnels through these.  Within a numpy
block we rely on pairwise summation (already accurate to ~eps*log n); across
blocks and across segments we carry a Neumaier two-float correction so that
the final result is independent of how the stream was cut, to well below
1e-12 relative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_BLOCK = 1 << 16


class Neumaier:
    """Two-float (sum, correction) accumulator for real values."""

    __slots__ = ("s", "c")

    def __init__(self) -> None:
        self.s = 0.0
        self.c = 0.0

    def add(self, x: float) -> None:
        t = self.s + x
        if abs(self.s) >= abs(x):
            self.c += (self.s - t) + x
        else:
            self.c += (x - t) + self.s
        self.s = t

    @property
    def value(self) -> float:
        return self.s + self.c

    @property
    def compensation(self) -> float:
        return abs(self.c)


def comp_sum(arr: np.ndarray) -> tuple[float, float]:
    """Sum a real array; returns (value, |correction|).

    Blocks of 2^16 go through numpy's pairwise sum, the block results are
    folded with Neumaier.  Cost is within a few percent of a bare np.sum.
    """
    a = np.asarray(arr, dtype=np.float64)
    acc = Neumaier()
    if a.size <= _BLOCK:
        acc.add(float(np.sum(a)))
    else:
        for i in range(0, a.size, _BLOCK):
            acc.add(float(np.sum(a[i : i + _BLOCK])))
    return acc.value, acc.compensation


def comp_sum_complex(arr: np.ndarray) -> tuple[complex, float]:
    """Sum a complex array, compensating real and imaginary parts separately."""
    a = np.asarray(arr)
    if not np.iscomplexobj(a):
        v, c = comp_sum(a)
        return complex(v, 0.0), c
    re, cr = comp_sum(np.ascontiguousarray(a.real))
    im, ci = comp_sum(np.ascontiguousarray(a.imag))
    return complex(re, im), max(cr, ci)


@dataclass
class ComplexAccumulator:
    """Segment merger for complex streams; deterministic in merge order."""

    re: Neumaier
    im: Neumaier

    def __init__(self) -> None:
        self.re = Neumaier()
        self.im = Neumaier()

    def add(self, z: complex) -> None:
        self.re.add(z.real)
        self.im.add(z.imag)

    @property
    def value(self) -> complex:
        return complex(self.re.value, self.im.value)

    @property
    def compensation(self) -> float:
        return max(self.re.compensation, self.im.compensation)
