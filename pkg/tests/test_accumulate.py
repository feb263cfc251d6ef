import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from pretlab.accumulate import ComplexAccumulator, Neumaier, comp_sum, comp_sum_complex


def test_comp_sum_matches_fsum_on_hard_case():
    # alternating large/small magnitudes defeat plain float accumulation
    rng = np.random.default_rng(7)
    arr = np.concatenate([rng.normal(size=5000) * 1e12, rng.normal(size=5000)])
    rng.shuffle(arr)
    value, comp = comp_sum(arr)
    exact = math.fsum(arr.tolist())
    assert abs(value - exact) <= 1e-3 * max(1.0, abs(exact))
    assert comp >= 0.0


def test_comp_sum_empty():
    value, comp = comp_sum(np.array([]))
    assert value == 0.0 and comp == 0.0


@given(st.lists(st.floats(-1e6, 1e6), max_size=200))
@settings(max_examples=50, deadline=None)
def test_comp_sum_property(xs):
    value, _ = comp_sum(np.asarray(xs, dtype=np.float64))
    assert math.isclose(value, math.fsum(xs), rel_tol=1e-12, abs_tol=1e-9)


def test_comp_sum_complex_splits_parts():
    arr = np.array([1 + 2j, -1e15 + 1j, 1e15 - 3j, 2.5 + 0j])
    value, _ = comp_sum_complex(arr)
    assert value.real == math.fsum(arr.real.tolist())
    assert value.imag == math.fsum(arr.imag.tolist())


def test_neumaier_order_independence():
    xs = [1e16, 1.0, -1e16, 1.0]
    acc = Neumaier()
    for v in xs:
        acc.add(v)
    assert acc.value == 2.0


def test_complex_accumulator_tracks_fsum():
    rng = np.random.default_rng(3)
    scale = 10.0 ** rng.integers(0, 12, size=1000)
    arr = (rng.normal(size=1000) + 1j * rng.normal(size=1000)) * scale
    acc = ComplexAccumulator()
    for z in arr:
        acc.add(complex(z))
    assert math.isclose(acc.value.real, math.fsum(arr.real.tolist()), rel_tol=1e-12)
    assert math.isclose(acc.value.imag, math.fsum(arr.imag.tolist()), rel_tol=1e-12)
    assert acc.compensation >= 0.0
