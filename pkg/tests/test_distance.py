import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from pretlab.catalog import (
    archimedean_twist,
    kronecker,
    liouville,
    power_omega,
    twist,
)
from pretlab.distance import (
    HALASZ_IMPROVEMENT_A,
    big_N,
    bound_exponent_B,
    bound_exponent_Bprime,
    distance_sq,
    exponent_profile,
    halasz_M,
    q_sub_t,
    v_sub_t,
)
from pretlab.errors import ArgumentError, InfeasibleError


def test_distance_hand_value():
    # y=2, x=10: primes 3, 5, 7; f=liouville vs g=1 gives 2/p per prime
    res = distance_sq(liouville(), power_omega(1.0), 2.0, 10.0)
    assert res.value == pytest.approx(2.0 * (1 / 3 + 1 / 5 + 1 / 7), rel=1e-12)
    assert res.primes_used == 3


def test_distance_vs_naive_complex():
    f, g = archimedean_twist(0.8), kronecker(5)
    got = distance_sq(f, g, 5.0, 3000.0).value
    naive = oracles.naive_distance_sq(
        lambda p: complex(math.cos(0.8 * math.log(p)), math.sin(0.8 * math.log(p))),
        lambda p: complex(_legendre5(p)),
        5.0,
        3000.0,
    )
    assert got == pytest.approx(naive, rel=1e-10)


def _legendre5(p):
    if p == 5:
        return 0.0
    return 1.0 if pow(p % 5, 2, 5) == 1 else -1.0


def test_distance_self_unimodular_is_zero():
    f = archimedean_twist(1.1)
    assert distance_sq(f, f, 2.0, 10**4).value == pytest.approx(0.0, abs=1e-12)


def test_distance_self_with_zero_value_counts_full_mass():
    # f(5) = 0 contributes (1 - 0)/5 even against itself; every other term
    # vanishes since (d|p)^2 = 1 off the conductor
    res = distance_sq(kronecker(5), kronecker(5), 2.0, 10**4)
    assert res.value == pytest.approx(0.2, rel=1e-12)


def test_distance_empty_range():
    res = distance_sq(liouville(), liouville(), 100.0, 100.0)
    assert res.value == 0.0 and res.primes_used == 0


@given(
    st.sampled_from([0, 1, 2, 3, 4]),
    st.sampled_from([0, 1, 2, 3, 4]),
    st.sampled_from([0, 1, 2, 3, 4]),
    st.integers(min_value=0, max_value=3),
)
@settings(max_examples=30, deadline=None)
def test_triangle_inequality_property(i, j, k, range_idx):
    pool = [
        liouville(),
        kronecker(5),
        archimedean_twist(0.7),
        power_omega(complex(0.5, 0.5)),
        twist(kronecker(8), 0.3),
    ]
    ranges = [(2.0, 500.0), (10.0, 5000.0), (3.0, 20000.0), (50.0, 3000.0)]
    f, g, h = pool[i], pool[j], pool[k]
    y, x = ranges[range_idx]
    d_fg = math.sqrt(max(distance_sq(f, g, y, x).value, 0.0))
    d_gh = math.sqrt(max(distance_sq(g, h, y, x).value, 0.0))
    d_fh = math.sqrt(max(distance_sq(f, h, y, x).value, 0.0))
    assert d_fh <= d_fg + d_gh + 1e-9


def test_halasz_functional_at_own_twist_is_small():
    # f(p) = p^{0.6 i} pretends to n^{0.6 i}: minimum near t = 0.6, value ~ 0
    res = halasz_M(archimedean_twist(0.6), 10**5, 2.0)
    assert abs(res.t_star - 0.6) < 0.01
    assert res.value < 1e-4
    assert res.refined


def test_halasz_functional_liouville_grows():
    res = halasz_M(liouville(), 10**6, 10.0)
    # distance to every n^{it} stays bounded below: 2 sum 1/p over a decade
    assert res.value > 1.0
    assert -10.0 <= res.t_star <= 10.0


def test_halasz_bounds_validation():
    with pytest.raises(ArgumentError):
        halasz_M(liouville(), 10, -1.0)
    with pytest.raises(ArgumentError):
        halasz_M(liouville(), 1, 1.0)


def test_q_sub_t_hand_value():
    # exp(2 log Q (1+|t|)^{1/(A-2)}) at Q=50, A=4, t=1: exponent 2 log50 sqrt2
    expected = math.exp(2.0 * math.log(50.0) * math.sqrt(2.0))
    assert q_sub_t(50.0, 4.0, 1.0) == pytest.approx(expected, rel=1e-12)
    assert q_sub_t(50.0, 4.0, 0.0) == pytest.approx(2500.0, rel=1e-12)
    assert q_sub_t(50.0, 4.0, -1.0) == q_sub_t(50.0, 4.0, 1.0)


def test_big_N_domain_and_value():
    with pytest.raises(InfeasibleError):
        big_N(liouville(), 1000, 10.0, 50.0, 4.0)  # Q^2 = 2500 > x
    res = big_N(liouville(), 10**5, 10.0, 10.0, 4.0)
    assert res.value >= 0.0
    # N minimizes a distance offset by the Q_t barrier; witness grid recorded
    assert res.T == 10.0 and res.witnesses


def test_bound_exponents_hand_values():
    assert bound_exponent_B(4.0) == pytest.approx(2.0 / 3.0)
    assert bound_exponent_B(2.5) == pytest.approx(0.5 / 3.0)
    assert bound_exponent_B(3.5) == pytest.approx(3.0 * 1.5 / 5.0)
    assert bound_exponent_Bprime(4.0) == pytest.approx(10.0 / 7.0)
    with pytest.raises(ArgumentError):
        bound_exponent_B(2.0)
    with pytest.raises(ArgumentError):
        bound_exponent_Bprime(1.5)


def test_exponent_profile_rows():
    rows = exponent_profile([2.5, 3.0, 4.0, 6.0, HALASZ_IMPROVEMENT_A + 0.01])
    for row in rows:
        assert row["Bprime"] >= row["B"] - 1e-12
    assert rows[-1]["A_gt_crossover"]
    assert not rows[0]["A_gt_crossover"]


def test_improvement_constant_value():
    assert HALASZ_IMPROVEMENT_A == pytest.approx((31 + math.sqrt(681)) / 10)
    assert 5.7 < HALASZ_IMPROVEMENT_A < 5.8


def test_v_sub_t_monotone():
    assert v_sub_t(0.0) <= v_sub_t(1.0) <= v_sub_t(100.0)
