import math

import pytest

import oracles
from pretlab.catalog import kronecker, power_omega
from pretlab.errors import ArgumentError
from pretlab.sieve_weights import (
    MAIN_TERM_ENVELOPE,
    SieveWeights,
    build_beta_sieve,
    main_term_ratio,
    sandwich_scan,
)


def test_weights_structure():
    w = build_beta_sieve(10.0, 2.0)
    assert w.D == 100.0
    assert w.lambda_plus[1] == 1 and w.lambda_minus[1] == 1
    for lam in (w.lambda_plus, w.lambda_minus):
        for d, wt in lam.items():
            fac = oracles.trial_factor(d)
            assert all(e == 1 for _, e in fac), "support must be squarefree"
            assert all(p <= 10 for p, _ in fac), "support must be y-smooth"
            assert d <= w.D
            assert wt == oracles.moebius(d)
    # chains store the descending prime factorization
    for d, chain in w.chains.items():
        assert math.prod(chain) == d if d > 1 else chain == ()


def test_lower_support_contained_in_moebius_upper_at_even_parity():
    # parity split: odd-length chains enter lambda+ only under the cube cut
    w = build_beta_sieve(30.0, 2.0)
    assert set(w.lambda_plus) != set(w.lambda_minus)


def test_build_validation():
    with pytest.raises(ArgumentError):
        build_beta_sieve(1.0, 2.0)
    with pytest.raises(ArgumentError):
        build_beta_sieve(10.0, 1.5)
    with pytest.raises(ArgumentError):
        SieveWeights(y=2.0, u=2.0, D=4.0, lambda_plus={2: -1}, lambda_minus={1: 1},
                     chains={})


def test_sandwich_pointwise_against_naive():
    # independent reimplementation of the scan on a small range
    w = build_beta_sieve(7.0, 2.0)
    for n in range(1, 2000):
        s_plus = sum(wt for d, wt in w.lambda_plus.items() if n % d == 0)
        s_minus = sum(wt for d, wt in w.lambda_minus.items() if n % d == 0)
        rough = n == 1 or oracles.trial_factor(n)[0][0] > 7
        if rough:
            assert s_plus == 1 and s_minus == 1, n
        else:
            assert s_minus <= 0 <= s_plus, n


def test_sandwich_scan_clean_configurations():
    for y, u, x in ((10.0, 2.0, 10**5), (30.0, 3.0, 10**5)):
        rep = sandwich_scan(build_beta_sieve(y, u), x)
        assert rep.clean, (y, u)
        assert rep.checked == x
        assert rep.first_violation is None
        # rough count sanity: 1 plus primes in (y, x] plus composites
        assert 0 < rep.rough_count < x


def test_sandwich_scan_validation():
    with pytest.raises(ArgumentError):
        sandwich_scan(build_beta_sieve(10.0, 2.0), 0)


def test_main_term_ratio_unit_density():
    w = build_beta_sieve(30.0, 3.0)
    rep = main_term_ratio(w, power_omega(1.0))
    # main term for g = 1 is the Mertens product over p <= 30
    hand = math.prod(1 - 1 / p for p in oracles.primes_list(30))
    assert rep.main_term == pytest.approx(hand, rel=1e-12)
    assert rep.envelope == pytest.approx(MAIN_TERM_ENVELOPE * math.exp(-3.0))
    assert rep.within_envelope
    assert rep.ratio_minus <= 1.0 + 1e-12 <= rep.ratio_plus + 2e-12


def test_main_term_ratio_character_density():
    # g(p) = (1 + (5|p))/2 takes values in {0, 1/2, 1}
    import numpy as np

    from pretlab.catalog import PrimeAssignment

    base = kronecker(5)
    g = PrimeAssignment(
        "half_shift",
        lambda p: 0.5 * (1.0 + base.at(p).real),
        lambda ps: 0.5 * (1.0 + np.real(base.at_many(ps))),
        is_real=True,
    )
    rep = main_term_ratio(build_beta_sieve(20.0, 4.0), g)
    assert rep.within_envelope


def test_main_term_ratio_rejects_non_density():
    w = build_beta_sieve(10.0, 2.0)
    with pytest.raises(ArgumentError):
        main_term_ratio(w, kronecker(5))  # takes value -1 at some primes
