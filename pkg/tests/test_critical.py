import math

import numpy as np
import pytest

from oregonator import (Domain, ModeCapTooSmall, NondimParams, abc_numbers,
                        cubic_coeffs, delta0, delta0_from_abc, delta1,
                        laplace_modes, mode_crossing_delta, scenario,
                        sigma_root)
from oregonator.critical import HOPF, NONE, STEADY, printed_bracket
from oregonator.spectrum import MARGINAL, STABLE, UNSTABLE, hurwitz


def mk(mu=(1.0, 1.0, 1.0), alpha=2.0, beta=0.02, gamma=1.0, delta=0.8):
    return NondimParams(mu1=mu[0], mu2=mu[1], mu3=mu[2], alpha=alpha,
                        beta=beta, gamma=gamma, delta=delta)


def test_abc_reference_values(p_ref):
    a, b, c = abc_numbers(p_ref, 700.0)
    assert a == pytest.approx(9.74, abs=0.02)
    assert b == pytest.approx(690.79, abs=0.05)
    assert c == pytest.approx(8.21, abs=0.02)


def test_abc_hand_values():
    # alpha=2, beta=1, gamma=1, sigma=1: a = 3 alpha/2 + 2/alpha = 4,
    # b = 0 - 2 - 1 = -3, c = 1 * (2 + 1 + 1 - 1) = 3
    a, b, c = abc_numbers(mk(beta=1.0), 1.0)
    assert (a, b, c) == pytest.approx((4.0, -3.0, 3.0), rel=1e-14)


def test_abc_identities_random():
    rng = np.random.default_rng(23)
    for _ in range(60):
        p = mk(alpha=10 ** rng.uniform(0, 2), beta=10 ** rng.uniform(-6, 0.5),
               gamma=rng.uniform(0.3, 3.0), delta=10 ** rng.uniform(-1, 1))
        s = sigma_root(p)
        a, b, c = abc_numbers(p, s)
        # b + c = gamma (sigma - 1); C = delta c from the cubic
        assert b + c == pytest.approx(p.gamma * (s - 1.0), rel=1e-10, abs=1e-12)
        cc = cubic_coeffs(p, s, 0.0)
        assert cc.C == pytest.approx(p.delta * c, rel=1e-12)
        if 3 * p.beta * s + p.gamma - 1 > 0 and 2 * p.beta * s + p.beta + p.gamma > 1:
            assert c > 0


def test_delta0_published_inputs():
    assert delta0_from_abc(9.74, 690.79, 8.21) == pytest.approx(71.67, abs=0.05)


def test_delta0_defining_identity(p_ref):
    for sigma in (700.0, sigma_root(p_ref)):
        a, b, c = abc_numbers(p_ref, sigma)
        d0 = delta0_from_abc(a, b, c)
        A, B, C = a + d0, a * d0 - b, d0 * c
        assert A * B - C == pytest.approx(0.0, abs=1e-9 * abs(A * B))


def test_delta0_bisection_oracle(p_ref):
    a, b, c = abc_numbers(p_ref, 700.0)
    lo, hi = 1e-8, 1e4
    f = lambda d: (a + d) * (a * d - b) - c * d
    assert f(lo) < 0 < f(hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    assert delta0_from_abc(a, b, c) == pytest.approx(0.5 * (lo + hi), rel=1e-10)


def test_delta0_absent_when_b_nonpositive():
    assert delta0_from_abc(4.0, -3.0, 3.0) is None
    assert delta0(mk(beta=1.0), 1.0) is None


def test_delta0_small_b_limit():
    a, c = 5.0, 3.0  # c < a^2
    prev = None
    for b in (1e-2, 1e-4, 1e-6, 1e-8):
        d0 = delta0_from_abc(a, b, c)
        assert d0 > 0
        if prev is not None:
            assert d0 < prev
        prev = d0
    assert prev < 1e-8 * a  # -> 0+


def test_hurwitz_sign_chain_at_delta0(p_ref):
    s = sigma_root(p_ref)
    d0 = delta0(p_ref, s)
    assert hurwitz(cubic_coeffs(p_ref, s, 0.0, delta=d0)) == MARGINAL
    assert hurwitz(cubic_coeffs(p_ref, s, 0.0, delta=d0 * (1 + 1e-3))) == STABLE
    assert hurwitz(cubic_coeffs(p_ref, s, 0.0, delta=d0 * (1 - 1e-3))) == UNSTABLE


def test_mode_crossing_zeroes_ck(p_steady):
    s = sigma_root(p_steady)
    for rho in (1.0, 4.0, 9.0):
        dk = mode_crossing_delta(p_steady, s, rho)
        ck = cubic_coeffs(p_steady, s, rho, delta=dk).C
        scale = abs(cubic_coeffs(p_steady, s, rho, delta=2 * dk).C) + 1.0
        assert abs(ck) < 1e-10 * scale


def test_printed_bracket_matches_self_consistent_solve(p_steady):
    # freezing C at the crossing value makes the published bracket agree
    # with the exact linear-in-delta solution
    s = sigma_root(p_steady)
    _, _, c = abc_numbers(p_steady, s)
    for rho in (1.0, 4.0):
        dk = mode_crossing_delta(p_steady, s, rho)
        assert printed_bracket(p_steady, s, rho, dk * c) == pytest.approx(dk, rel=1e-12)


def test_delta1_detail(p_steady, dom_pi):
    s = sigma_root(p_steady)
    modes = laplace_modes(dom_pi)
    res = delta1(p_steady, s, modes)
    assert res.k0 == 3
    assert res.rho_k0 == pytest.approx(4.0)
    # C_k0 vanishes at delta1; every other enumerated mode keeps C_k > 0
    for idx, rho, _ in res.per_mode:
        ck = cubic_coeffs(p_steady, s, rho, delta=res.value).C
        if idx == res.k0:
            assert abs(ck) < 1e-8 * (1.0 + abs(ck))
        else:
            assert ck > 0
    # discrete max cannot exceed the continuous relaxation
    assert res.value <= res.continuous_value + 1e-12
    assert res.discretization_gap >= -1e-12


def test_delta1_mode_cap_guard(p_steady):
    s = sigma_root(p_steady)
    modes = laplace_modes(Domain("interval", (math.pi,), mode_cap=3))
    with pytest.raises(ModeCapTooSmall):
        delta1(p_steady, s, modes)


def test_delta1_bounded_when_mu3_smallest(p_ref):
    # mu3 <= mu1, mu2 keeps the spatial crossing below the published bound
    p = NondimParams(mu1=1.0, mu2=1.0, mu3=1.0, alpha=p_ref.alpha,
                     beta=p_ref.beta, gamma=p_ref.gamma, delta=70.0)
    s = 700.0
    modes = laplace_modes(Domain("interval", (math.pi,), mode_cap=60))
    res = delta1(p, s, modes)
    bound = 690.8 * p.mu3 / (9.1 * p.mu1 + 0.7 * p.mu2)
    assert res.value <= bound
    assert bound < delta0(p, s)


def test_scenario_stirred_hopf(p_ref):
    crit = scenario(p_ref, 700.0)
    assert crit.scenario == HOPF
    assert crit.delta1 is None
    # with the published rounded (a, b, c) the crossing lands on 71.67
    assert delta0_from_abc(9.74, 690.79, 8.21) == pytest.approx(71.67, abs=0.05)


def test_scenario_spatial_steady(p_ref_spatial):
    modes = laplace_modes(Domain("interval", (math.pi,), mode_cap=50))
    crit = scenario(p_ref_spatial, 700.0, modes)
    assert crit.scenario == STEADY
    assert crit.k0 == 3
    assert crit.delta1 > crit.delta0


def test_scenario_none_when_b_negative():
    crit = scenario(mk(beta=1.0), 1.0)
    assert crit.scenario == NONE
    assert crit.delta0 is None and crit.delta1 is None


def test_scenario_flip_with_diffusivity_ratio(p_steady, dom_pi):
    # raising mu3/mu1 moves the steady crossing past the Hopf one
    s = sigma_root(p_steady)
    modes = laplace_modes(dom_pi)
    crit = scenario(p_steady, s, modes)
    assert crit.scenario == STEADY and not crit.degenerate
    small = NondimParams(mu1=p_steady.mu1, mu2=p_steady.mu2, mu3=p_steady.mu1,
                         alpha=p_steady.alpha, beta=p_steady.beta,
                         gamma=p_steady.gamma, delta=p_steady.delta)
    crit2 = scenario(small, s, modes)
    assert crit2.scenario == HOPF
    assert crit2.delta1 < crit2.delta0
