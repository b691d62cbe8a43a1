import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from oregonator import (Domain, ModeCapTooSmall, NondimParams, cubic_coeffs,
                        eigen3, hurwitz, laplace_modes, m_matrix, pes_check,
                        sigma_root)
from oregonator.spectrum import (MARGINAL, STABLE, UNSTABLE, CubicCoeffs,
                                 eigvec, mode_values, origin_matrix)


def mk(mu=(1.0, 1.0, 1.0), alpha=2.0, beta=0.02, gamma=1.0, delta=0.8):
    return NondimParams(mu1=mu[0], mu2=mu[1], mu3=mu[2], alpha=alpha,
                        beta=beta, gamma=gamma, delta=delta)


def random_params(rng):
    return mk(mu=tuple(10 ** rng.uniform(-3, 0, 3)),
              alpha=10 ** rng.uniform(0, 2),
              beta=10 ** rng.uniform(-6, -0.3),
              gamma=rng.uniform(0.3, 3.0),
              delta=10 ** rng.uniform(-1, 2))


# ---------------------------------------------------------------- modes

def test_interval_modes_basic():
    dom = Domain("interval", (math.pi,), mode_cap=6)
    modes = laplace_modes(dom)
    assert [m.rho for m in modes] == pytest.approx([0, 1, 4, 9, 16, 25])
    assert modes[0].rho == 0.0 and not modes[0].cube_integral_zero
    assert modes[0].mean_square == pytest.approx(math.pi)
    assert modes[1].mean_square == pytest.approx(math.pi / 2)
    x = np.linspace(0, math.pi, 7)
    assert mode_values(modes[1], dom, x) == pytest.approx(np.cos(x))


def test_cube_integrals_vanish_for_nonconstant_modes():
    L = 1.7
    dom = Domain("interval", (L,), mode_cap=5)
    for m in laplace_modes(dom):
        val, _ = quad(lambda x, k=m.multi_index[0]:
                      math.cos(k * math.pi * x / L) ** 3, 0.0, L)
        if m.cube_integral_zero:
            assert abs(val) < 1e-12
        else:
            assert val == pytest.approx(L)
        # mean square closed form against quadrature
        msq, _ = quad(lambda x, k=m.multi_index[0]:
                      math.cos(k * math.pi * x / L) ** 2, 0.0, L)
        assert m.mean_square == pytest.approx(msq)


def test_rectangle_modes_match_enumeration_oracle():
    dom = Domain("rectangle", (math.pi, 2 * math.pi), mode_cap=6)
    modes = laplace_modes(dom)
    # brute-force oracle: rho = m^2 + n^2/4 over a generous grid, sorted
    grid = sorted(m * m + n * n / 4.0 for m in range(12) for n in range(12))
    assert [m.rho for m in modes] == pytest.approx(grid[:6])
    assert [m.rho for m in modes] == pytest.approx([0.0, 0.25, 1.0, 1.0, 1.25, 2.0])
    assert all(m.cube_integral_zero for m in modes[1:])
    rhos = [m.rho for m in modes]
    assert rhos == sorted(rhos)


def test_box_modes_sorted_and_complete():
    dom = Domain("box", (1.0, 2.0, 3.0), mode_cap=20)
    modes = laplace_modes(dom)
    grid = sorted((math.pi * i) ** 2 + (math.pi * j / 2) ** 2 + (math.pi * k / 3) ** 2
                  for i in range(25) for j in range(25) for k in range(25))
    assert [m.rho for m in modes] == pytest.approx(grid[:20])


# ------------------------------------------------------------- matrices

def test_matrix_cubic_identities_random():
    rng = np.random.default_rng(3)
    for _ in range(50):
        p = random_params(rng)
        s = sigma_root(p)
        rho = rng.uniform(0.0, 40.0)
        m = m_matrix(p, s, rho)
        c = cubic_coeffs(p, s, rho)
        minors = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
                  + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
                  + m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        assert c.A == pytest.approx(-np.trace(m), rel=1e-10)
        assert c.B == pytest.approx(minors, rel=1e-10)
        assert c.C == pytest.approx(-np.linalg.det(m), rel=1e-10)


def test_cubic_reduces_at_zero_rho():
    p = mk()
    s = sigma_root(p)
    c0 = cubic_coeffs(p, s, 0.0)
    a = 0.5 * p.alpha * (3 * p.beta * s + p.gamma - 1) + (s + 1) / p.alpha
    b = (1 - p.beta) * s - 2 * p.beta * s * s - p.gamma
    cc = s * (2 * p.beta * s + p.beta + p.gamma - 1)
    assert c0.A == pytest.approx(p.delta + a, rel=1e-14)
    assert c0.B == pytest.approx(p.delta * a - b, rel=1e-14)
    assert c0.C == pytest.approx(p.delta * cc, rel=1e-14)


def test_origin_block_always_unstable():
    rng = np.random.default_rng(5)
    for _ in range(20):
        p = random_params(rng)
        m = origin_matrix(p)
        assert np.linalg.det(m) == pytest.approx(p.delta * (p.gamma + 1.0),
                                                 rel=1e-12)
        assert eigen3(m).max_real > 0


def test_a_k_increasing_in_rho():
    p = mk()
    s = sigma_root(p)
    rhos = np.linspace(0, 30, 40)
    a_vals = [cubic_coeffs(p, s, r).A for r in rhos]
    assert all(x < y for x, y in zip(a_vals, a_vals[1:]))
    # slope equals the diffusivity sum
    slope = (a_vals[-1] - a_vals[0]) / (rhos[-1] - rhos[0])
    assert slope == pytest.approx(p.mu1 + p.mu2 + p.mu3, rel=1e-12)


def test_spatial_hurwitz_margins_hold():
    # A_k > 0 and A_k B_k - C_k > 0 for nonzero modes, evaluated at the
    # critical control values where the exchange-of-stabilities argument
    # uses them (for delta below the uniform crossing the second margin
    # fails at small rho by continuity, so it cannot hold unconditionally)
    from oregonator import delta0
    rng = np.random.default_rng(8)
    count = 0
    while count < 40:
        p = random_params(rng)
        s = sigma_root(p)
        d0 = delta0(p, s)
        if d0 is None:
            continue
        count += 1
        for d in (d0, 1.7 * d0):
            for rho in rng.uniform(0.05, 60.0, 5):
                c = cubic_coeffs(p, s, rho, delta=d)
                assert c.A > 0
                assert c.A * c.B - c.C > 0


# ---------------------------------------------------------------- eigen

def test_eigen_identity_matrix():
    # triple root: accuracy is limited to ~eps^(1/3), flagged degenerate
    et = eigen3(np.eye(3))
    assert et.degenerate
    for v in et.values:
        assert v == pytest.approx(1.0, abs=1e-4)


def test_eigen_known_factorization():
    # companion of x^3 + x^2 + x + 1 = (x + 1)(x^2 + 1)
    m = np.array([[0.0, 0.0, -1.0], [1.0, 0.0, -1.0], [0.0, 1.0, -1.0]])
    et = eigen3(m)
    vals = sorted(et.values, key=lambda z: (z.real, z.imag))
    assert vals[0] == pytest.approx(-1.0, abs=1e-12)
    assert vals[1] == pytest.approx(-1j, abs=1e-12)
    assert vals[2] == pytest.approx(1j, abs=1e-12)


def test_eigen_reference_block(p_ref):
    from oregonator import abc_numbers, delta0
    s = 700.0
    d0 = delta0(p_ref, s)
    et = eigen3(m_matrix(p_ref, s, 0.0, delta=d0))
    a, _, _ = abc_numbers(p_ref, s)
    real = [v for v in et.values if v.imag == 0.0]
    pair = [v for v in et.values if v.imag > 0.0]
    assert len(real) == 1 and len(pair) == 1
    assert real[0].real == pytest.approx(-(a + d0), rel=1e-9)
    assert real[0].real == pytest.approx(-81.41, abs=0.5)
    assert pair[0].imag == pytest.approx(2.70, abs=0.05)
    assert abs(pair[0].real) < 1e-9


def test_eigen_conjugate_closure_and_residual():
    rng = np.random.default_rng(17)
    for _ in range(200):
        m = rng.normal(size=(3, 3)) * 10 ** rng.uniform(-1, 2)
        et = eigen3(m)
        vals = np.array(et.values)
        conj_sorted = np.sort_complex(vals.conj())
        assert np.array_equal(np.sort_complex(vals), conj_sorted)
        scale = np.linalg.norm(m)
        for lam in vals:
            v = eigvec(m, lam)
            assert np.linalg.norm(m @ v - lam * v) <= 1e-10 * scale


# -------------------------------------------------------------- hurwitz

def test_hurwitz_marginal_case():
    assert hurwitz(CubicCoeffs(1.0, 1.0, 1.0)) == MARGINAL


def test_hurwitz_near_reference_crossing(p_ref):
    from oregonator import delta0
    s = 700.0
    d0 = delta0(p_ref, s)
    assert hurwitz(cubic_coeffs(p_ref, s, 0.0, delta=d0)) == MARGINAL
    assert hurwitz(cubic_coeffs(p_ref, s, 0.0, delta=d0 * 1.001)) == STABLE
    assert hurwitz(cubic_coeffs(p_ref, s, 0.0, delta=d0 * 0.999)) == UNSTABLE


@settings(max_examples=300, deadline=None)
@given(A=st.floats(-5, 5), B=st.floats(-5, 5), C=st.floats(-5, 5))
def test_hurwitz_agrees_with_roots(A, B, C):
    verdict = hurwitz(CubicCoeffs(A, B, C))
    mr = np.roots([1.0, A, B, C]).real.max()
    band = 1e-9 * (1.0 + abs(mr))
    if verdict == STABLE:
        assert mr < band
    elif verdict == UNSTABLE:
        assert mr > -band


# ------------------------------------------------------------------ pes

def test_pes_all_stable_when_b_negative():
    p = mk(beta=1.0)
    s = sigma_root(p)
    dom = Domain("interval", (math.pi,), mode_cap=50)
    rep = pes_check(p, s, p.delta, laplace_modes(dom))
    assert rep.kind == "AllStable"
    assert rep.verified


def test_pes_hopf_crossing(p_ref, sig_ref):
    p = NondimParams(mu1=0.01, mu2=0.01, mu3=0.01, alpha=p_ref.alpha,
                     beta=p_ref.beta, gamma=p_ref.gamma, delta=70.0)
    dom = Domain("interval", (math.pi,), mode_cap=50)
    rep = pes_check(p, sig_ref, 70.0, laplace_modes(dom))
    assert rep.kind == "HopfCrossing"
    assert rep.verified
    assert rep.critical_max_abs_re < 1e-8
    assert rep.others_max_re < -1e-8


def test_pes_steady_crossing_at_pinned_mode(p_ref_spatial):
    # sigma pinned to the published 700; the maximizing mode is mu1*rho = 3.5
    dom = Domain("interval", (math.pi,), mode_cap=50)
    modes = laplace_modes(dom)
    rep = pes_check(p_ref_spatial, 700.0, 80.0, modes)
    assert rep.kind == "SteadyCrossing"
    assert rep.k0 == 3
    rho_k0 = [m.rho for m in modes if m.index == rep.k0][0]
    assert p_ref_spatial.mu1 * rho_k0 == pytest.approx(3.5)
    assert rep.verified


def test_pes_mode_cap_too_small(p_steady):
    s = sigma_root(p_steady)
    dom = Domain("interval", (math.pi,), mode_cap=3)
    with pytest.raises(ModeCapTooSmall):
        pes_check(p_steady, s, 0.9, laplace_modes(dom))
