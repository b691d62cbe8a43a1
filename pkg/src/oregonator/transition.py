"""Transition-type classification at the critical control values.

Hopf branch: the flow is reduced to two dimensions on the center
manifold at delta0; the cubic normal-form number b1 decides whether the
bifurcating cycle is attracting (b1 < 0, continuous transition below
delta0) or repelling (b1 > 0, jump transition above).  All inner
products are evaluated directly on the constructed eigenvectors; the
classical closed-form table for the chain quantities (D0..D8, E, F1..F3)
is kept alongside for reference reporting.  The tabulated D2 drops a
factor rho relative to the direct projection (G12, zeta*), so the
tabulated F's differ from the manifold coefficients actually used in b1;
both are exposed.

Steady branch: at delta1 one spatial mode's block becomes singular.  The
mode's square decomposes over two spectral components on an interval, the
manifold correction solves two 3x3 systems, and the resulting cubic
coefficient kappa (equivalently the normalized b1) classifies the pair of
bifurcating steady states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .critical import abc_numbers, delta0_from_abc, scenario as _scenario
from .errors import (IndeterminateType, ScenarioMismatch, SingularBlock,
                     SingularEigenbasis, SingularSolve)
from .params import NondimParams
from .spectrum import Domain, eigen3, laplace_modes, m_matrix

TYPE_I = "TypeI_Continuous"
TYPE_II = "TypeII_Jump"
TYPE_III = "TypeIII_Mixed"


def g_bilinear(p: NondimParams, u, v) -> np.ndarray:
    """The quadratic interaction as a bilinear map:
    G(u, v) = (-alpha (u1 v2 + beta u1 v1), -u1 v2 / alpha, 0)."""
    u = np.asarray(u)
    v = np.asarray(v)
    out = np.zeros(3, dtype=np.result_type(u, v, float))
    out[0] = -p.alpha * (u[0] * v[1] + p.beta * u[0] * v[0])
    out[1] = -u[0] * v[1] / p.alpha
    return out


def first_lyapunov_coefficient(m: np.ndarray, bilinear, trilinear=None) -> float:
    """First Lyapunov coefficient by the projection method.

    ``bilinear`` must be the symmetric second differential (so the
    quadratic part of the field is bilinear(u, u) / 2); ``trilinear`` the
    symmetric third differential, if any.  Negative means the Hopf cycle
    is born attracting (supercritical).
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    w, vecs = np.linalg.eig(m)
    i = int(np.argmax(w.imag))
    lam = w[i]
    omega = lam.imag
    if omega <= 0.0:
        raise SingularSolve("matrix has no complex eigenvalue pair")
    q = vecs[:, i]
    wt, vecst = np.linalg.eig(m.T)
    j = int(np.argmin(np.abs(wt - np.conj(lam))))
    padj = vecst[:, j]
    pairing = np.vdot(padj, q)
    if abs(pairing) < 1e-12:
        raise SingularSolve("left/right eigenvector pairing is singular")
    padj = padj / np.conj(pairing)  # <p, q> = sum conj(p) q = 1
    qb = np.conj(q)
    try:
        h11 = np.linalg.solve(m, bilinear(q, qb))
        h20 = np.linalg.solve(2j * omega * np.eye(n) - m, bilinear(q, q))
    except np.linalg.LinAlgError as exc:
        raise SingularSolve(str(exc)) from exc
    g21 = -2.0 * np.vdot(padj, bilinear(q, h11)) + np.vdot(padj, bilinear(qb, h20))
    if trilinear is not None:
        g21 = g21 + np.vdot(padj, trilinear(q, q, qb))
    return float(g21.real / (2.0 * omega))


@dataclass
class HopfChain:
    """Every quantity of the two-dimensional reduction at delta0.

    ``F1..F3`` follow the closed-form table (reference chain); the
    manifold coefficients used in the reduction are ``cm_f1..cm_f3``
    (direct projections).  ``b1`` is assembled from the projected
    reduced-equation coefficients; its sign is the classification.
    """

    alpha: float
    beta: float
    gamma: float
    sigma: float
    delta0: float
    a_num: float
    b_num: float
    c_num: float
    A: float
    B: float
    C: float
    rho: float
    xi: np.ndarray = field(repr=False, default=None)
    eta: np.ndarray = field(repr=False, default=None)
    xi_star: np.ndarray = field(repr=False, default=None)
    eta_star: np.ndarray = field(repr=False, default=None)
    zeta: np.ndarray = field(repr=False, default=None)
    zeta_star: np.ndarray = field(repr=False, default=None)
    ip_xi_xis: float = 0.0
    ip_xi_etas: float = 0.0
    ip_eta_etas: float = 0.0
    ip_eta_xis: float = 0.0
    Dsq: float = 0.0
    D0: float = 0.0
    D1: float = 0.0
    D2: float = 0.0        # tabulated closed form; rho * D2 is the projection
    D2_proj: float = 0.0   # (G12, zeta*)
    D3: float = 0.0
    D4: float = 0.0
    D5: float = 0.0
    D6: float = 0.0
    D7: float = 0.0
    D8: float = 0.0
    E: float = 0.0
    F1: float = 0.0
    F2: float = 0.0
    F3: float = 0.0
    cm_f1: float = 0.0
    cm_f2: float = 0.0
    cm_f3: float = 0.0
    a20: float = 0.0
    a11: float = 0.0
    a30: float = 0.0
    a21: float = 0.0
    a12: float = 0.0
    a03: float = 0.0
    b20: float = 0.0
    b11: float = 0.0
    b30: float = 0.0
    b21: float = 0.0
    b12: float = 0.0
    b03: float = 0.0
    b1: float = 0.0
    b1_scale: float = 0.0
    lyapunov: float | None = None
    lyapunov_sign_agrees: bool | None = None
    resid_pair: float = 0.0
    resid_pair_adjoint: float = 0.0
    resid_zeta: float = 0.0
    resid_zeta_adjoint: float = 0.0

    def table(self) -> dict:
        """Named chain quantities for report dumps."""
        keys = ("rho", "Dsq", "D0", "D1", "D2", "D3", "D4", "D5", "D6",
                "D7", "D8", "E", "F1", "F2", "F3")
        out = {k: getattr(self, k) for k in keys}
        out.update(a20=self.a20, a11=self.a11, a30=self.a30, a21=self.a21,
                   a12=self.a12, a03=self.a03, b20=self.b20, b11=self.b11,
                   b30=self.b30, b21=self.b21, b12=self.b12, b03=self.b03,
                   b1=self.b1)
        return out


def hopf_chain(p: NondimParams, sigma: float, delta0: float | None = None,
               abc: tuple | None = None, modes: list | None = None,
               with_lyapunov: bool = True) -> HopfChain:
    """Build the center-manifold reduction at the uniform Hopf crossing.

    ``delta0`` and ``abc`` default to the exact values for (p, sigma);
    overriding them reproduces reference chains computed from rounded
    intermediates.  If ``modes`` is given, the scenario is verified first
    and ScenarioMismatch raised when the steady crossing comes earlier.
    """
    s = float(sigma)
    if abs(s - 1.0) < 1e-9 * (1.0 + abs(s)):
        raise SingularEigenbasis("eigenvector formulas divide by sigma - 1")
    a_num, b_num, c_num = abc if abc is not None else abc_numbers(p, s)
    if b_num <= 0:
        raise ScenarioMismatch("b <= 0: no transition exists at any delta")
    if modes is not None:
        sc = _scenario(p, s, modes)
        if sc.scenario != "HopfAtDelta0":
            raise ScenarioMismatch(
                f"scenario is {sc.scenario}; the Hopf chain applies only "
                "when delta1 < delta0")
    d0 = delta0_from_abc(a_num, b_num, c_num) if delta0 is None else float(delta0)
    al, be, ga = p.alpha, p.beta, p.gamma
    A = a_num + d0
    B = a_num * d0 - b_num
    C = d0 * c_num
    if B <= 0:
        raise ScenarioMismatch("B <= 0 at the supplied delta0: no imaginary pair")
    rho = math.sqrt(B)
    w2 = d0 * d0 + rho * rho
    p1 = 0.5 * al * (ga + 3.0 * be * s - 1.0)
    p2 = (s + 1.0) / al

    xi = np.array([1.0, -(ga + 3.0 * be * s - 1.0) / (2.0 * (s - 1.0)), d0 * d0 / w2])
    eta = np.array([0.0, rho / (al * (s - 1.0)), rho * d0 / w2])
    xis = np.array([-(s + 1.0) / (al * al * (s - 1.0)), 1.0, ga * d0 / (al * w2)])
    etas = np.array([-rho / (al * (s - 1.0)), 0.0, -ga * rho / (al * w2)])
    zeta = np.array([1.0, (A - p1) / (al * (s - 1.0)), -d0 / a_num])
    zetas = np.array([(A - p2) / (al * (s - 1.0)), 1.0, -ga / (al * a_num)])

    m1 = m_matrix(p, s, 0.0, delta=d0)
    z = xi + 1j * eta
    zadj = xis + 1j * etas
    resid_pair = np.linalg.norm(m1 @ z + 1j * rho * z) / np.linalg.norm(z)
    resid_adj = np.linalg.norm(m1.T @ zadj - 1j * rho * zadj) / np.linalg.norm(zadj)
    resid_zeta = np.linalg.norm(m1 @ zeta + A * zeta) / np.linalg.norm(zeta)
    resid_zetas = np.linalg.norm(m1.T @ zetas + A * zetas) / np.linalg.norm(zetas)

    P, Q = float(xi @ xis), float(xi @ etas)
    Pe, Qe = float(eta @ etas), float(eta @ xis)
    Dsq = P * P + Q * Q
    D0 = float(zeta @ zetas)

    G11 = g_bilinear(p, xi, xi).real
    G12 = g_bilinear(p, xi, eta).real
    D1 = float(G11 @ zetas)
    D2_proj = float(G12 @ zetas)
    D2_table = (2.0 - al * A) / (al * al * (s - 1.0) ** 2)
    D3 = d0 * (s - 1.0)
    D4 = A + al * be * s * s + al - 3.0 * al * be * s - al * be - al * ga
    D5 = A + al - al * be * s - 2.0 * al * be - al * ga
    D6 = w2 * w2 + ga * d0 * d0 * (s - 1.0)
    D7 = 1.0 - be * s - be - ga
    D8 = be * s * s + be + 1.0 - 3.0 * be * s - ga
    E = al ** 3 * (s - 1.0) ** 3 * w2 * w2

    den = A * A + 4.0 * rho * rho

    def f_coeffs(d1, d2):
        f1 = d1 / A - 2.0 * rho * rho * d1 / (A * den) - rho * d2 / den
        f2 = d2 / A - 4.0 * rho * rho * d2 / (A * den) + 2.0 * rho * d1 / den
        f3 = 2.0 * rho * rho * d1 / (A * den) + rho * d2 / den
        return f1, f2, f3

    F1, F2, F3 = f_coeffs(D1, D2_table)
    cf1, cf2, cf3 = f_coeffs(D1, D2_proj)

    # reduced-equation coefficients by direct projection
    a20 = (P * (G11 @ xis) + Q * (G11 @ etas)) / Dsq
    a11 = (P * (G12 @ xis) + Q * (G12 @ etas)) / Dsq
    b20 = (Qe * (G11 @ xis) + Pe * (G11 @ etas)) / Dsq
    b11 = (Qe * (G12 @ xis) + Pe * (G12 @ etas)) / Dsq
    Gxz = (g_bilinear(p, xi, zeta) + g_bilinear(p, zeta, xi)).real
    Gze = g_bilinear(p, zeta, eta).real  # G(eta, zeta) vanishes: eta_1 = 0
    U = (P * (Gxz @ xis) + Q * (Gxz @ etas)) / (D0 * Dsq)
    V = (P * (Gze @ xis) + Q * (Gze @ etas)) / (D0 * Dsq)
    W = (Qe * (Gxz @ xis) + Pe * (Gxz @ etas)) / (D0 * Dsq)
    X = (Qe * (Gze @ xis) + Pe * (Gze @ etas)) / (D0 * Dsq)
    a30 = U * cf1
    a21 = U * cf2 + V * cf1
    a12 = U * cf3 + V * cf2
    a03 = V * cf3
    b30 = W * cf1
    b21 = W * cf2 + X * cf1
    b12 = W * cf3 + X * cf2
    b03 = X * cf3

    terms = (3.0 * (a30 + b03), a12 + b21, -(2.0 / rho) * a20 * b20,
             (1.0 / rho) * (a11 * a20 - b11 * b20))
    b1 = sum(terms)
    b1_scale = max(abs(3.0 * a30), abs(3.0 * b03), abs(a12), abs(b21),
                   abs(2.0 * a20 * b20 / rho), abs(a11 * a20 / rho),
                   abs(b11 * b20 / rho))

    lyap = None
    agrees = None
    if with_lyapunov:
        bil = lambda x, y: g_bilinear(p, x, y) + g_bilinear(p, y, x)
        try:
            lyap = first_lyapunov_coefficient(m1, bil)
            if abs(b1) > 1e-12 * b1_scale and lyap != 0.0:
                agrees = bool((b1 < 0) == (lyap < 0))
        except SingularSolve:
            pass

    return HopfChain(
        alpha=al, beta=be, gamma=ga, sigma=s, delta0=d0,
        a_num=a_num, b_num=b_num, c_num=c_num, A=A, B=B, C=C, rho=rho,
        xi=xi, eta=eta, xi_star=xis, eta_star=etas, zeta=zeta, zeta_star=zetas,
        ip_xi_xis=P, ip_xi_etas=Q, ip_eta_etas=Pe, ip_eta_xis=Qe,
        Dsq=Dsq, D0=D0, D1=D1, D2=D2_table, D2_proj=D2_proj, D3=D3, D4=D4,
        D5=D5, D6=D6, D7=D7, D8=D8, E=E, F1=F1, F2=F2, F3=F3,
        cm_f1=cf1, cm_f2=cf2, cm_f3=cf3,
        a20=a20, a11=a11, a30=a30, a21=a21, a12=a12, a03=a03,
        b20=b20, b11=b11, b30=b30, b21=b21, b12=b12, b03=b03,
        b1=b1, b1_scale=b1_scale, lyapunov=lyap, lyapunov_sign_agrees=agrees,
        resid_pair=float(resid_pair), resid_pair_adjoint=float(resid_adj),
        resid_zeta=float(resid_zeta), resid_zeta_adjoint=float(resid_zetas))


def dual_projectors(chain: HopfChain) -> tuple:
    """The pair (Psi1*, Psi2*) that extracts (x, y) coordinates:
    (xi, Psi2*) = (eta, Psi1*) = 0 and (xi, Psi1*) = (eta, Psi2*)."""
    P, Q = chain.ip_xi_xis, chain.ip_xi_etas
    Pe, Qe = chain.ip_eta_etas, chain.ip_eta_xis
    psi1 = (P * chain.xi_star + Q * chain.eta_star) / P
    psi2 = (Qe * chain.xi_star + Pe * chain.eta_star) / Pe
    return psi1, psi2


@dataclass
class TransitionReport:
    """Classification plus the leading-order bifurcated-solution data."""

    scenario: str
    critical_delta: float
    classification: str
    bifurcation_side: str        # below_critical / above_critical
    coefficients: dict
    amplitude_law: dict
    chain_table: dict = field(default_factory=dict, repr=False)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "critical_delta": self.critical_delta,
            "classification": self.classification,
            "bifurcation_side": self.bifurcation_side,
            "coefficients": self.coefficients,
            "amplitude_law": self.amplitude_law,
            "chain": self.chain_table,
        }


def classify_hopf(chain: HopfChain) -> TransitionReport:
    """Type-I attracting cycle below delta0 when b1 < 0; Type-II repelling
    cycle above delta0 when b1 > 0."""
    if abs(chain.b1) < 1e-12 * chain.b1_scale:
        raise IndeterminateType(
            f"b1={chain.b1:g} is below the resolution of its terms "
            f"(scale {chain.b1_scale:g})")
    type_one = chain.b1 < 0
    return TransitionReport(
        scenario="HopfAtDelta0",
        critical_delta=chain.delta0,
        classification=TYPE_I if type_one else TYPE_II,
        bifurcation_side="below_critical" if type_one else "above_critical",
        coefficients={"b1": chain.b1, "lyapunov_oracle": chain.lyapunov,
                      "lyapunov_sign_agrees": chain.lyapunov_sign_agrees},
        amplitude_law={
            "prefactor_rule": "sqrt(-re_beta11(delta)/b1)",
            "b1": chain.b1,
            "rho": chain.rho,
            "eigendirection_xi": chain.xi.tolist(),
            "eigendirection_eta": chain.eta.tolist(),
        },
        chain_table=chain.table())


def steady_b0(p: NondimParams, sigma: float, rho: float) -> float:
    """The degeneracy number of the single-branch steady bifurcation."""
    s = sigma
    p1 = 0.5 * p.alpha * (p.gamma + 3.0 * p.beta * s - 1.0)
    p2 = (s + 1.0) / p.alpha
    return (p.alpha * p.beta * (s - 1.0) * (p.mu2 * rho + p2)
            - (p.alpha * p.mu2 * rho + 2.0 * s) * (p.mu1 * rho + p1))


@dataclass
class SteadyChain:
    """Reduction data for the steady crossing at delta1 on an interval."""

    k0: int
    rho: float
    delta1: float
    xi: np.ndarray = field(repr=False, default=None)
    xi_star: np.ndarray = field(repr=False, default=None)
    ip_xi_xis: float = 0.0
    g_of_xi: np.ndarray = field(repr=False, default=None)
    phi0: np.ndarray = field(repr=False, default=None)      # constant component
    phij: np.ndarray = field(repr=False, default=None)      # double-frequency component
    j_index: int = 0
    int_phi1_esq: float = 0.0
    int_phi2_esq: float = 0.0
    mean_square: float = 0.0     # integral of e_k0^2
    b0: float = 0.0
    Cconst: float | None = None
    b1: float = 0.0
    kappa: float = 0.0           # cubic coefficient of the 1-d reduced equation
    b1_scale: float = 0.0
    cube_condition: bool = False
    resid_xi: float = 0.0
    resid_xi_star: float = 0.0
    resid_phi: float = 0.0


def steady_chain(p: NondimParams, sigma: float, delta1: float, k0: int,
                 domain: Domain, modes: list | None = None) -> SteadyChain:
    """Build the one-dimensional reduction at the steady crossing.

    Interval domains only: there the square of the critical mode spans
    the constant mode and the double-frequency mode j = 2 k0 - 1, and the
    manifold correction solves one 3x3 system per component.
    """
    if domain.kind != "interval":
        raise ValueError("steady chain is implemented for interval domains only")
    s = float(sigma)
    if abs(s - 1.0) < 1e-9 * (1.0 + abs(s)):
        raise SingularEigenbasis("eigenvector formulas divide by sigma - 1")
    if modes is None:
        modes = laplace_modes(domain)
    sc = _scenario(p, s, modes)
    if sc.scenario != "SteadyAtDelta1":
        raise ScenarioMismatch(
            f"scenario is {sc.scenario}; the steady chain applies only "
            "when delta1 > delta0")
    by_index = {m.index: m for m in modes}
    if k0 not in by_index or by_index[k0].rho <= 0:
        raise ValueError(f"k0={k0} is not an enumerated nonzero mode")
    mode = by_index[k0]
    rho = mode.rho
    d1 = float(delta1)
    L = domain.lengths[0]
    al, be, ga = p.alpha, p.beta, p.gamma
    p1 = 0.5 * al * (ga + 3.0 * be * s - 1.0)
    p2 = (s + 1.0) / al
    m3 = p.mu3 * rho + d1

    xi = np.array([al * (s - 1.0) * m3, -(p.mu1 * rho + p1) * m3,
                   al * d1 * (s - 1.0)])
    xis = np.array([-(p.mu2 * rho + p2) * m3, al * m3 * (s - 1.0),
                    ga * (s - 1.0)])
    mk = m_matrix(p, s, rho, delta=d1)
    resid_xi = np.linalg.norm(mk @ xi) / np.linalg.norm(xi)
    resid_xis = np.linalg.norm(mk.T @ xis) / np.linalg.norm(xis)
    ip = float(xi @ xis)

    g_xi = g_bilinear(p, xi, xi).real

    # e_k0^2 = (e_1 + e_j)/2 with j = 2 k0 - 1 (rho_j = 4 rho)
    j_index = 2 * k0 - 1
    rho_j = 4.0 * rho
    m_one = m_matrix(p, s, 0.0, delta=d1)
    m_j = m_matrix(p, s, rho_j, delta=d1)
    for name, mm in (("M1", m_one), ("Mj", m_j)):
        det = np.linalg.det(mm)
        scale = np.prod(np.linalg.norm(mm, axis=1))
        if abs(det) < 1e-12 * scale:
            raise SingularBlock(f"{name} is numerically singular (det={det:g})")
    phi0 = np.linalg.solve(m_one, -0.5 * g_xi)
    phij = np.linalg.solve(m_j, -0.5 * g_xi)
    resid_phi = max(
        np.linalg.norm(m_one @ phi0 + 0.5 * g_xi),
        np.linalg.norm(m_j @ phij + 0.5 * g_xi)) / (1.0 + np.linalg.norm(g_xi))

    # closed-form integrals over (0, L) of phi_i e_k0^2
    int_p1 = L * (phi0[0] + 0.5 * phij[0]) / 2.0
    int_p2 = L * (phi0[1] + 0.5 * phij[1]) / 2.0
    mean_sq = L / 2.0

    t1 = (-(p.mu1 * rho + p1) * (al * p.mu2 * rho + 2.0)
          + 2.0 * al * al * be * (s - 1.0) * (p.mu2 * rho + p2))
    t2 = al * (s - 1.0) * (al * p.mu2 * rho + 2.0)
    b1 = (t1 * int_p1 + t2 * int_p2) / ip
    kappa = m3 * m3 * (t1 * int_p1 + t2 * int_p2) / (ip * mean_sq)
    b1_scale = max(abs(t1 * int_p1), abs(t2 * int_p2)) / abs(ip)

    b0 = steady_b0(p, s, rho)
    return SteadyChain(
        k0=k0, rho=rho, delta1=d1, xi=xi, xi_star=xis, ip_xi_xis=ip,
        g_of_xi=g_xi, phi0=phi0, phij=phij, j_index=j_index,
        int_phi1_esq=int_p1, int_phi2_esq=int_p2, mean_square=mean_sq,
        b0=b0, Cconst=None, b1=b1, kappa=kappa, b1_scale=b1_scale,
        cube_condition=not mode.cube_integral_zero,
        resid_xi=float(resid_xi), resid_xi_star=float(resid_xis),
        resid_phi=float(resid_phi))


def steady_branch_constant(p: NondimParams, sigma: float, delta1: float,
                           rho: float, b0: float, int_e: float,
                           int_e3: float) -> float:
    """Branch constant of the single-branch (mixed) steady bifurcation;
    needs the domain integrals of e_k0 and e_k0^3, which are nonzero only
    for non-product domains (supplied by the caller)."""
    if int_e3 == 0.0:
        raise ValueError("int_e3 must be nonzero for the mixed branch")
    s = sigma
    p1 = 0.5 * p.alpha * (p.gamma + 3.0 * p.beta * s - 1.0)
    p2 = (s + 1.0) / p.alpha
    m3 = p.mu3 * rho + delta1
    num = (m3 * m3 * (p.mu1 * rho + p.mu2 * rho + p2 + p1)
           - (s - 1.0) * p.gamma * delta1) * int_e
    return num / (b0 * m3 ** 3 * int_e3)


def steady_crossing_eigenvalue(p: NondimParams, sigma: float, rho: float,
                               delta: float) -> float:
    """The real eigenvalue of mode rho's block that crosses zero at
    delta1 (largest real eigenvalue)."""
    et = eigen3(m_matrix(p, sigma, rho, delta=delta))
    reals = [v.real for v in et.values if v.imag == 0.0]
    return max(reals)


def classify_steady(chain: SteadyChain, b0: float | None = None,
                    force_cube_condition: bool | None = None) -> TransitionReport:
    """Mixed single branch when the mode's cube integral survives;
    otherwise a symmetric pair of branches, attracting below delta1 for
    b1 < 0 (Type-I) and repelling above for b1 > 0 (Type-II).

    ``force_cube_condition`` overrides the chain's own flag; product
    domains always have a vanishing cube integral, so the mixed branch is
    reachable only through this override (general containers).
    """
    b0 = chain.b0 if b0 is None else b0
    cube = (chain.cube_condition if force_cube_condition is None
            else force_cube_condition)
    if cube:
        if abs(b0) < 1e-12 * (1.0 + abs(b0)):
            raise IndeterminateType("b0 is numerically zero")
        return TransitionReport(
            scenario="SteadyAtDelta1",
            critical_delta=chain.delta1,
            classification=TYPE_III,
            bifurcation_side="both_sides",
            coefficients={"b0": b0, "b1": chain.b1, "kappa": chain.kappa,
                          "branch_constant": chain.Cconst},
            amplitude_law={
                "prefactor_rule": "C * beta_k0(delta)",
                "branch_constant": chain.Cconst,
                "eigendirection_xi": chain.xi.tolist(),
                "mode_index": chain.k0,
            },
            chain_table=_steady_table(chain))
    if abs(chain.b1) < 1e-12 * chain.b1_scale:
        raise IndeterminateType(
            f"b1={chain.b1:g} is below the resolution of its terms "
            f"(scale {chain.b1_scale:g})")
    type_one = chain.b1 < 0
    return TransitionReport(
        scenario="SteadyAtDelta1",
        critical_delta=chain.delta1,
        classification=TYPE_I if type_one else TYPE_II,
        bifurcation_side="below_critical" if type_one else "above_critical",
        coefficients={"b0": b0, "b1": chain.b1, "kappa": chain.kappa},
        amplitude_law={
            "prefactor_rule": "sqrt(-beta_k0(delta)/kappa)",
            "kappa": chain.kappa,
            "b1": chain.b1,
            "eigendirection_xi": chain.xi.tolist(),
            "mode_index": chain.k0,
            "mean_square": chain.mean_square,
        },
        chain_table=_steady_table(chain))


def _steady_table(chain: SteadyChain) -> dict:
    return {
        "k0": chain.k0, "rho_k0": chain.rho, "delta1": chain.delta1,
        "xi": chain.xi.tolist(), "xi_star": chain.xi_star.tolist(),
        "ip_xi_xis": chain.ip_xi_xis, "g_of_xi": chain.g_of_xi.tolist(),
        "phi0": chain.phi0.tolist(), "phij": chain.phij.tolist(),
        "j_index": chain.j_index, "int_phi1_esq": chain.int_phi1_esq,
        "int_phi2_esq": chain.int_phi2_esq, "b0": chain.b0,
        "b1": chain.b1, "kappa": chain.kappa,
        "cube_condition": chain.cube_condition,
    }
