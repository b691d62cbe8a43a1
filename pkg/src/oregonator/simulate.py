"""Direct time integration of the stirred system and the
reaction-diffusion problem, with limit-cycle diagnostics.

All integration runs in translated coordinates (deviation from the
uniform state U1); at large sigma this avoids catastrophic cancellation
against the equilibrium values.  The stirred system uses an adaptive
embedded Runge-Kutta pair; the spatial problem uses the method of lines
with mirror-point Neumann boundaries and Strang-split time stepping
(Crank-Nicolson diffusion, classical RK4 for the pointwise reaction).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eigvals as dense_eigvals
from scipy.sparse import identity as sp_identity, kron as sp_kron, lil_matrix
from scipy.sparse.linalg import splu

from .equilibria import sigma_root, steady_states
from .errors import BlowUp, GridTooCoarse
from .params import NondimParams
from .spectrum import Domain, eigen3, m_matrix
from .transition import HopfChain, first_lyapunov_coefficient, g_bilinear

BLOWUP_THRESHOLD = 1e6


@dataclass
class InitialSpec:
    """How to seed a run: a perturbation of U1, an explicit state, or a
    seeded uniform draw inside an invariant box (original coordinates)."""

    kind: str = "near_u1"        # near_u1 | explicit | random_in_box
    amplitude: float = 1e-3
    direction: tuple = (1.0, 0.0, 0.0)   # state-space direction of the seed
    mode_index: int = 1          # spatial mode carrying the seed (PDE)
    state: np.ndarray | None = None      # translated state for kind=explicit
    box: tuple | None = None     # (a1, a2, a3) for kind=random_in_box
    seed: int = 0


@dataclass
class SimConfig:
    model: str                   # stirred_ode | pde_interval | pde_rectangle
    t_end: float
    grid: int = 64
    dt_init: float = 0.01
    abs_tol: float = 1e-9
    rel_tol: float = 1e-7
    sample_dt: float | None = None
    initial: InitialSpec = field(default_factory=InitialSpec)

    def __post_init__(self):
        if self.model not in ("stirred_ode", "pde_interval", "pde_rectangle"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.model != "stirred_ode" and self.grid < 16:
            raise ValueError("grid must be >= 16 per axis for spatial runs")
        for name in ("abs_tol", "rel_tol"):
            v = getattr(self, name)
            if not (1e-12 < v < 1e-2):
                raise ValueError(f"{name} must lie in (1e-12, 1e-2)")
        if self.t_end <= 0 or self.dt_init <= 0:
            raise ValueError("t_end and dt_init must be positive")


@dataclass
class Trajectory:
    t: np.ndarray
    states: np.ndarray           # (n, 3) stirred; (n, 3, nx[, ny]) spatial
    events: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    axes: tuple = ()


@dataclass
class CycleDiagnostics:
    converged: bool
    period: float
    amplitude: np.ndarray        # half peak-to-peak per component
    transient_time: float
    crossings: int
    status: str                  # converged | not_converged | no_oscillation


def translated_rhs(p: NondimParams, sigma: float, delta: float | None = None):
    """Stirred vector field in deviation-from-U1 coordinates.

    Written out from the translated equations independently of the
    m_matrix assembly so the two transcriptions can be cross-checked.
    """
    al, be, ga = p.alpha, p.beta, p.gamma
    s = sigma
    d = p.delta if delta is None else delta
    c1 = 0.5 * (ga + 3.0 * be * s - 1.0)
    c2 = 0.5 * (1.0 + ga - be * s)

    def rhs(t, u):
        u1, u2, u3 = u
        return np.array([
            al * (-c1 * u1 - (s - 1.0) * u2 - u1 * u2 - be * u1 * u1),
            (-c2 * u1 - (s + 1.0) * u2 + ga * u3 - u1 * u2) / al,
            d * (u1 - u3),
        ])

    return rhs


def translated_jacobian(p: NondimParams, sigma: float, u,
                        delta: float | None = None) -> np.ndarray:
    al, be, ga = p.alpha, p.beta, p.gamma
    s = sigma
    d = p.delta if delta is None else delta
    u1, u2, _ = u
    return np.array([
        [al * (-0.5 * (ga + 3.0 * be * s - 1.0) - u2 - 2.0 * be * u1),
         al * (-(s - 1.0) - u1), 0.0],
        [(-0.5 * (1.0 + ga - be * s) - u2) / al, (-(s + 1.0) - u1) / al, ga / al],
        [d, 0.0, -d],
    ])


def _resolve_initial_ode(spec: InitialSpec, p: NondimParams, sigma: float) -> np.ndarray:
    if spec.kind == "near_u1":
        v = np.asarray(spec.direction, dtype=float)
        return spec.amplitude * v / np.linalg.norm(v)
    if spec.kind == "explicit":
        return np.asarray(spec.state, dtype=float).copy()
    if spec.kind == "random_in_box":
        if spec.box is None:
            raise ValueError("random_in_box needs a box")
        rng = np.random.default_rng(spec.seed)
        u1s = steady_states(p)[1].as_array()
        return rng.uniform(0.0, np.asarray(spec.box)) - u1s
    raise ValueError(f"unknown initial kind {spec.kind!r}")


def integrate_ode(p: NondimParams, sigma: float, cfg: SimConfig,
                  delta: float | None = None) -> Trajectory:
    """Integrate the stirred system with an adaptive embedded 4(5) pair."""
    if cfg.model != "stirred_ode":
        raise ValueError("cfg.model must be stirred_ode")
    d = p.delta if delta is None else delta
    rhs = translated_rhs(p, sigma, d)
    u0 = _resolve_initial_ode(cfg.initial, p, sigma)
    sample_dt = cfg.sample_dt or cfg.t_end / 4000.0
    t_eval = np.linspace(0.0, cfg.t_end, int(round(cfg.t_end / sample_dt)) + 1)

    def too_big(t, u):
        return BLOWUP_THRESHOLD - np.abs(u).max()

    too_big.terminal = True
    too_big.direction = -1
    sol = solve_ivp(rhs, (0.0, cfg.t_end), u0, method="RK45",
                    t_eval=t_eval, rtol=cfg.rel_tol, atol=cfg.abs_tol,
                    events=too_big, first_step=cfg.dt_init)
    if sol.status == 1:
        raise BlowUp(float(sol.t_events[0][0]))
    if not sol.success:
        raise RuntimeError(f"integration failed: {sol.message}")
    traj = Trajectory(t=sol.t, states=sol.y.T.copy(),
                      meta={"model": "stirred_ode", "delta": d, "sigma": sigma,
                            "u1_state": steady_states(p)[1].as_array().tolist()})
    _log_region_events(traj, p, cfg.initial.box)
    return traj


def _log_region_events(traj: Trajectory, p: NondimParams, box) -> None:
    if box is None:
        return
    u1s = steady_states(p)[1].as_array()
    a = np.asarray(box)
    states = traj.states
    if states.ndim == 2:
        orig = states + u1s
        outside = np.any((orig <= 0.0) | (orig >= a), axis=1)
    else:
        orig = states + u1s.reshape((1, 3) + (1,) * (states.ndim - 2))
        bound = a.reshape((1, 3) + (1,) * (states.ndim - 2))
        outside = np.any((orig <= 0.0) | (orig >= bound),
                         axis=tuple(range(1, states.ndim)))
    for i in np.nonzero(outside)[0]:
        traj.events.append({"kind": "region_exit", "t": float(traj.t[i])})


def _lap1d(n: int, h: float) -> lil_matrix:
    # second-order central differences; Neumann via mirror points
    m = lil_matrix((n, n))
    for i in range(n):
        m[i, i] = -2.0
        if i > 0:
            m[i, i - 1] = 1.0
        if i < n - 1:
            m[i, i + 1] = 1.0
    m[0, 1] = 2.0
    m[n - 1, n - 2] = 2.0
    return m / (h * h)


def _verify_discrete_spectrum(lap, n: int, h: float, length: float) -> None:
    # first few discrete eigenvalues must match the analytic ones to O(h^2)
    vals = np.sort(-np.real(dense_eigvals(lap.toarray())))
    for k in range(1, min(6, n)):
        analytic = ((k - 1) * math.pi / length) ** 2
        discrete = vals[k - 1]
        tol = 0.25 * h * h * analytic ** 2 + 1e-8 * (1.0 + analytic)
        if abs(discrete - analytic) > tol:
            raise RuntimeError(
                f"discrete Laplacian eigenvalue {k} off by "
                f"{abs(discrete - analytic):g} (tol {tol:g})")


def reaction_stability_dt(p: NondimParams, sigma: float,
                          delta: float | None = None) -> float:
    """Largest stable RK4 step for the linearized reaction at U1."""
    et = eigen3(m_matrix(p, sigma, 0.0, delta=delta))
    lam = max(abs(v) for v in et.values)
    return 2.785 / lam


def integrate_pde(p: NondimParams, sigma: float, domain: Domain,
                  cfg: SimConfig, delta: float | None = None) -> Trajectory:
    """Method-of-lines run of the reaction-diffusion system.

    Strang splitting: half-step Crank-Nicolson diffusion per species,
    full RK4 step of the pointwise reaction, half-step diffusion.  The
    time step is clamped to the explicit reaction-stability bound, and
    the discrete Laplacian spectrum is verified against the analytic
    eigenvalues on startup.
    """
    if cfg.model not in ("pde_interval", "pde_rectangle"):
        raise ValueError("cfg.model must be pde_interval or pde_rectangle")
    if (cfg.model == "pde_interval") != (domain.kind == "interval"):
        raise ValueError("cfg.model does not match domain kind")
    if domain.ndim > 2:
        raise ValueError("3-d runs are not supported")
    d = p.delta if delta is None else delta
    n = cfg.grid
    axes = tuple(np.linspace(0.0, L, n) for L in domain.lengths)
    hs = [ax[1] - ax[0] for ax in axes]

    lap1s = [_lap1d(n, h) for h in hs]
    _verify_discrete_spectrum(lap1s[0], n, hs[0], domain.lengths[0])
    if domain.ndim == 1:
        lap = lap1s[0].tocsc()
        shape = (n,)
    else:
        _verify_discrete_spectrum(lap1s[1], n, hs[1], domain.lengths[1])
        eye = sp_identity(n, format="csc")
        lap = (sp_kron(lap1s[0].tocsc(), eye) + sp_kron(eye, lap1s[1].tocsc())).tocsc()
        shape = (n, n)
    npts = int(np.prod(shape))

    # seed state, translated coordinates, flattened per species
    spec = cfg.initial
    if spec.kind == "near_u1":
        k = spec.mode_index
        if k > 1:
            ppw = 2 * (n - 1) / (k - 1)
            if ppw < 8:
                raise GridTooCoarse(
                    f"mode {k} has {ppw:.1f} points per wavelength (< 8)")
        profiles = [np.cos((k - 1) * math.pi * ax / L)
                    for ax, L in zip(axes, domain.lengths)]
        prof = profiles[0] if domain.ndim == 1 else np.multiply.outer(*profiles)
        v = np.asarray(spec.direction, dtype=float)
        v = v / np.linalg.norm(v)
        u = spec.amplitude * np.multiply.outer(v, prof)
    elif spec.kind == "explicit":
        u = np.asarray(spec.state, dtype=float).reshape((3,) + shape).copy()
    elif spec.kind == "random_in_box":
        if spec.box is None:
            raise ValueError("random_in_box needs a box")
        rng = np.random.default_rng(spec.seed)
        u1s = steady_states(p)[1].as_array()
        u = (rng.uniform(0.0, 1.0, size=(3,) + shape)
             * np.asarray(spec.box).reshape((3,) + (1,) * domain.ndim)
             - u1s.reshape((3,) + (1,) * domain.ndim))
    else:
        raise ValueError(f"unknown initial kind {spec.kind!r}")
    u = u.reshape(3, npts)

    dt_bound = reaction_stability_dt(p, sigma, d)
    dt = cfg.dt_init
    if dt > 0.9 * dt_bound:
        warnings.warn(f"dt_init={dt:g} exceeds the reaction stability bound; "
                      f"clamping to {0.9 * dt_bound:g}", stacklevel=2)
        dt = 0.9 * dt_bound
    sample_dt = cfg.sample_dt or max(cfg.t_end / 400.0, dt)
    stride = max(1, int(round(sample_dt / dt)))
    nsteps = int(math.ceil(cfg.t_end / dt))

    eye = sp_identity(npts, format="csc")
    half_solvers = []
    half_rhs = []
    for mu in (p.mu1, p.mu2, p.mu3):
        half_solvers.append(splu(eye - (dt / 4.0) * mu * lap))
        half_rhs.append(eye + (dt / 4.0) * mu * lap)

    al, be, ga = p.alpha, p.beta, p.gamma
    s = sigma
    c1 = 0.5 * (ga + 3.0 * be * s - 1.0)
    c2 = 0.5 * (1.0 + ga - be * s)

    def react(v):
        u1, u2, u3 = v
        return np.array([
            al * (-c1 * u1 - (s - 1.0) * u2 - u1 * u2 - be * u1 * u1),
            (-c2 * u1 - (s + 1.0) * u2 + ga * u3 - u1 * u2) / al,
            d * (u1 - u3),
        ])

    def diffuse_half(v):
        return np.array([half_solvers[i].solve(half_rhs[i] @ v[i])
                         for i in range(3)])

    ts = [0.0]
    snaps = [u.reshape((3,) + shape).copy()]
    t = 0.0
    for step in range(nsteps):
        u = diffuse_half(u)
        k1 = react(u)
        k2 = react(u + 0.5 * dt * k1)
        k3 = react(u + 0.5 * dt * k2)
        k4 = react(u + dt * k3)
        u = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        u = diffuse_half(u)
        t += dt
        mx = np.abs(u).max()
        if not np.isfinite(mx) or mx > BLOWUP_THRESHOLD:
            raise BlowUp(t)
        if (step + 1) % stride == 0 or step + 1 == nsteps:
            ts.append(t)
            snaps.append(u.reshape((3,) + shape).copy())

    traj = Trajectory(t=np.array(ts), states=np.array(snaps),
                      meta={"model": cfg.model, "delta": d, "sigma": sigma,
                            "dt": dt, "grid": n,
                            "u1_state": steady_states(p)[1].as_array().tolist()},
                      axes=axes)
    _log_region_events(traj, p, spec.box)
    return traj


def pde_point_series(traj: Trajectory, index) -> Trajectory:
    """Extract the 3-species time series at one grid point."""
    idx = (slice(None), slice(None)) + (index if isinstance(index, tuple) else (index,))
    return Trajectory(t=traj.t, states=traj.states[idx], meta=dict(traj.meta))


def detect_cycle(traj: Trajectory, transient_fraction: float = 0.5) -> CycleDiagnostics:
    """Period/amplitude from positive crossings of the u1 = 0 section.

    The leading ``transient_fraction`` of the samples is discarded; the
    run is converged when the last five crossing intervals agree within
    one percent and the orbit amplitude has stopped drifting (a decaying
    or growing spiral keeps crossing the section at a steady interval, so
    interval stability alone cannot distinguish it from a cycle).
    """
    if traj.states.ndim != 2:
        raise ValueError("detect_cycle expects a 3-component time series")
    if not 0.0 <= transient_fraction < 1.0:
        raise ValueError("transient_fraction must be in [0, 1)")
    t = traj.t
    x = traj.states[:, 0]
    start = int(len(t) * transient_fraction)
    t, x = t[start:], x[start:]
    states = traj.states[start:]
    transient_time = float(traj.t[start] - traj.t[0])

    sign_flip = (x[:-1] < 0.0) & (x[1:] >= 0.0)
    idx = np.nonzero(sign_flip)[0]
    crossings = []
    for i in idx:
        frac = -x[i] / (x[i + 1] - x[i])
        crossings.append(t[i] + frac * (t[i + 1] - t[i]))
    amp = np.array([np.ptp(states[:, c]) / 2.0 for c in range(3)])
    if len(crossings) < 3:
        return CycleDiagnostics(False, 0.0, amp, transient_time,
                                len(crossings), "no_oscillation")
    intervals = np.diff(crossings)
    tail = intervals[-5:]
    spread = np.ptp(tail) / tail.mean()
    period = float(tail.mean())
    window = t >= crossings[-1] - 5.0 * period
    amp = np.array([np.ptp(states[window, c]) / 2.0 for c in range(3)])
    steady_amp = True
    prev_window = (t >= crossings[-1] - 10.0 * period) & ~window
    if prev_window.sum() > 2:
        prev_amp = np.ptp(states[prev_window, 0]) / 2.0
        steady_amp = abs(amp[0] - prev_amp) <= 0.02 * max(amp[0], prev_amp)
    converged = len(intervals) >= 5 and spread < 0.01 and steady_amp
    return CycleDiagnostics(bool(converged), period, amp, transient_time,
                            len(crossings),
                            "converged" if converged else "not_converged")


def hopf_pair_eigenvalue(p: NondimParams, sigma: float, delta: float) -> complex:
    """The complex-pair eigenvalue (positive imaginary part) of the
    uniform-mode block at the given control value."""
    et = eigen3(m_matrix(p, sigma, 0.0, delta=delta))
    pair = [v for v in et.values if v.imag > 0.0]
    if not pair:
        raise ValueError("uniform block has no complex pair at this delta")
    return pair[0]


def amplitude_scaling_check(p: NondimParams, sigma: float, chain: HopfChain,
                            deltas, t_end: float = 400.0,
                            perturbation: float = 1e-3,
                            rel_spread_limit: float = 0.25) -> dict:
    """Square-root amplitude law near the Hopf crossing.

    For each control value below delta0 the converged cycle amplitude of
    the first component (which is the x-coordinate in the (xi, eta)
    basis, since xi1 = 1 and eta1 = 0) is recorded; a(delta)^2 over
    -Re(beta11(delta)) must stay constant across the sweep.  Values above
    delta0 are reported as the empty-branch side.
    """
    if chain.b1 >= 0:
        raise ValueError("supercritical side requires b1 < 0")
    d0 = chain.delta0
    rows = []
    ratios = []
    for d in deltas:
        lam = hopf_pair_eigenvalue(p, sigma, d)
        if d >= d0:
            rows.append({"delta": d, "re_beta11": lam.real, "im_beta11": lam.imag,
                         "amplitude": None, "ratio": None, "empty_side": True})
            continue
        if not 0.9 * d0 < d < d0:
            raise ValueError(f"delta={d:g} outside (0.9 delta0, delta0)")
        cfg = SimConfig(model="stirred_ode", t_end=t_end,
                        sample_dt=(2.0 * math.pi / chain.rho) / 64.0,
                        initial=InitialSpec(kind="near_u1",
                                            amplitude=perturbation,
                                            direction=tuple(chain.xi)))
        traj = integrate_ode(p, sigma, cfg, delta=d)
        diag = detect_cycle(traj, transient_fraction=0.5)
        ratio = None
        if diag.status != "no_oscillation":
            ratio = float(diag.amplitude[0] ** 2 / (-lam.real))
            ratios.append(ratio)
        rows.append({"delta": d, "re_beta11": lam.real, "im_beta11": lam.imag,
                     "amplitude": float(diag.amplitude[0]),
                     "period": diag.period, "converged": diag.converged,
                     "ratio": ratio, "empty_side": False})
    spread = 0.0
    if len(ratios) > 1:
        spread = float(np.ptp(ratios) / abs(np.mean(ratios)))
    return {
        "rows": rows,
        "ratio_mean": float(np.mean(ratios)) if ratios else None,
        "ratio_rel_spread": spread,
        "passes": bool(ratios) and spread <= rel_spread_limit,
        # a^2 / (-Re beta11) -> 1/b1 as delta -> delta0, in the xi/eta basis
        "b1_estimate_up_to_basis": 1.0 / float(np.mean(ratios)) if ratios else None,
    }


def lyapunov_oracle(p: NondimParams, sigma: float, delta0: float) -> float:
    """First Lyapunov coefficient of the stirred system at the crossing,
    by the projection method with the quadratic interaction only.
    Negative means the bifurcating cycle is attracting."""
    m1 = m_matrix(p, sigma, 0.0, delta=delta0)
    bil = lambda x, y: g_bilinear(p, x, y) + g_bilinear(p, y, x)
    return first_lyapunov_coefficient(m1, bil)
