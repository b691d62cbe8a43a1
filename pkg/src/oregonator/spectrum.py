"""Neumann-Laplacian eigenmodes, per-mode linear blocks, and stability.

On an interval (0, L) the Laplacian with zero-flux boundary conditions
has eigenpairs rho_k = (k-1)^2 pi^2 / L^2, e_k = cos((k-1) pi x / L);
rectangles and boxes take tensor products.  Each mode contributes a 3x3
block M_k whose characteristic cubic lambda^3 + A_k lambda^2 + B_k
lambda + C_k governs linear stability of the uniform state U1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ModeCapTooSmall
from .params import NondimParams

STABLE = "Stable"
MARGINAL = "Marginal"
UNSTABLE = "Unstable"


@dataclass(frozen=True)
class Domain:
    """Product container: interval, rectangle or box with per-axis lengths."""

    kind: str
    lengths: tuple
    mode_cap: int = 50

    def __post_init__(self):
        kinds = {"interval": 1, "rectangle": 2, "box": 3}
        if self.kind not in kinds:
            raise ValueError(f"kind must be one of {sorted(kinds)}, got {self.kind!r}")
        object.__setattr__(self, "lengths", tuple(float(v) for v in self.lengths))
        if len(self.lengths) != kinds[self.kind]:
            raise ValueError(f"{self.kind} needs {kinds[self.kind]} lengths, got {len(self.lengths)}")
        if any(v <= 0 or not math.isfinite(v) for v in self.lengths):
            raise ValueError("lengths must be positive and finite")
        if self.mode_cap < 2:
            raise ValueError("mode_cap must be >= 2")

    @property
    def ndim(self) -> int:
        return len(self.lengths)


@dataclass(frozen=True)
class SpectralMode:
    """One Laplacian eigenpair; rho >= 0, the k=1 mode is constant."""

    index: int                 # 1-based rank in the rho-sorted list
    multi_index: tuple         # zero-based per-axis wavenumbers
    rho: float
    cube_integral_zero: bool   # whether the cube of the mode integrates to 0
    mean_square: float         # integral of e_k^2 over the domain


def laplace_modes(domain: Domain) -> list:
    """First ``mode_cap`` Neumann eigenmodes sorted by nondecreasing rho.

    The per-axis index cap is chosen so the candidate set provably
    contains the global first ``mode_cap`` modes; ties are broken by the
    multi-index, lexicographically.
    """
    L = np.array(domain.lengths)
    lmax = L.max()
    # every pure mode along the longest axis is a candidate, so the
    # mode_cap-th smallest rho is at most ((mode_cap-1) pi / lmax)^2
    rho_bound = ((domain.mode_cap - 1) * math.pi / lmax) ** 2
    caps = [int(math.ceil(math.sqrt(rho_bound) * Li / math.pi)) + 1 for Li in L]
    grids = np.meshgrid(*[np.arange(c + 1) for c in caps], indexing="ij")
    idx = np.stack([g.ravel() for g in grids], axis=1)
    rho = (idx ** 2 * (math.pi / L) ** 2).sum(axis=1)
    order = sorted(range(len(rho)), key=lambda i: (rho[i], tuple(idx[i])))
    modes = []
    for rank, i in enumerate(order[: domain.mode_cap], start=1):
        mi = tuple(int(v) for v in idx[i])
        nonconstant = any(m > 0 for m in mi)
        msq = 1.0
        for m, Li in zip(mi, L):
            msq *= Li if m == 0 else Li / 2.0
        modes.append(SpectralMode(rank, mi, float(rho[i]), nonconstant, msq))
    return modes


def mode_values(mode: SpectralMode, domain: Domain, *axes) -> np.ndarray:
    """Evaluate e_k on a tensor grid given per-axis coordinate arrays."""
    if len(axes) != domain.ndim:
        raise ValueError("one coordinate array per axis required")
    out = None
    for m, Li, x in zip(mode.multi_index, domain.lengths, axes):
        v = np.cos(m * math.pi * np.asarray(x) / Li)
        out = v if out is None else np.multiply.outer(out, v)
    return out


def m_matrix(p: NondimParams, sigma: float, rho: float,
             delta: float | None = None) -> np.ndarray:
    """Per-mode 3x3 linear block at the uniform state U1."""
    d = p.delta if delta is None else delta
    p1 = 0.5 * p.alpha * (p.gamma + 3.0 * p.beta * sigma - 1.0)
    p2 = (sigma + 1.0) / p.alpha
    q1 = (1.0 + p.gamma - p.beta * sigma) / (2.0 * p.alpha)
    return np.array([
        [-p.mu1 * rho - p1, -p.alpha * (sigma - 1.0), 0.0],
        [-q1, -p.mu2 * rho - p2, p.gamma / p.alpha],
        [d, 0.0, -p.mu3 * rho - d],
    ])


def origin_matrix(p: NondimParams, rho: float = 0.0,
                  delta: float | None = None) -> np.ndarray:
    """Per-mode linear block at the origin (always unstable: det > 0)."""
    d = p.delta if delta is None else delta
    return np.array([
        [-p.mu1 * rho + p.alpha, p.alpha, 0.0],
        [0.0, -p.mu2 * rho - 1.0 / p.alpha, p.gamma / p.alpha],
        [d, 0.0, -p.mu3 * rho - d],
    ])


@dataclass(frozen=True)
class CubicCoeffs:
    """Coefficients of lambda^3 + A lambda^2 + B lambda + C."""

    A: float
    B: float
    C: float


def cubic_coeffs(p: NondimParams, sigma: float, rho: float,
                 delta: float | None = None) -> CubicCoeffs:
    """Characteristic-cubic coefficients of M_k in closed form.

    Satisfies A = -tr(M_k), B = sum of principal 2x2 minors,
    C = -det(M_k); the rho = 0 case reduces to the uniform-mode cubic
    with A = delta + a, B = a delta - b, C = delta c.
    """
    d = p.delta if delta is None else delta
    s = sigma
    p1 = 0.5 * p.alpha * (3.0 * p.beta * s + p.gamma - 1.0)
    p2 = (s + 1.0) / p.alpha
    a = p1 + p2
    b = (1.0 - p.beta) * s - 2.0 * p.beta * s * s - p.gamma
    c = s * (2.0 * p.beta * s + p.beta + p.gamma - 1.0)
    q = p2 * p.mu1 + p1 * p.mu2
    mu_pairs = p.mu1 * p.mu2 + p.mu1 * p.mu3 + p.mu2 * p.mu3
    A = d + a + (p.mu1 + p.mu2 + p.mu3) * rho
    B = (d * a - b) + (d * (p.mu1 + p.mu2) + a * p.mu3 + q) * rho + mu_pairs * rho * rho
    C = (d * c + (q * d - b * p.mu3) * rho
         + (p.mu1 * p.mu2 * d + q * p.mu3) * rho * rho
         + p.mu1 * p.mu2 * p.mu3 * rho ** 3)
    return CubicCoeffs(A, B, C)


@dataclass(frozen=True)
class EigenTriple:
    """Eigenvalues of a real 3x3 matrix, conjugation-closed, Re-descending."""

    values: tuple
    degenerate: bool = False

    @property
    def max_real(self) -> float:
        return max(v.real for v in self.values)


def _polish(lam, A, B, C):
    # one Newton step on the characteristic cubic
    f = ((lam + A) * lam + B) * lam + C
    fp = (3.0 * lam + 2.0 * A) * lam + B
    if abs(fp) > 1e-300:
        lam = lam - f / fp
    return lam


def eigen3(m: np.ndarray) -> EigenTriple:
    """Eigenvalues via the characteristic cubic (companion solve + one
    Newton polish per root), with conjugate pairs exactly enforced."""
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3) or not np.all(np.isfinite(m)):
        raise ValueError("eigen3 expects a finite 3x3 matrix")
    A = -np.trace(m)
    B = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
         + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
         + m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
    C = -np.linalg.det(m)
    roots = np.roots([1.0, A, B, C])
    roots = np.array([_polish(r, A, B, C) for r in roots])
    scale = 1.0 + np.abs(roots).max()
    # discriminant decides 3-real vs real + conjugate pair
    disc = (18.0 * A * B * C - 4.0 * A ** 3 * C + A * A * B * B
            - 4.0 * B ** 3 - 27.0 * C * C)
    disc_scale = max(abs(A * B * C), abs(B) ** 3, abs(C) ** 2, 1.0)
    degenerate = abs(disc) <= 1e-12 * disc_scale
    if disc > 0 or np.all(np.abs(roots.imag) <= 1e-9 * scale):
        vals = sorted((complex(r.real, 0.0) for r in roots),
                      key=lambda z: -z.real)
    else:
        i_real = int(np.argmin(np.abs(roots.imag)))
        lam_r = complex(roots[i_real].real, 0.0)
        pair = np.delete(roots, i_real)
        z = 0.5 * (pair[0] + np.conj(pair[1]))
        z = complex(z.real, abs(z.imag))
        vals = sorted([lam_r, z, z.conjugate()],
                      key=lambda w: (-w.real, -w.imag))
    return EigenTriple(tuple(vals), degenerate=degenerate)


def eigvec(m: np.ndarray, lam: complex) -> np.ndarray:
    """Unit eigenvector for a given eigenvalue via SVD null space."""
    _, _, vh = np.linalg.svd(m - lam * np.eye(3))
    v = vh[-1].conj()
    return v / np.linalg.norm(v)


def hurwitz(c: CubicCoeffs) -> str:
    """Routh-Hurwitz verdict for the cubic: all roots in the open left
    half plane iff A > 0, C > 0, AB - C > 0 (strictly)."""
    checks = (
        (c.A, 1e-9 * (1.0 + abs(c.A))),
        (c.C, 1e-9 * (1.0 + abs(c.C))),
        (c.A * c.B - c.C, 1e-9 * (1.0 + abs(c.A * c.B) + abs(c.C))),
    )
    if any(v < -tol for v, tol in checks):
        return UNSTABLE
    if all(v > tol for v, tol in checks):
        return STABLE
    return MARGINAL


@dataclass
class PESReport:
    """Which eigenvalue family crosses the imaginary axis, and where.

    ``kind`` is one of ``AllStable`` (b <= 0), ``HopfCrossing`` (complex
    pair of the uniform mode at delta0) or ``SteadyCrossing`` (real
    eigenvalue of mode k0 at delta1).  Validation results are computed by
    direct eigensolves of every block at the critical value.
    """

    kind: str
    b: float
    delta: float
    delta0: float | None = None
    delta1: float | None = None
    k0: int | None = None
    critical_delta: float | None = None
    position: str | None = None          # current delta vs critical
    critical_max_abs_re: float | None = None
    others_max_re: float | None = None
    verified: bool | None = None
    mode_table: list = field(default_factory=list)


def pes_check(p: NondimParams, sigma: float, delta: float, modes: list,
              re_tol: float = 1e-6, margin_tol: float = 1e-8) -> PESReport:
    """Exchange-of-stabilities check across the enumerated modes.

    For b <= 0 every mode is verified stable.  Otherwise the scenario's
    critical value is computed and, with delta set to it, the designated
    eigenvalue must sit on the axis (|Re| < re_tol) while every other
    eigenvalue across the first modes stays below -margin_tol.
    """
    from .critical import scenario as _scenario

    if not modes:
        raise ValueError("modes must be nonempty")
    if not any(m.rho == 0.0 for m in modes):
        raise ValueError("modes must contain the constant mode")

    crit = _scenario(p, sigma, modes)
    b = crit.b

    if crit.scenario == "NoTransition":
        table = []
        ok = True
        for mode in modes:
            et = eigen3(m_matrix(p, sigma, mode.rho, delta=delta))
            table.append((mode.index, mode.rho, et.max_real))
            ok = ok and et.max_real < 0.0
        return PESReport(kind="AllStable", b=b, delta=delta,
                         verified=ok, mode_table=table)

    if crit.scenario == "HopfAtDelta0":
        kind, dcrit, crossing = "HopfCrossing", crit.delta0, (1,)
    else:
        kind, dcrit, crossing = "SteadyCrossing", crit.delta1, (crit.k0,)

    table = []
    crit_re = None
    others = -math.inf
    for mode in modes:
        et = eigen3(m_matrix(p, sigma, mode.rho, delta=dcrit))
        table.append((mode.index, mode.rho, et.max_real))
        if mode.index in crossing:
            crit_re = abs(et.max_real)
            # remaining eigenvalues of the crossing block must be stable
            rest = sorted(et.values, key=lambda z: -z.real)
            if kind == "SteadyCrossing":
                others = max(others, rest[1].real)
            else:
                others = max(others, rest[2].real)
        else:
            others = max(others, et.max_real)
    verified = crit_re is not None and crit_re < re_tol and others < -margin_tol
    position = ("critical" if math.isclose(delta, dcrit, rel_tol=1e-12)
                else "stable_side" if delta > dcrit else "unstable_side")
    return PESReport(kind=kind, b=b, delta=delta, delta0=crit.delta0,
                     delta1=crit.delta1, k0=crit.k0, critical_delta=dcrit,
                     position=position, critical_max_abs_re=crit_re,
                     others_max_re=others, verified=verified, mode_table=table)
