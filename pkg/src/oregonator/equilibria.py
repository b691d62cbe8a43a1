"""Homogeneous steady states and the invariant box of the model.

The reaction part of the system (spatially uniform, original
coordinates) is

    f1 = alpha (u1 + u2 - u1 u2 - beta u1^2)
    f2 = (1/alpha) (gamma u3 - u2 - u1 u2)
    f3 = delta (u1 - u3)

with the origin and U1 = (sigma, gamma sigma/(1+sigma), sigma) as the
nonnegative equilibria, sigma the positive root of
beta s^2 + (gamma + beta - 1) s - (1 + gamma) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import qmc

from .errors import DegenerateBox
from .params import NondimParams


@dataclass(frozen=True)
class SteadyState:
    u1: float
    u2: float
    u3: float
    sigma: float

    def as_array(self) -> np.ndarray:
        return np.array([self.u1, self.u2, self.u3])


@dataclass(frozen=True)
class RegionBox:
    """Axis-aligned box 0 < u_i < a_i that the flow cannot leave."""

    a1: float
    a2: float
    a3: float

    def satisfies_constraints(self, p: NondimParams) -> bool:
        return (self.a1 > max(1.0, 1.0 / p.beta)
                and self.a2 > p.gamma * self.a3
                and self.a3 > self.a1)


def sigma_root(p: NondimParams) -> float:
    """Positive root of the steady-state quadratic, cancellation-safe.

    For q = 1 - gamma - beta < 0 the textbook form (q + sqrt(...))/(2 beta)
    subtracts nearly equal numbers; the conjugate form is used there.
    """
    q = 1.0 - p.gamma - p.beta
    disc = math.sqrt(q * q + 4.0 * p.beta * (1.0 + p.gamma))
    if q >= 0.0:
        return (q + disc) / (2.0 * p.beta)
    return 2.0 * (1.0 + p.gamma) / (disc - q)


def reaction_rhs(p: NondimParams, u, delta: float | None = None) -> np.ndarray:
    """Reaction vector field in original (untranslated) coordinates."""
    d = p.delta if delta is None else delta
    u1, u2, u3 = u
    return np.array([
        p.alpha * (u1 + u2 - u1 * u2 - p.beta * u1 * u1),
        (p.gamma * u3 - u2 - u1 * u2) / p.alpha,
        d * (u1 - u3),
    ])


def steady_states(p: NondimParams) -> tuple[SteadyState, SteadyState]:
    """The origin and the positive equilibrium U1."""
    s = sigma_root(p)
    u2 = p.gamma * s / (1.0 + s)
    return (SteadyState(0.0, 0.0, 0.0, 0.0),
            SteadyState(s, u2, s, s))


def b_parameter(p: NondimParams, sigma: float | None = None) -> float:
    """b = (1 - beta) sigma - 2 beta sigma^2 - gamma.

    Its sign separates the always-stable regime (b < 0) from the regime
    with a finite critical control value.  ``sigma`` may be overridden
    for reproduction of published worked numbers.
    """
    s = sigma_root(p) if sigma is None else sigma
    return (1.0 - p.beta) * s - 2.0 * p.beta * s * s - p.gamma


def invariant_region(p: NondimParams, margin: float = 0.1,
                     sigma: float | None = None) -> RegionBox:
    """One valid invariant box: a1 > max(1, 1/beta), a2 > gamma a3, a3 > a1,
    enlarged by ``margin`` and sized to contain U1."""
    if margin <= 0:
        raise ValueError("margin must be > 0")
    s = sigma_root(p) if sigma is None else sigma
    a1 = (1.0 + margin) * max(1.0, 1.0 / p.beta) * max(1.0, s)
    a3 = (1.0 + margin) * a1
    a2 = (1.0 + margin) * p.gamma * a3
    return RegionBox(a1, a2, a3)


def _face_points(n: int, seed: int) -> np.ndarray:
    # fixed-seed low-discrepancy points in (0,1)^2; Halton never hits 0 or 1
    sampler = qmc.Halton(d=2, scramble=False, seed=seed)
    pts = sampler.random(n + 1)[1:]  # first Halton point is (0,0); skip it
    return pts


def inward_flux_check(p: NondimParams, box: RegionBox, samples: int = 32,
                      seed: int = 0) -> bool:
    """Check that the reaction field points into the box on all six faces.

    Each face is sampled at ``samples`` quasi-random interior points; the
    face-normal component of the field must have the inward sign strictly
    at every point.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    a = np.array([box.a1, box.a2, box.a3])
    if np.any(a <= 0) or not np.all(np.isfinite(a)):
        raise DegenerateBox(f"box sides must be positive, got {a}")
    pts = _face_points(samples, seed)
    for axis in range(3):
        others = [i for i in range(3) if i != axis]
        coords = np.empty((samples, 3))
        coords[:, others[0]] = pts[:, 0] * a[others[0]]
        coords[:, others[1]] = pts[:, 1] * a[others[1]]
        for side, want_positive in ((0.0, True), (a[axis], False)):
            coords[:, axis] = side
            for row in coords:
                fn = reaction_rhs(p, row)[axis]
                if want_positive and not fn > 0.0:
                    return False
                if not want_positive and not fn < 0.0:
                    return False
    return True
