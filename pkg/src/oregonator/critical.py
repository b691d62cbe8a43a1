"""Critical control values delta0 (uniform Hopf) and delta1 (spatial
steady crossing), and the transition-scenario selection.

delta0 is the positive root of A(delta) B(delta) - C(delta) = 0 for the
uniform-mode cubic, available in closed form from the auxiliary numbers
(a, b, c).  delta1 is the largest control value at which some nonzero
mode's block becomes singular (its C_k vanishes); since C_k is linear in
delta, each mode contributes an exact crossing value and delta1 is their
maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.optimize import minimize_scalar

from .errors import ModeCapTooSmall
from .params import NondimParams

HOPF = "HopfAtDelta0"
STEADY = "SteadyAtDelta1"
NONE = "NoTransition"


def abc_numbers(p: NondimParams, sigma: float) -> tuple:
    """Auxiliary numbers (a, b, c) of the uniform-mode cubic:
    A = delta + a, B = a delta - b, C = delta c."""
    s = sigma
    a = 0.5 * p.alpha * (3.0 * p.beta * s + p.gamma - 1.0) + (s + 1.0) / p.alpha
    b = (1.0 - p.beta) * s - 2.0 * p.beta * s * s - p.gamma
    c = s * (2.0 * p.beta * s + p.beta + p.gamma - 1.0)
    return a, b, c


def delta0_from_abc(a: float, b: float, c: float) -> float | None:
    """Closed-form positive root of AB - C = 0; None when b <= 0.

    Uses the conjugate form when c + b - a^2 < 0 to avoid cancellation.
    """
    if b <= 0.0:
        return None
    r = c + b - a * a
    disc = math.sqrt(r * r + 4.0 * a * a * b)
    if r >= 0.0:
        return (r + disc) / (2.0 * a)
    return 2.0 * a * b / (disc - r)


def delta0(p: NondimParams, sigma: float) -> float | None:
    a, b, c = abc_numbers(p, sigma)
    return delta0_from_abc(a, b, c)


def _q_number(p: NondimParams, sigma: float) -> float:
    # diffusivity-weighted combination entering every spatial-mode formula
    p1 = 0.5 * p.alpha * (3.0 * p.beta * sigma + p.gamma - 1.0)
    p2 = (sigma + 1.0) / p.alpha
    return p2 * p.mu1 + p1 * p.mu2


def mode_crossing_delta(p: NondimParams, sigma: float, rho: float) -> float:
    """Control value at which mode rho's block loses its zero-free
    determinant: the exact solution of C_k(delta) = 0 (linear in delta)."""
    if rho <= 0.0:
        raise ValueError("rho must be positive")
    a, b, c = abc_numbers(p, sigma)
    q = _q_number(p, sigma)
    s_poly = q * rho + p.mu1 * p.mu2 * rho * rho
    return p.mu3 * rho * (b - s_poly) / (c + s_poly)


def printed_bracket(p: NondimParams, sigma: float, rho: float,
                    big_c: float) -> float:
    """The published per-mode bracket with C frozen at a supplied value.

    Reproduces the worked-example reduction; the true crossing value is
    ``mode_crossing_delta``, which treats C's delta-dependence exactly.
    """
    a, b, c = abc_numbers(p, sigma)
    q = _q_number(p, sigma)
    s_poly = q * rho + p.mu1 * p.mu2 * rho * rho
    return (p.mu3 * rho * b - big_c) / s_poly - p.mu3 * rho


@dataclass
class Delta1Result:
    value: float
    k0: int                     # 1-based index of the maximizing mode
    rho_k0: float
    per_mode: list              # (index, rho, crossing delta)
    continuous_value: float     # relaxation over continuous rho (diagnostic)
    continuous_rho: float
    discretization_gap: float   # continuous max minus discrete max


def delta1(p: NondimParams, sigma: float, modes: list) -> Delta1Result:
    """Largest per-mode crossing value over the enumerated nonzero modes.

    Raises ModeCapTooSmall when the maximum sits on the last enumerated
    mode: the argmax may then lie beyond the enumeration.  The continuous
    relaxation over rho > 0 is attached as a discretization diagnostic.
    """
    spatial = [m for m in modes if m.rho > 0.0]
    if len(spatial) < 2:
        raise ValueError("need at least two nonzero-rho modes")
    per_mode = [(m.index, m.rho, mode_crossing_delta(p, sigma, m.rho))
                for m in spatial]
    best = max(per_mode, key=lambda t: (t[2], -t[0]))
    last_rho = max(t[1] for t in per_mode)
    if best[1] == last_rho:
        raise ModeCapTooSmall(
            f"delta1 argmax at the last enumerated mode (rho={best[1]:g}); "
            "increase mode_cap")
    res = minimize_scalar(lambda r: -mode_crossing_delta(p, sigma, r),
                          bounds=(per_mode[0][1] * 1e-3, last_rho),
                          method="bounded",
                          options={"xatol": 1e-10 * last_rho})
    cont_val, cont_rho = -float(res.fun), float(res.x)
    return Delta1Result(value=best[2], k0=best[0], rho_k0=best[1],
                        per_mode=per_mode, continuous_value=cont_val,
                        continuous_rho=cont_rho,
                        discretization_gap=cont_val - best[2])


@dataclass
class CriticalNumbers:
    """Everything the scenario decision needs, in one record."""

    a: float
    b: float
    c: float
    delta0: float | None
    delta1: float | None
    k0: int | None
    scenario: str
    degenerate: bool = False
    delta1_detail: Delta1Result | None = field(default=None, repr=False)


def scenario(p: NondimParams, sigma: float,
             modes: list | None = None) -> CriticalNumbers:
    """Assemble critical numbers and pick the transition scenario.

    b <= 0 means no transition at any delta.  With b > 0, the smaller of
    delta0/delta1 loses: the crossing happens at the larger one as delta
    decreases, i.e. Hopf when delta1 < delta0, steady when delta1 > delta0.
    Stirred runs (no spatial modes) always give the Hopf scenario.
    """
    a, b, c = abc_numbers(p, sigma)
    d0 = delta0_from_abc(a, b, c)
    if d0 is None:
        return CriticalNumbers(a, b, c, None, None, None, NONE)
    d1_detail = None
    if modes is not None and sum(m.rho > 0.0 for m in modes) >= 2:
        d1_detail = delta1(p, sigma, modes)
    if d1_detail is None:
        return CriticalNumbers(a, b, c, d0, None, None, HOPF)
    d1 = d1_detail.value
    degenerate = abs(d0 - d1) < 1e-6 * max(d0, d1)
    which = STEADY if d1 > d0 else HOPF
    return CriticalNumbers(a, b, c, d0, d1, d1_detail.k0, which,
                           degenerate=degenerate, delta1_detail=d1_detail)
