"""Dimensional kinetics and their nondimensional reduction.

The model couples three species with five rate constants ``k1..k5``,
reservoir concentrations ``a``, ``b``, a stoichiometric factor ``gamma``
and per-species diffusivities.  Units are by convention (mole density M,
time s, length l); no unit-type system is enforced.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, asdict

from .errors import NonPositiveParameter

KINETICS_FIELDS = ("k1", "k2", "k3", "k4", "k5", "a", "b", "gamma",
                   "sigma1", "sigma2", "sigma3", "length")
NONDIM_FIELDS = ("mu1", "mu2", "mu3", "alpha", "beta", "gamma", "delta")


@dataclass(frozen=True)
class ChemKinetics:
    """Dimensional rate constants, reservoir concentrations, diffusivities.

    ``k1..k4``: M^-1 s^-1, ``k5``: s^-1, ``a``/``b``: M,
    ``sigma1..3``: l^2 s^-1, ``length``: l, ``gamma`` dimensionless.
    """

    k1: float
    k2: float
    k3: float
    k4: float
    k5: float
    a: float
    b: float
    gamma: float
    sigma1: float
    sigma2: float
    sigma3: float
    length: float

    def __post_init__(self):
        for name in KINETICS_FIELDS:
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise NonPositiveParameter(f"{name} must be a positive finite number, got {v!r}")
        if self.gamma > 10:
            warnings.warn(f"stoichiometric factor gamma={self.gamma:g} is far above order one",
                          stacklevel=2)


@dataclass(frozen=True)
class NondimParams:
    """The six shape parameters plus the control parameter delta."""

    mu1: float
    mu2: float
    mu3: float
    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        for name in NONDIM_FIELDS:
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise NonPositiveParameter(f"{name} must be a positive finite number, got {v!r}")

    def with_delta(self, delta: float) -> "NondimParams":
        """Copy with the control parameter replaced."""
        return NondimParams(self.mu1, self.mu2, self.mu3,
                            self.alpha, self.beta, self.gamma, float(delta))


def delta_candidates(chem: ChemKinetics) -> dict:
    """Both readings of the control parameter.

    The source text prints delta = k5 (k1 k3 a b)^{1/2}, which carries
    units of s^-2; the time scale t = (k1 k3 a b)^{-1/2} t' forces the
    dimensionless form k5 (k1 k3 a b)^{-1/2}.  Both are reported so the
    ambiguity stays visible; ``nondimensionalize`` adopts the
    dimensionless one.
    """
    prod = chem.k1 * chem.k3 * chem.a * chem.b
    return {
        "time_scaled": chem.k5 * prod ** -0.5,   # dimensionless; adopted
        "as_printed": chem.k5 * prod ** 0.5,     # matches the 1.035e2*a scaling line
    }


def nondimensionalize(chem: ChemKinetics, mu_rate_pair: str = "k1k2") -> NondimParams:
    """Reduce dimensional kinetics to the nondimensional parameter set.

    alpha = sqrt(k3 b / (k1 a)), beta = 2 k1 k4 a / (k2 k3 b),
    delta = k5 (k1 k3 a b)^(-1/2), mu_i = sigma_i / (L^2 sqrt(k1 k_x a b)).

    ``mu_rate_pair`` selects k_x in the mu scaling: ``"k1k2"`` (as
    printed) or ``"k1k3"`` (consistent with the time scale).
    """
    if mu_rate_pair not in ("k1k2", "k1k3"):
        raise ValueError(f"mu_rate_pair must be 'k1k2' or 'k1k3', got {mu_rate_pair!r}")
    kx = chem.k2 if mu_rate_pair == "k1k2" else chem.k3
    mu_scale = chem.length ** 2 * math.sqrt(chem.k1 * kx * chem.a * chem.b)
    alpha = math.sqrt(chem.k3 * chem.b / (chem.k1 * chem.a))
    beta = 2.0 * chem.k1 * chem.k4 * chem.a / (chem.k2 * chem.k3 * chem.b)
    delta = delta_candidates(chem)["time_scaled"]
    return NondimParams(
        mu1=chem.sigma1 / mu_scale,
        mu2=chem.sigma2 / mu_scale,
        mu3=chem.sigma3 / mu_scale,
        alpha=alpha,
        beta=beta,
        gamma=chem.gamma,
        delta=delta,
    )


def kinetics_from_dict(obj: dict) -> ChemKinetics:
    missing = [f for f in KINETICS_FIELDS if f not in obj]
    if missing:
        raise NonPositiveParameter(f"kinetics object missing fields: {', '.join(missing)}")
    extra = [f for f in obj if f not in KINETICS_FIELDS]
    if extra:
        raise NonPositiveParameter(f"kinetics object has unknown fields: {', '.join(extra)}")
    return ChemKinetics(**{f: float(obj[f]) for f in KINETICS_FIELDS})


def kinetics_from_json(text: str) -> ChemKinetics:
    return kinetics_from_dict(json.loads(text))


def nondim_from_dict(obj: dict) -> NondimParams:
    missing = [f for f in NONDIM_FIELDS if f not in obj]
    if missing:
        raise NonPositiveParameter(f"nondim object missing fields: {', '.join(missing)}")
    return NondimParams(**{f: float(obj[f]) for f in NONDIM_FIELDS})


def nondim_to_dict(p: NondimParams) -> dict:
    return asdict(p)


def nondim_to_json(p: NondimParams) -> str:
    return json.dumps(nondim_to_dict(p))
