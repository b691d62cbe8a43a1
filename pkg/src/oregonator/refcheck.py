"""Reproduction of the published worked-example chain for this model.

Each row evaluates one published formula at the published upstream
values and compares against the published output at a stated tolerance.
The published chain rounds aggressively between stages (e.g. its
delta0 = 71.67 comes from the rounded a, b, c, and its B = a delta0 - b
is two orders more sensitive than the rounding), so rows feed printed
values downstream rather than full-precision recomputations; the
full-precision values are reported in the deviations section.  Known
misprints in the source table (the sigma value, the F2 exponent, the
control-parameter exponent) are reported as documented deviations, never
as failures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .critical import delta0_from_abc, abc_numbers
from .equilibria import sigma_root
from .params import ChemKinetics, NondimParams, delta_candidates, nondimensionalize
from .transition import hopf_chain

REFERENCE_KINETICS = ChemKinetics(
    k1=1.34, k2=1.6e9, k3=8e3, k4=4e7, k5=1.0,
    a=6e-2, b=6e-2, gamma=1.0,
    sigma1=1e-5, sigma2=1e-5, sigma3=1e-5, length=1.0)

SIGMA_OVERRIDE = 700.0
REF_ALPHA = 77.27
REF_BETA = 8.375e-6
REF_ABC = (9.74, 690.79, 8.21)
REF_DELTA0 = 71.67

# published one-significant-figure chain table
REF_TABLE = {
    "D3": 5e4, "D4": 4e2, "D5": 80.0, "D6": 3e7, "D7": -6e-3, "D8": 4.0,
    "E": 4e21, "D0": 1.3e-2, "F1": 8.3e-9, "F3": -8.4e-10,
}

# published reduced spatial-crossing law and its mode grid
DELTA1_LAW = (47.7, -12.5)          # delta1 ~ 47.7 z - 12.5
DELTA1_X_GRID = [0.875 * (k - 1) ** 2 for k in range(2, 10)]
FLIP_Z = 1.8

DETMJ_TREND = (-1.5e4, 4.9e3)       # det Mj ~ -1.5e4 z + 4.9e3


@dataclass
class Row:
    name: str
    computed: float
    expected: float
    tol: float
    kind: str          # abs | rel
    passed: bool = False

    def check(self) -> "Row":
        if self.kind == "abs":
            self.passed = abs(self.computed - self.expected) <= self.tol
        else:
            self.passed = (abs(self.computed - self.expected)
                           <= self.tol * abs(self.expected))
        return self


@dataclass
class ReferenceReport:
    rows: list = field(default_factory=list)
    deviations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "rows": [{"name": r.name, "computed": r.computed,
                      "expected": r.expected, "tol": r.tol, "kind": r.kind,
                      "passed": r.passed} for r in self.rows],
            "documented_deviations": self.deviations,
        }


def reference_params(delta: float = REF_DELTA0) -> NondimParams:
    """Nondimensional point of the worked example, at printed precision."""
    return NondimParams(mu1=1.0, mu2=1.0, mu3=1.0,
                        alpha=REF_ALPHA, beta=REF_BETA, gamma=1.0, delta=delta)


def reduced_bracket(z: float, x: float) -> float:
    """Published reduced form of the spatial-crossing bracket for the
    worked example family (mu1 = mu2, mu3 = z mu1, x = mu1 rho)."""
    return 691.0 * z / (10.0 + x) - 589.0 / ((10.0 + x) * x) - x * z


def reduced_delta1(z: float) -> tuple:
    vals = [(reduced_bracket(z, x), x) for x in DELTA1_X_GRID]
    return max(vals)


def flip_z_value(delta0: float = REF_DELTA0) -> float:
    """Diffusivity ratio at which the steady crossing overtakes the Hopf
    crossing under the published reduced law (grid-max bisection)."""
    lo, hi = 1.0, 4.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if reduced_delta1(mid)[0] > delta0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def published_mj(z: float, delta1: float) -> np.ndarray:
    """The double-frequency spectral block exactly as tabulated in the
    worked example (entries carry the source's own roundings)."""
    return np.array([
        [-14.7, -5.4e4, 0.0],
        [-1.25e-2, -26.5, 1.25e-2],
        [delta1, 0.0, -(14.0 * z + delta1)],
    ])


def run_reference_check(expected_overrides: dict | None = None) -> ReferenceReport:
    """Run the whole chain and return the row-by-row report.

    ``expected_overrides`` replaces expected values by name (used to
    demonstrate that tampered fixtures fail loudly).
    """
    exp = {
        "alpha": REF_ALPHA, "beta": REF_BETA,
        "a": REF_ABC[0], "b": REF_ABC[1], "c": REF_ABC[2],
        "delta0": REF_DELTA0,
        "A": 81.41, "B": 7.27, "C": 588.41, "rho": 2.70,
    }
    exp.update({f"table.{k}": v for k, v in REF_TABLE.items()})
    for z in (2.0, 3.0):
        exp[f"delta1(z={z:g})"] = DELTA1_LAW[0] * z + DELTA1_LAW[1]
        exp[f"detMj(z={z:g})"] = DETMJ_TREND[0] * z + DETMJ_TREND[1]
    exp["flip_z"] = FLIP_Z
    if expected_overrides:
        unknown = set(expected_overrides) - set(exp)
        if unknown:
            raise KeyError(f"unknown fixture names: {sorted(unknown)}")
        exp.update(expected_overrides)

    rows = []

    def add(name, computed, tol, kind):
        rows.append(Row(name, float(computed), float(exp[name]), tol, kind).check())

    nd = nondimensionalize(REFERENCE_KINETICS)
    add("alpha", nd.alpha, 0.01, "abs")
    add("beta", nd.beta, 1e-3, "rel")

    p_ref = reference_params()
    a_c, b_c, c_c = abc_numbers(p_ref, SIGMA_OVERRIDE)
    add("a", a_c, 0.02, "abs")
    add("b", b_c, 0.05, "abs")
    add("c", c_c, 0.02, "abs")

    a_p, b_p, c_p = REF_ABC
    add("delta0", delta0_from_abc(a_p, b_p, c_p), 0.05, "abs")

    big_a = a_p + REF_DELTA0
    big_b = a_p * REF_DELTA0 - b_p
    big_c = REF_DELTA0 * c_p
    add("A", big_a, 0.02, "abs")
    add("B", big_b, 0.02, "abs")
    add("C", big_c, 0.5, "abs")
    add("rho", math.sqrt(big_b), 0.01, "abs")

    chain = hopf_chain(p_ref, SIGMA_OVERRIDE, delta0=REF_DELTA0, abc=REF_ABC)
    for key in REF_TABLE:
        add(f"table.{key}", getattr(chain, key), 0.05, "rel")

    for z in (2.0, 3.0):
        val, _x = reduced_delta1(z)
        add(f"delta1(z={z:g})", val, 0.02, "rel")
        d1 = DELTA1_LAW[0] * z + DELTA1_LAW[1]
        add(f"detMj(z={z:g})", np.linalg.det(published_mj(z, d1)), 0.10, "rel")
    add("flip_z", flip_z_value(), 0.05, "abs")

    deviations = [
        {"name": "sigma", "published": 700.0,
         "computed": sigma_root(p_ref),
         "note": "the defining quadratic at the published beta, gamma gives "
                 "a different root; downstream rows are conditional on the "
                 "published 700"},
        {"name": "F2", "published": -2.6e-7, "computed": chain.F2,
         "note": "published exponent is off by one decade relative to its "
                 "own chain; excluded from the gated rows"},
        {"name": "delta_exponent", "published": 6.21,
         "computed": delta_candidates(REFERENCE_KINETICS)["time_scaled"],
         "note": "the scaling line matches the +1/2 exponent "
                 f"({delta_candidates(REFERENCE_KINETICS)['as_printed']:.4g}) "
                 "but only the -1/2 exponent is dimensionless; the package "
                 "adopts -1/2"},
        {"name": "delta0_full_precision",
         "published": REF_DELTA0,
         "computed": delta0_from_abc(a_c, b_c, c_c),
         "note": "closed form at unrounded (a, b, c); the gated delta0 row "
                 "feeds the published rounded values instead"},
        {"name": "b1_hopf", "published": float("nan"), "computed": chain.b1,
         "note": "negative, so the bifurcating cycle is attracting, "
                 "matching the published conclusion; magnitude is "
                 "basis-dependent and not gated"},
    ]
    return ReferenceReport(rows=rows, deviations=deviations)


def format_report(report: ReferenceReport) -> str:
    lines = []
    lines.append(f"{'row':<16} {'reference':>14} {'computed':>14} "
                 f"{'tolerance':>12} verdict")
    for r in report.rows:
        tol = f"{r.tol:g}{'rel' if r.kind == 'rel' else ''}"
        lines.append(f"{r.name:<16} {r.expected:>14.6g} {r.computed:>14.6g} "
                     f"{tol:>12} {'pass' if r.passed else 'FAIL'}")
    lines.append("")
    lines.append("documented deviations (informational, never gated):")
    for d in report.deviations:
        pub = d["published"]
        pub_s = "-" if pub != pub else f"{pub:.6g}"
        lines.append(f"  {d['name']:<22} published {pub_s:>12} "
                     f"computed {d['computed']:>14.6g}")
        lines.append(f"      {d['note']}")
    lines.append("")
    lines.append("result: " + ("all gated rows pass" if report.passed
                               else "GATED ROW FAILURE"))
    return "\n".join(lines)
