"""Command-line entry point.

Subcommands: analyze | transition | simulate | sweep | paper-check.
Configuration is a JSON document (see config_schema.json); all outputs
are deterministic for a fixed config and seed.  Exit codes: 0 success,
1 usage/configuration error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import export, refcheck
from .critical import scenario as crit_scenario
from .equilibria import b_parameter, sigma_root, steady_states
from .errors import (BlowUp, ConfigError, IndeterminateType, OregonatorError,
                     ScenarioMismatch, SingularBlock, SingularEigenbasis,
                     SingularSolve)
from .params import (NondimParams, kinetics_from_dict, nondim_from_dict,
                     nondim_to_dict, nondimensionalize)
from .simulate import (InitialSpec, SimConfig, detect_cycle, integrate_ode,
                       integrate_pde, pde_point_series)
from .spectrum import Domain, cubic_coeffs, eigen3, hurwitz, laplace_modes, m_matrix
from .transition import classify_hopf, classify_steady, hopf_chain, steady_chain

SCHEMA_VERSION = "1"

NUMERICAL_ERRORS = (BlowUp, SingularBlock, SingularSolve, SingularEigenbasis,
                    IndeterminateType, ScenarioMismatch)


def _require(cond, message):
    if not cond:
        raise ConfigError(message)


def load_config(obj: dict) -> dict:
    """Validate the run configuration and resolve the parameter set."""
    _require(isinstance(obj, dict), "config root must be a JSON object")
    known = {"kinetics", "nondim", "domain", "sweep", "sim", "output",
             "overrides", "notes"}
    for key in obj:
        _require(key in known, f"unknown config field {key!r}")
    has_kin = "kinetics" in obj
    has_nd = "nondim" in obj
    _require(has_kin != has_nd,
             "exactly one of 'kinetics' or 'nondim' must be present")
    try:
        if has_kin:
            params = nondimensionalize(kinetics_from_dict(obj["kinetics"]))
        else:
            params = nondim_from_dict(obj["nondim"])
    except OregonatorError as exc:
        raise ConfigError(str(exc)) from exc

    cfg = {"params": params, "domain": None, "sweep": None, "sim": None,
           "output": obj.get("output"), "overrides": obj.get("overrides", {})}
    ov = cfg["overrides"]
    _require(isinstance(ov, dict), "'overrides' must be an object")
    for key in ov:
        _require(key in ("sigma", "abc", "delta0"),
                 f"unknown override {key!r}")
    if "abc" in ov:
        _require(isinstance(ov["abc"], list) and len(ov["abc"]) == 3,
                 "'overrides.abc' must be a 3-element array")

    if "domain" in obj:
        d = obj["domain"]
        _require(isinstance(d, dict) and "kind" in d and "lengths" in d,
                 "'domain' needs 'kind' and 'lengths'")
        try:
            cfg["domain"] = Domain(kind=d["kind"], lengths=tuple(d["lengths"]),
                                   mode_cap=int(d.get("mode_cap", 50)))
        except ValueError as exc:
            raise ConfigError(f"domain: {exc}") from exc

    if "sweep" in obj:
        s = obj["sweep"]
        _require(isinstance(s, dict), "'sweep' must be an object")
        for fieldname in ("delta_min", "delta_max", "steps"):
            _require(fieldname in s, f"sweep missing '{fieldname}'")
        _require(s["delta_min"] > 0 and s["delta_max"] > s["delta_min"],
                 "sweep bounds must be positive with delta_min < delta_max")
        _require(int(s["steps"]) >= 2, "sweep needs at least 2 steps")
        cfg["sweep"] = {"delta_min": float(s["delta_min"]),
                        "delta_max": float(s["delta_max"]),
                        "steps": int(s["steps"])}

    if "sim" in obj:
        s = obj["sim"]
        _require(isinstance(s, dict) and "model" in s and "t_end" in s,
                 "'sim' needs at least 'model' and 't_end'")
        init = s.get("initial", {})
        _require(isinstance(init, dict), "'sim.initial' must be an object")
        try:
            spec = InitialSpec(
                kind=init.get("kind", "near_u1"),
                amplitude=float(init.get("amplitude", 1e-3)),
                direction=tuple(init.get("direction", (1.0, 0.0, 0.0))),
                mode_index=int(init.get("mode_index", 1)),
                state=np.asarray(init["state"], dtype=float) if "state" in init else None,
                box=tuple(init["box"]) if "box" in init else None,
                seed=int(init.get("seed", 0)))
            cfg["sim"] = SimConfig(
                model=s["model"], t_end=float(s["t_end"]),
                grid=int(s.get("grid", 64)),
                dt_init=float(s.get("dt_init", 0.01)),
                abs_tol=float(s.get("abs_tol", 1e-9)),
                rel_tol=float(s.get("rel_tol", 1e-7)),
                sample_dt=float(s["sample_dt"]) if "sample_dt" in s else None,
                initial=spec)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"sim: {exc}") from exc
    return cfg


def effective_sigma(cfg: dict) -> tuple:
    p = cfg["params"]
    formula = sigma_root(p)
    override = cfg["overrides"].get("sigma")
    return (float(override) if override is not None else formula), formula


def cmd_analyze(cfg: dict) -> dict:
    p: NondimParams = cfg["params"]
    sigma, sigma_formula = effective_sigma(cfg)
    abc_override = cfg["overrides"].get("abc")
    modes = laplace_modes(cfg["domain"]) if cfg["domain"] else None
    crit = crit_scenario(p, sigma, modes)
    a, b, c = crit.a, crit.b, crit.c
    if abc_override is not None:
        from .critical import delta0_from_abc
        a, b, c = (float(v) for v in abc_override)
        d0 = delta0_from_abc(a, b, c)
    else:
        d0 = crit.delta0
    u0, u1 = steady_states(p)
    mode_rows = []
    if modes:
        for mode in modes:
            cc = cubic_coeffs(p, sigma, mode.rho)
            et = eigen3(m_matrix(p, sigma, mode.rho))
            mode_rows.append({"index": mode.index, "rho": mode.rho,
                              "A": cc.A, "B": cc.B, "C": cc.C,
                              "hurwitz": hurwitz(cc), "max_re": et.max_real})
    out = {
        "schema_version": SCHEMA_VERSION,
        "params": nondim_to_dict(p),
        "overrides_applied": dict(cfg["overrides"]),
        "sigma": sigma,
        "sigma_formula": sigma_formula,
        "steady_states": {"u0": [u0.u1, u0.u2, u0.u3],
                          "u1": [u1.u1, u1.u2, u1.u3]},
        "a": a, "b": b, "c": c,
        "delta0": d0,
        "delta1": crit.delta1,
        "k0": crit.k0,
        "scenario": crit.scenario if abc_override is None or b > 0 else "NoTransition",
        "degenerate": crit.degenerate,
        "modes": mode_rows,
    }
    return out


def cmd_transition(cfg: dict) -> dict:
    p: NondimParams = cfg["params"]
    sigma, _ = effective_sigma(cfg)
    overrides = cfg["overrides"]
    modes = laplace_modes(cfg["domain"]) if cfg["domain"] else None
    crit = crit_scenario(p, sigma, modes)
    if crit.scenario == "NoTransition":
        raise ScenarioMismatch("b <= 0: the uniform state is stable for "
                               "every control value; nothing to classify")
    if crit.scenario == "HopfAtDelta0":
        abc = tuple(float(v) for v in overrides["abc"]) if "abc" in overrides else None
        d0 = float(overrides["delta0"]) if "delta0" in overrides else None
        chain = hopf_chain(p, sigma, delta0=d0, abc=abc)
        report = classify_hopf(chain)
    else:
        chain = steady_chain(p, sigma, crit.delta1, crit.k0, cfg["domain"],
                             modes=modes)
        report = classify_steady(chain)
    out = report.to_dict()
    out["schema_version"] = SCHEMA_VERSION
    out["params"] = nondim_to_dict(p)
    out["overrides_applied"] = dict(overrides)
    out["sigma"] = sigma
    return out


def cmd_simulate(cfg: dict, out_path: str, fmt: str) -> dict:
    p: NondimParams = cfg["params"]
    sigma, _ = effective_sigma(cfg)
    sim: SimConfig = cfg["sim"]
    if sim is None:
        raise ConfigError("'sim' block required for the simulate command")
    if sim.model == "stirred_ode":
        traj = integrate_ode(p, sigma, sim)
        series = traj
    else:
        if cfg["domain"] is None:
            raise ConfigError("'domain' block required for spatial runs")
        traj = integrate_pde(p, sigma, cfg["domain"], sim)
        series = pde_point_series(traj, (0,) * cfg["domain"].ndim)
    diag = detect_cycle(series)
    diagnostics = {
        "schema_version": SCHEMA_VERSION,
        "params": nondim_to_dict(p),
        "sigma": sigma,
        "model": sim.model,
        "converged": diag.converged,
        "status": diag.status,
        "period": diag.period,
        "amplitude": diag.amplitude.tolist(),
        "crossings": diag.crossings,
        "transient_time": diag.transient_time,
        "events": traj.events,
    }
    if out_path:
        if fmt == "csv":
            export.write_trajectory_csv(out_path, traj)
        else:
            export.write_json(out_path, diagnostics)
        export.write_trajectory_binary(out_path + ".bin", traj)
    return diagnostics


def cmd_sweep(cfg: dict) -> str:
    p: NondimParams = cfg["params"]
    sigma, _ = effective_sigma(cfg)
    sw = cfg["sweep"]
    if sw is None:
        raise ConfigError("'sweep' block required for the sweep command")
    modes = laplace_modes(cfg["domain"]) if cfg["domain"] else None
    rhos = [m.rho for m in modes] if modes else [0.0]
    deltas = np.linspace(sw["delta_min"], sw["delta_max"], sw["steps"])
    lines = ["delta,max_re,verdict,marker"]
    prev_sign = None
    for d in deltas:
        max_re = max(eigen3(m_matrix(p, sigma, r, delta=d)).max_real
                     for r in rhos)
        verdict = "stable" if max_re < 0 else "unstable"
        sign = max_re < 0
        marker = "crossing" if prev_sign is not None and sign != prev_sign else ""
        prev_sign = sign
        lines.append(f"{d:.17g},{max_re:.17g},{verdict},{marker}")
    return "\n".join(lines) + "\n"


def _load_json_file(path: str) -> dict:
    import json
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: line {exc.lineno}, "
                          f"column {exc.colno}: {exc.msg}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="oregonator",
        description="Transition analysis and simulation of the three-species "
                    "Oregonator model")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, needs_config in (("analyze", True), ("transition", True),
                               ("simulate", True), ("sweep", True),
                               ("paper-check", False)):
        sp = sub.add_parser(name)
        if needs_config:
            sp.add_argument("--config", required=True, help="JSON config path")
        sp.add_argument("--out", default=None, help="output file path")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--modes", type=int, default=None,
                        help="override domain mode_cap")
        sp.add_argument("--sigma-override", type=float, default=None)
        sp.add_argument("--seed", type=int, default=None)
    return ap


def _write_or_print(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "paper-check":
            report = refcheck.run_reference_check()
            text = refcheck.format_report(report) + "\n"
            _write_or_print(text, args.out)
            if args.out:
                sys.stdout.write(text)
            return 0 if report.passed else 2

        cfg = load_config(_load_json_file(args.config))
        if args.sigma_override is not None:
            cfg["overrides"]["sigma"] = args.sigma_override
        if args.modes is not None and cfg["domain"] is not None:
            d = cfg["domain"]
            cfg["domain"] = Domain(kind=d.kind, lengths=d.lengths,
                                   mode_cap=args.modes)
        if args.seed is not None and cfg["sim"] is not None:
            cfg["sim"].initial.seed = args.seed

        if args.command == "analyze":
            _write_or_print(export.json_text(cmd_analyze(cfg)) + "\n", args.out)
        elif args.command == "transition":
            _write_or_print(export.json_text(cmd_transition(cfg)) + "\n", args.out)
        elif args.command == "sweep":
            _write_or_print(cmd_sweep(cfg), args.out)
        elif args.command == "simulate":
            diagnostics = cmd_simulate(cfg, args.out, args.format)
            sys.stdout.write(export.json_text(diagnostics) + "\n")
        return 0
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 1
    except NUMERICAL_ERRORS as exc:
        sys.stderr.write(f"numerical failure ({type(exc).__name__}): {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
