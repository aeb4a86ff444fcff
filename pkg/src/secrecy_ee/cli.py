"""``secrecy-ee`` command line.

Exit codes: 0 success, 2 bad input/config, 3 infeasible scenario,
4 optimizer did not converge.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import model, montecarlo, optimizer, sweep
from .config import dump_scenario, load_scenario
from .errors import ConfigError, InfeasibleScenarioError, InvalidInputError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_NOT_CONVERGED = 4

CALIBRATION_BAND = 0.02
MIN_SAMPLES = 1000


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _fail(code: int, msg: str) -> int:
    print(f"secrecy-ee: error: {msg}", file=sys.stderr)
    return code


def solve_report(params, cfg) -> dict:
    res = optimizer.dinkelbach_solve(params, cfg)
    co = model.derive_coefficients(params)
    return {
        "p_r_opt_linear": res.p_r_opt,
        "p_r_opt_db": model.linear_to_db(res.p_r_opt),
        "q_opt_bit_per_joule": res.q_opt,
        "c_soc_bit_per_s": model.secrecy_outage_capacity(res.p_r_opt, params),
        "iterations": res.iterations,
        "converged": res.converged,
        "active_constraint": res.active_constraint.value,
        "p_min_linear": res.p_min,
        "p_peak_linear": co.p_peak,
        "r_l": co.r_l,
    }


def cmd_solve(args) -> int:
    params, cfg = load_scenario(args.config)
    if args.dump_config:
        _write(dump_scenario(params), args.dump_config)
    report = solve_report(params, cfg)
    if args.json:
        _write(json.dumps(report, indent=2, sort_keys=True) + "\n", None)
    else:
        lines = [
            f"P_R*        = {report['p_r_opt_linear']:.6g} ({report['p_r_opt_db']:.4f} dB)",
            f"q*          = {report['q_opt_bit_per_joule']:.6g} bit/J",
            f"C_soc(P_R*) = {report['c_soc_bit_per_s']:.6g} bit/s",
            f"iterations  = {report['iterations']} (converged: {str(report['converged']).lower()})",
            f"constraint  = {report['active_constraint']} (P_min = {report['p_min_linear']:.6g})",
        ]
        _write("\n".join(lines) + "\n", None)
    return EXIT_OK if report["converged"] else EXIT_NOT_CONVERGED


def _parse_db_list(text: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ConfigError(f"--ps-db: {exc}") from exc
    if not vals:
        raise ConfigError("--ps-db needs at least one value")
    return vals


def cmd_trace(args) -> int:
    params, cfg = load_scenario(args.config)
    results = sweep.trace_rows(params, _parse_db_list(args.ps_db), cfg)
    _write(sweep.trace_csv(results), args.out)
    return EXIT_OK if all(r.converged for _, r in results) else EXIT_NOT_CONVERGED


def cmd_sweep(args) -> int:
    spec = sweep.load_sweep_spec(args.spec)
    _write(sweep.sweep_csv(sweep.run_sweep(spec)), args.out)
    return EXIT_OK


def validation_report(params, cfg, n_samples: int, seed: int, p_r: float | None = None) -> dict:
    if p_r is None:
        p_r = optimizer.dinkelbach_solve(params, cfg).p_r_opt
    closed = model.secrecy_outage_capacity(p_r, params)
    secrecy = montecarlo.sample_secrecy_capacities(p_r, params, n_samples, seed)
    outage = montecarlo.outage_from_samples(closed, secrecy)
    quantile = montecarlo.lower_quantile(secrecy.clip(min=0.0), params.epsilon)
    return {
        "p_r_linear": p_r,
        "epsilon": params.epsilon,
        "n_samples": n_samples,
        "seed": seed,
        "closed_form_c_soc_bit_per_s": closed,
        "empirical_quantile_c_soc_bit_per_s": quantile,
        "quantile_relative_gap": (quantile - closed) / closed,
        "empirical_outage": outage.p_out,
        "ci_halfwidth": outage.ci_halfwidth,
        "calibration_band": CALIBRATION_BAND,
        "pass": abs(outage.p_out - params.epsilon) <= CALIBRATION_BAND,
    }


def cmd_validate(args) -> int:
    if args.samples < MIN_SAMPLES:
        raise ConfigError(f"--samples must be >= {MIN_SAMPLES}, got {args.samples}")
    params, cfg = load_scenario(args.config)
    if args.p_r is not None and not args.p_r > 0:
        raise ConfigError(f"--p-r must be > 0, got {args.p_r}")
    report = validation_report(params, cfg, args.samples, args.seed, args.p_r)
    _write(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="secrecy-ee", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="optimal relay power for one scenario")
    p.add_argument("--config", required=True)
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--dump-config", metavar="PATH", help="write the parsed scenario in linear units")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("trace", help="Dinkelbach convergence traces per source power")
    p.add_argument("--config", required=True)
    p.add_argument("--ps-db", required=True, help="comma-separated source powers in dB")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("sweep", help="sweep alpha_re, p_s_db or n_r")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="Monte Carlo check of the closed form")
    p.add_argument("--config", required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p-r", type=float, default=None, help="relay power (default: optimal)")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, InvalidInputError) as exc:
        return _fail(EXIT_CONFIG, str(exc))
    except InfeasibleScenarioError as exc:
        return _fail(EXIT_INFEASIBLE, str(exc))


if __name__ == "__main__":
    sys.exit(main())
