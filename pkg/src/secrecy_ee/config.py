"""JSON scenario files.

Powers carry an explicit unit suffix, exactly one per quantity::

    {"p_s_db": 10, "p_t_db": 10, "p_c_db": 5, "n_r": 100, "w": 10000,
     "rho": 0.9, "epsilon": 0.05, "alpha_sr": 1, "alpha_rd": 1, "alpha_re": 1.5,
     "solver": {"l_max": 50}}

dB values are converted with 10**(x/10) at parse time.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .errors import ConfigError, SecrecyEEError
from .model import SystemParams, db_to_linear
from .optimizer import SolverConfig

POWER_FIELDS = ("p_s", "p_t", "p_c")
PLAIN_FIELDS = ("n_r", "w", "rho", "epsilon", "alpha_sr", "alpha_rd", "alpha_re")
SOLVER_FIELDS = ("l_max", "delta", "theta_step", "theta_max_iters", "root_tol", "inner", "q_init")


def _number(key: str, v: Any) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {v!r}")
    if not math.isfinite(v):
        raise ConfigError(f"{key}: expected a finite number, got {v!r}")
    return v


def params_from_dict(doc: dict) -> SystemParams:
    if not isinstance(doc, dict):
        raise ConfigError("scenario must be a JSON object")
    known = {f"{p}_{u}" for p in POWER_FIELDS for u in ("db", "linear")} | set(PLAIN_FIELDS)
    unknown = set(doc) - known - {"solver"}
    if unknown:
        raise ConfigError(f"unknown scenario keys: {sorted(unknown)}")
    values: dict[str, Any] = {}
    for p in POWER_FIELDS:
        db_key, lin_key = f"{p}_db", f"{p}_linear"
        present = [k for k in (db_key, lin_key) if k in doc]
        if len(present) != 1:
            raise ConfigError(f"give exactly one of {db_key!r} or {lin_key!r}")
        if db_key in doc:
            values[p] = db_to_linear(_number(db_key, doc[db_key]))
        else:
            values[p] = float(_number(lin_key, doc[lin_key]))
    for f in PLAIN_FIELDS:
        if f not in doc:
            raise ConfigError(f"missing scenario key {f!r}")
        values[f] = _number(f, doc[f])
    if isinstance(values["n_r"], float):
        if values["n_r"] != int(values["n_r"]):
            raise ConfigError(f"n_r: expected an integer, got {values['n_r']!r}")
        values["n_r"] = int(values["n_r"])
    for f in PLAIN_FIELDS:
        if f != "n_r":
            values[f] = float(values[f])
    try:
        return SystemParams(**values)
    except SecrecyEEError as exc:
        raise ConfigError(str(exc)) from exc


def solver_from_dict(doc: dict | None) -> SolverConfig:
    if doc is None:
        return SolverConfig()
    if not isinstance(doc, dict):
        raise ConfigError("'solver' must be a JSON object")
    unknown = set(doc) - set(SOLVER_FIELDS)
    if unknown:
        raise ConfigError(f"unknown solver keys: {sorted(unknown)}")
    try:
        return SolverConfig(**doc)
    except (SecrecyEEError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid solver settings: {exc}") from exc


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: malformed JSON: {exc}") from exc


def load_scenario(path: str | Path) -> tuple[SystemParams, SolverConfig]:
    doc = load_json(path)
    params = params_from_dict(doc)
    return params, solver_from_dict(doc.get("solver"))


def params_to_dict(params: SystemParams) -> dict:
    """Linear-unit form that re-parses to the identical SystemParams."""
    return {
        "p_s_linear": params.p_s,
        "p_t_linear": params.p_t,
        "p_c_linear": params.p_c,
        "n_r": params.n_r,
        "w": params.w,
        "rho": params.rho,
        "epsilon": params.epsilon,
        "alpha_sr": params.alpha_sr,
        "alpha_rd": params.alpha_rd,
        "alpha_re": params.alpha_re,
    }


def dump_scenario(params: SystemParams) -> str:
    # json emits repr() floats, which round-trip exactly
    return json.dumps(params_to_dict(params), indent=2) + "\n"
