"""Parameter sweeps and CSV output for the convergence / comparison tables."""
from __future__ import annotations

import csv
import enum
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from . import model, optimizer
from .config import load_json, params_from_dict, solver_from_dict
from .errors import ConfigError, SecrecyEEError
from .model import SystemParams
from .montecarlo import worker_count
from .optimizer import SolverConfig

SWEEP_COLUMNS = (
    "variable",
    "value",
    "scheme",
    "p_r_opt_linear",
    "p_r_opt_db",
    "q_bit_per_joule",
    "c_soc_bit_per_s",
    "iterations",
    "converged",
    "feasible",
)
TRACE_COLUMNS = ("p_s_db", "iteration", "p_r", "q")


class Variable(str, enum.Enum):
    ALPHA_RE = "alpha_re"
    P_S_DB = "p_s_db"
    N_R = "n_r"


class Scheme(str, enum.Enum):
    ENERGY_EFFICIENT = "energy_efficient"
    CAPACITY_MAX = "capacity_max"


@dataclass(frozen=True)
class SweepSpec:
    variable: Variable
    values: tuple
    base: SystemParams
    schemes: tuple[Scheme, ...] = (Scheme.ENERGY_EFFICIENT, Scheme.CAPACITY_MAX)
    solver: SolverConfig = field(default_factory=SolverConfig)
    warm_start: bool = False

    def __post_init__(self):
        object.__setattr__(self, "variable", Variable(self.variable))
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "schemes", tuple(Scheme(s) for s in self.schemes))
        if not self.values:
            raise ConfigError("sweep values must be non-empty")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ConfigError("sweep values must be strictly increasing")
        if not self.schemes or len(set(self.schemes)) != len(self.schemes):
            raise ConfigError("schemes must be a non-empty set")
        for v in self.values:
            try:
                self.params_at(v)
            except SecrecyEEError as exc:
                raise ConfigError(f"sweep value {v!r} is invalid: {exc}") from exc

    def params_at(self, value) -> SystemParams:
        if self.variable is Variable.ALPHA_RE:
            return replace(self.base, alpha_re=float(value))
        if self.variable is Variable.P_S_DB:
            return replace(self.base, p_s=model.db_to_linear(value))
        if int(value) != value:
            raise ConfigError(f"n_r sweep values must be integers, got {value!r}")
        return replace(self.base, n_r=int(value))


@dataclass(frozen=True)
class SweepRow:
    variable: str
    value: float
    scheme: str
    p_r_opt: float | None
    q: float | None
    c_soc: float | None
    iterations: int | None
    converged: bool | None
    feasible: bool

    @property
    def p_r_opt_db(self) -> float | None:
        return None if self.p_r_opt is None else model.linear_to_db(self.p_r_opt)


def load_sweep_spec(path) -> SweepSpec:
    doc = load_json(path)
    if not isinstance(doc, dict):
        raise ConfigError("sweep spec must be a JSON object")
    unknown = set(doc) - {"variable", "values", "base", "schemes", "solver", "warm_start"}
    if unknown:
        raise ConfigError(f"unknown sweep keys: {sorted(unknown)}")
    for key in ("variable", "values", "base"):
        if key not in doc:
            raise ConfigError(f"missing sweep key {key!r}")
    if not isinstance(doc["values"], list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in doc["values"]
    ):
        raise ConfigError("'values' must be a list of numbers")
    base = doc["base"]
    params = params_from_dict(base)
    solver = solver_from_dict(doc.get("solver", base.get("solver") if isinstance(base, dict) else None))
    try:
        return SweepSpec(
            variable=doc["variable"],
            values=doc["values"],
            base=params,
            schemes=doc.get("schemes", [s.value for s in Scheme]),
            solver=solver,
            warm_start=bool(doc.get("warm_start", False)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _evaluate_point(spec: SweepSpec, value, q_init: float = 0.0) -> list[SweepRow]:
    params = spec.params_at(value)
    var = spec.variable.value
    co = model.derive_coefficients(params)
    if not co.feasible:
        return [SweepRow(var, value, s.value, None, None, None, None, None, False) for s in spec.schemes]
    rows = []
    for scheme in spec.schemes:
        if scheme is Scheme.ENERGY_EFFICIENT:
            cfg = replace(spec.solver, q_init=q_init) if q_init else spec.solver
            res = optimizer.dinkelbach_solve(params, cfg)
            p, iters, conv = res.p_r_opt, res.iterations, res.converged
            q = res.q_opt
        else:
            p = optimizer.capacity_max_allocation(params)
            iters, conv = None, None
            q = model.secrecy_energy_efficiency(p, params)
        rows.append(SweepRow(var, value, scheme.value, p, q, model.secrecy_outage_capacity(p, params),
                             iters, conv, True))
    return rows


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Rows ordered by sweep value, then scheme, whatever the evaluation order."""
    if spec.warm_start:
        # sequential so each point can seed the next; unsafe seeds are
        # discarded inside dinkelbach_solve
        rows: list[SweepRow] = []
        q_prev = 0.0
        for v in spec.values:
            point = _evaluate_point(spec, v, q_prev)
            rows.extend(point)
            ee = [r for r in point if r.scheme == Scheme.ENERGY_EFFICIENT.value and r.feasible]
            q_prev = ee[0].q if ee else 0.0
        return rows
    workers = min(worker_count(), len(spec.values))
    if workers <= 1:
        chunks = [_evaluate_point(spec, v) for v in spec.values]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda v: _evaluate_point(spec, v), spec.values))
    return [row for chunk in chunks for row in chunk]


def trace_rows(base: SystemParams, p_s_db_values: Sequence[float], cfg: SolverConfig | None = None):
    """Convergence traces, one block per source power.

    Raises InfeasibleScenarioError before producing anything if any source
    power is infeasible.
    """
    results = []
    for db in p_s_db_values:
        params = replace(base, p_s=model.db_to_linear(db))
        results.append((db, optimizer.dinkelbach_solve(params, cfg)))
    return results


def fmt(v) -> str:
    """Shortest round-trip text for floats, empty for missing fields."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def sweep_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in rows:
        w.writerow([fmt(x) for x in (
            r.variable, float(r.value) if r.variable != "n_r" else int(r.value), r.scheme,
            r.p_r_opt, r.p_r_opt_db, r.q, r.c_soc, r.iterations, r.converged, r.feasible,
        )])
    return buf.getvalue()


def trace_csv(results) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRACE_COLUMNS)
    for db, res in results:
        for tp in res.trace:
            w.writerow([fmt(float(db)), tp.iteration, fmt(tp.p_r), fmt(tp.q)])
    return buf.getvalue()

