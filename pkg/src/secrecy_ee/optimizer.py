"""Energy-efficient relay power allocation.

Dinkelbach outer loop on the ratio C_soc(P) / (P_S + P + 2 P_C), with the
parametric subproblem max C_soc(P) - q (P_S + P + 2 P_C) over (0, P_min]
solved from its stationarity condition.  C_soc is concave up to its peak,
so the subproblem optimum is the root of C'(P) = q clamped to P_min.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from . import model
from .errors import InfeasibleScenarioError, InvalidParamsError, NoPositiveSolutionError
from .model import SystemParams

_BRACKET_LO = 1e-12


class InnerStrategy(str, enum.Enum):
    BISECTION = "bisection"
    DUAL_ASCENT = "dual_ascent"


class ActiveConstraint(str, enum.Enum):
    INTERIOR = "interior"
    POWER_CAPPED = "power-capped"


@dataclass(frozen=True)
class SolverConfig:
    """Solver knobs.

    ``delta=None`` means 1e-6 * W, so the stopping rule does not depend on
    the bandwidth's scale.  ``root_tol`` is relative to P_min.
    """

    l_max: int = 50
    delta: float | None = None
    theta_step: float = 1e-3
    theta_max_iters: int = 10_000
    root_tol: float = 1e-10
    inner: InnerStrategy = InnerStrategy.BISECTION
    q_init: float = 0.0

    def __post_init__(self):
        if int(self.l_max) != self.l_max or self.l_max < 1:
            raise InvalidParamsError(f"l_max must be an integer >= 1, got {self.l_max!r}")
        if self.delta is not None and not self.delta > 0:
            raise InvalidParamsError(f"delta must be > 0, got {self.delta!r}")
        if not self.theta_step > 0:
            raise InvalidParamsError(f"theta_step must be > 0, got {self.theta_step!r}")
        if int(self.theta_max_iters) != self.theta_max_iters or self.theta_max_iters < 1:
            raise InvalidParamsError(
                f"theta_max_iters must be an integer >= 1, got {self.theta_max_iters!r}"
            )
        if not self.root_tol > 0:
            raise InvalidParamsError(f"root_tol must be > 0, got {self.root_tol!r}")
        if not (math.isfinite(self.q_init) and self.q_init >= 0):
            raise InvalidParamsError(f"q_init must be finite and >= 0, got {self.q_init!r}")
        object.__setattr__(self, "inner", InnerStrategy(self.inner))

    def resolved_delta(self, params: SystemParams) -> float:
        return 1e-6 * params.w if self.delta is None else self.delta


@dataclass(frozen=True)
class TracePoint:
    iteration: int
    p_r: float
    q: float


@dataclass
class AllocationResult:
    p_r_opt: float
    q_opt: float
    iterations: int
    converged: bool
    trace: list[TracePoint] = field(default_factory=list)
    active_constraint: ActiveConstraint = ActiveConstraint.INTERIOR
    p_min: float = math.nan


def _feasible_coefficients(params: SystemParams) -> model.DerivedCoefficients:
    co = model.derive_coefficients(params)
    if not co.feasible:
        raise InfeasibleScenarioError(co.r_l)
    return co


def effective_power_cap(params: SystemParams) -> float:
    """P_min = min(P_T, p_peak); the efficiency optimum lies in (0, P_min]."""
    co = _feasible_coefficients(params)
    return min(params.p_t, co.p_peak)


def capacity_max_allocation(params: SystemParams) -> float:
    """Relay power maximizing C_soc under the cap (baseline scheme)."""
    co = _feasible_coefficients(params)
    return min(params.p_t, co.p_peak)


def _bisect_decreasing(f, lo: float, hi: float, tol: float) -> float:
    """Root of a strictly decreasing f with f(lo) > 0 > f(hi)."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _stationary_point(target: float, upper: float, params: SystemParams, tol: float) -> float:
    """Solve C'(P) = target on (0, upper], clamping to ``upper``.

    ``upper`` must not exceed p_peak, where C' is strictly decreasing.
    """
    if model.capacity_derivative(upper, params) >= target:
        return upper
    lo = _BRACKET_LO * upper
    if model.capacity_derivative(lo, params) <= target:
        raise NoPositiveSolutionError(
            f"q = {target!r} exceeds the supremum of C'(P) "
            f"({model.capacity_derivative_at_zero(params)!r}); no positive stationary point"
        )
    return _bisect_decreasing(
        lambda p: model.capacity_derivative(p, params) - target, lo, upper, tol * upper
    )


def theta_update(theta: float, p_r: float, p_min: float, cfg: SolverConfig) -> float:
    """Projected subgradient step on the multiplier of P_R <= P_min."""
    return max(0.0, theta - cfg.theta_step * (p_min - p_r))


def _solve_inner_dual(q: float, p_min: float, params: SystemParams, cfg: SolverConfig) -> float:
    co = model.derive_coefficients(params)
    theta = 0.0
    p = p_min
    for _ in range(cfg.theta_max_iters):
        p = _stationary_point(q + theta, co.p_peak, params, cfg.root_tol)
        new_theta = theta_update(theta, p, p_min, cfg)
        if new_theta == 0.0 and p <= p_min:
            break
        if abs(new_theta - theta) <= cfg.root_tol * max(1.0, theta) and p <= p_min * (1 + cfg.root_tol):
            break
        theta = new_theta
    # primal recovery: a fixed-step dual iterate may sit slightly outside the box
    return min(p, p_min)


def solve_inner(q: float, params: SystemParams, cfg: SolverConfig | None = None) -> float:
    """Maximizer of C_soc(P) - q (P_S + P + 2 P_C) over (0, P_min]."""
    cfg = cfg or SolverConfig()
    if not q >= 0:
        raise InvalidParamsError(f"q must be >= 0, got {q!r}")
    p_min = effective_power_cap(params)
    if cfg.inner is InnerStrategy.DUAL_ASCENT:
        return _solve_inner_dual(q, p_min, params, cfg)
    return _stationary_point(q, p_min, params, cfg.root_tol)


def parametric_objective(p_r: float, q: float, params: SystemParams) -> float:
    """C_soc(P) - q (P_S + P + 2 P_C)."""
    return model.secrecy_outage_capacity(p_r, params) - q * model.efficiency_denominator(p_r, params)


def dinkelbach_solve(params: SystemParams, cfg: SolverConfig | None = None) -> AllocationResult:
    """Maximize the secrecy energy efficiency over the relay power.

    Raises InfeasibleScenarioError when r_l >= 1.  If ``l_max`` is exhausted
    the best iterate is returned with ``converged=False``.
    """
    cfg = cfg or SolverConfig()
    p_min = effective_power_cap(params)
    delta = cfg.resolved_delta(params)

    q = cfg.q_init
    if q > 0 and parametric_objective(solve_inner(q, params, cfg), q, params) < 0:
        # warm start above the optimum would terminate at a wrong point
        q = 0.0

    trace: list[TracePoint] = []
    converged = False
    p_prime = p_min
    for n in range(1, cfg.l_max + 1):
        p_prime = solve_inner(q, params, cfg)
        gap = parametric_objective(p_prime, q, params)
        q_new = model.secrecy_energy_efficiency(p_prime, params)
        trace.append(TracePoint(n, p_prime, q_new))
        if gap < delta:
            converged = True
            break
        q = q_new

    best = max(trace, key=lambda t: t.q) if not converged else trace[-1]
    capped = best.p_r >= p_min * (1.0 - cfg.root_tol)
    return AllocationResult(
        p_r_opt=best.p_r,
        q_opt=best.q,
        iterations=len(trace),
        converged=converged,
        trace=trace,
        active_constraint=ActiveConstraint.POWER_CAPPED if capped else ActiveConstraint.INTERIOR,
        p_min=p_min,
    )
