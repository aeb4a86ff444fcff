"""Closed-form secrecy outage capacity and secrecy energy efficiency.

All powers are linear and normalized to the unit noise variance at every
receiver.  Functions accept a scalar relay power or a NumPy array of relay
powers; scalars in give Python floats out.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

import numpy as np

from .errors import InvalidInputError, InvalidParamsError

LN2 = math.log(2.0)

# Below this distance from the feasibility boundary the capacity is evaluated
# as log2 of the single ratio g0 instead of a difference of two logs.
_BOUNDARY_BAND = 1e-3


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    if x <= 0:
        return -math.inf
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class SystemParams:
    """Static scenario of the two-hop relay link.

    Attributes
    ----------
    p_s, p_t, p_c : float
        Source transmit power, relay power cap and circuit power (linear).
    n_r : int
        Number of relay antennas.
    w : float
        Bandwidth in Hz.
    rho : float
        Correlation between estimated and true relay-destination CSI.
    epsilon : float
        Target secrecy outage probability.
    alpha_sr, alpha_rd, alpha_re : float
        Path losses source-relay, relay-destination, relay-eavesdropper.
    """

    p_s: float
    p_t: float
    p_c: float
    n_r: int
    w: float
    rho: float
    epsilon: float
    alpha_sr: float = 1.0
    alpha_rd: float = 1.0
    alpha_re: float = 1.5

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, bool) or not isinstance(v, (int, float, np.integer, np.floating)):
                raise InvalidParamsError(f"{f.name} must be a number, got {v!r}")
            if not math.isfinite(v):
                raise InvalidParamsError(f"{f.name} must be finite, got {v!r}")
        if int(self.n_r) != self.n_r:
            raise InvalidParamsError(f"n_r must be an integer, got {self.n_r!r}")
        object.__setattr__(self, "n_r", int(self.n_r))
        for name in ("p_s", "p_t", "w", "alpha_sr", "alpha_rd", "alpha_re"):
            if getattr(self, name) <= 0:
                raise InvalidParamsError(f"{name} must be > 0, got {getattr(self, name)!r}")
        if self.p_c < 0:
            raise InvalidParamsError(f"p_c must be >= 0, got {self.p_c!r}")
        if self.n_r < 1:
            raise InvalidParamsError(f"n_r must be >= 1, got {self.n_r!r}")
        if not 0 < self.rho <= 1:
            raise InvalidParamsError(f"rho must lie in (0, 1], got {self.rho!r}")
        if not 0 < self.epsilon < 1:
            raise InvalidParamsError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")

    @classmethod
    def reference_scenario(cls, p_s_db: float = 10.0, **overrides) -> "SystemParams":
        """Default evaluation scenario: N_R=100, W=10 kHz, rho=0.9,
        P_C=5 dB, P_T=10 dB, epsilon=0.05, alpha_SR=alpha_RD=1, alpha_RE=1.5."""
        base = cls(
            p_s=db_to_linear(p_s_db),
            p_t=db_to_linear(10.0),
            p_c=db_to_linear(5.0),
            n_r=100,
            w=10e3,
            rho=0.9,
            epsilon=0.05,
            alpha_sr=1.0,
            alpha_rd=1.0,
            alpha_re=1.5,
        )
        return replace(base, **overrides) if overrides else base

    def with_(self, **changes) -> "SystemParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class DerivedCoefficients:
    a: float
    b: float
    r_l: float
    p_peak: float

    @property
    def feasible(self) -> bool:
        return 0.0 < self.r_l < 1.0


def derive_coefficients(params: SystemParams) -> DerivedCoefficients:
    """Reduce the scenario to A, B, r_l and the capacity-peak relay power.

    Infeasible scenarios (r_l >= 1) are not rejected here; check
    ``.feasible``.
    """
    if not isinstance(params, SystemParams):
        raise InvalidParamsError(f"expected SystemParams, got {type(params).__name__}")
    a = params.rho * params.alpha_rd * params.n_r
    b = params.p_s * params.alpha_sr * params.n_r
    # r_l must depend on (alpha_re, epsilon) only through this product
    eve_loss = -params.alpha_re * math.log(params.epsilon)
    r_l = eve_loss / a
    p_peak = math.sqrt(r_l * (b + 1.0)) / (a * r_l)
    return DerivedCoefficients(a=a, b=b, r_l=r_l, p_peak=p_peak)


def _as_power(p_r, *, strict: bool = False) -> tuple[np.ndarray, bool]:
    arr = np.asarray(p_r, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"relay power must be finite, got {p_r!r}")
    if strict and np.any(arr <= 0):
        raise InvalidInputError(f"relay power must be > 0, got {p_r!r}")
    if np.any(arr < 0):
        raise InvalidInputError(f"relay power must be >= 0, got {p_r!r}")
    return arr, arr.ndim == 0


def _out(arr: np.ndarray, scalar: bool):
    return float(arr) if scalar else arr


def _capacity(x: np.ndarray, co: DerivedCoefficients, w: float) -> np.ndarray:
    # x = P_R * A
    b, r_l = co.b, co.r_l
    if abs(r_l - 1.0) < _BOUNDARY_BAND:
        # g0 - 1 = B (1 - r_l) x / ((x r_l + 1)(x + B + 1)), exact rearrangement
        g0_minus_1 = b * (1.0 - r_l) * x / ((x * r_l + 1.0) * (x + b + 1.0))
        return w * np.log1p(g0_minus_1) / LN2
    legit = np.log2(1.0 + x * b / (x + b + 1.0))
    eve = np.log2(1.0 + x * b / (x + (b + 1.0) / r_l))
    return w * legit - w * eve


def secrecy_outage_capacity(p_r, params: SystemParams):
    """Secrecy outage capacity in bit/s at relay power ``p_r``.

    Non-positive values in the infeasible regime are returned unclamped.
    """
    arr, scalar = _as_power(p_r)
    co = derive_coefficients(params)
    return _out(_capacity(arr * co.a, co, params.w), scalar)


def _derivative_terms(p: np.ndarray, co: DerivedCoefficients, w: float):
    a, b, r_l = co.a, co.b, co.r_l
    pa = p * a
    k = w / LN2 * b * (1.0 + b)
    legit = a / ((pa + b + 1.0) ** 2 + pa * b * (pa + b + 1.0))
    pra = pa * r_l
    eve = a * r_l / ((pra + b + 1.0) ** 2 + pa * b * r_l * (pra + b + 1.0))
    return k * legit, k * eve


def capacity_derivative(p_r, params: SystemParams):
    """dC_soc/dP_R in bit/s per unit power, for ``p_r > 0``."""
    arr, scalar = _as_power(p_r, strict=True)
    legit, eve = _derivative_terms(arr, derive_coefficients(params), params.w)
    return _out(legit - eve, scalar)


def capacity_derivative_scale(p_r, params: SystemParams):
    """Magnitude of the legitimate-branch term of the derivative.

    Both branch terms are positive and the derivative is their difference,
    so this is the natural yardstick for "approximately zero".
    """
    arr, scalar = _as_power(p_r, strict=True)
    legit, _ = _derivative_terms(arr, derive_coefficients(params), params.w)
    return _out(legit, scalar)


def capacity_derivative_at_zero(params: SystemParams) -> float:
    """Right limit of the derivative at P_R = 0: (W/ln2) A B (1 - r_l) / (B + 1)."""
    co = derive_coefficients(params)
    return params.w / LN2 * co.a * co.b * (1.0 - co.r_l) / (co.b + 1.0)


def total_power(p_r, params: SystemParams):
    """Total consumed power P_S/2 + P_R/2 + P_C (each node transmits for half the frame)."""
    arr, scalar = _as_power(p_r)
    return _out(0.5 * params.p_s + 0.5 * arr + params.p_c, scalar)


def efficiency_denominator(p_r, params: SystemParams):
    """P_S + P_R + 2 P_C, i.e. twice ``total_power``."""
    arr, scalar = _as_power(p_r)
    return _out(params.p_s + arr + 2.0 * params.p_c, scalar)


def secrecy_energy_efficiency(p_r, params: SystemParams):
    """Securely delivered bits per Joule, C_soc / (P_S + P_R + 2 P_C)."""
    arr, scalar = _as_power(p_r)
    co = derive_coefficients(params)
    c = _capacity(arr * co.a, co, params.w)
    return _out(c / (params.p_s + arr + 2.0 * params.p_c), scalar)
