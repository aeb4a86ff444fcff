"""Monte Carlo check of the closed-form secrecy outage capacity.

Fading vectors are drawn per batch from independent child streams of one
``numpy.random.SeedSequence``, so results depend only on ``seed`` and
``n_samples``, never on how many worker threads evaluate the batches.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .model import SystemParams

BATCH_SIZE = 4096
THREADS_ENV = "SECRECY_EE_THREADS"


def worker_count() -> int:
    """Worker cap from SECRECY_EE_THREADS (0 or unset = all cores)."""
    raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return n


@dataclass(frozen=True)
class ChannelRealization:
    """Fading draw(s); arrays have shape (..., N_R), one leading axis per batch."""

    h_sr: np.ndarray
    h_rd_hat: np.ndarray
    e: np.ndarray
    h_re: np.ndarray

    def h_rd(self, rho: float) -> np.ndarray:
        """True relay-destination channel rebuilt from the estimate and its error."""
        return math.sqrt(rho) * self.h_rd_hat + math.sqrt(1.0 - rho) * self.e


@dataclass(frozen=True)
class OutageEstimate:
    p_out: float
    n_samples: int
    ci_halfwidth: float


def _cn(rng: np.random.Generator, shape) -> np.ndarray:
    # interleaved (re, im) pairs viewed as complex128
    z = rng.standard_normal((*shape, 2))
    return z.view(np.complex128)[..., 0] * math.sqrt(0.5)


def _draw(rng: np.random.Generator, shape) -> ChannelRealization:
    return ChannelRealization(
        h_sr=_cn(rng, shape), h_rd_hat=_cn(rng, shape), e=_cn(rng, shape), h_re=_cn(rng, shape)
    )


def sample_channels(params: SystemParams, seed: int, n: int | None = None) -> ChannelRealization:
    """One realization (vectors of length N_R), or ``n`` stacked realizations."""
    rng = np.random.default_rng(seed)
    shape = (params.n_r,) if n is None else (n, params.n_r)
    return _draw(rng, shape)


def instantaneous_snrs(real: ChannelRealization, p_r, params: SystemParams):
    """Exact SNRs at the destination and the eavesdropper under MRC/MRT relaying.

    The relay transform only enters through four scalar functionals of the
    fading vectors, so it is never formed explicitly.
    """
    p_r = float(p_r)
    if not math.isfinite(p_r) or p_r < 0:
        raise InvalidInputError(f"relay power must be finite and >= 0, got {p_r!r}")
    h_rd = real.h_rd(params.rho)
    legit_gain = np.abs(np.sum(np.conj(h_rd) * real.h_rd_hat, axis=-1)) ** 2
    eve_gain = np.abs(np.sum(np.conj(real.h_re) * real.h_rd_hat, axis=-1)) ** 2
    sr_norm2 = np.sum(np.abs(real.h_sr) ** 2, axis=-1)
    est_norm2 = np.sum(np.abs(real.h_rd_hat) ** 2, axis=-1)

    relay_noise = est_norm2 * (params.p_s * params.alpha_sr * sr_norm2 + 1.0)
    num = params.p_s * p_r * params.alpha_sr * sr_norm2
    gamma_d = num * params.alpha_rd * legit_gain / (p_r * params.alpha_rd * legit_gain + relay_noise)
    gamma_e = num * params.alpha_re * eve_gain / (p_r * params.alpha_re * eve_gain + relay_noise)
    return gamma_d, gamma_e


def _secrecy_capacity_batch(params: SystemParams, p_r: float, seq: np.random.SeedSequence, n: int):
    real = _draw(np.random.default_rng(seq), (n, params.n_r))
    gamma_d, gamma_e = instantaneous_snrs(real, p_r, params)
    return params.w * np.log2(1.0 + gamma_d) - params.w * np.log2(1.0 + gamma_e)


def sample_secrecy_capacities(p_r, params: SystemParams, n_samples: int, seed: int) -> np.ndarray:
    """Instantaneous C_D - C_E (unfloored) for ``n_samples`` draws, in bit/s."""
    if int(n_samples) != n_samples or n_samples < 1:
        raise InvalidInputError(f"n_samples must be a positive integer, got {n_samples!r}")
    n_samples = int(n_samples)
    n_batches = -(-n_samples // BATCH_SIZE)
    children = np.random.SeedSequence(seed).spawn(n_batches)
    sizes = [BATCH_SIZE] * (n_batches - 1) + [n_samples - BATCH_SIZE * (n_batches - 1)]
    jobs = list(zip(children, sizes))
    workers = min(worker_count(), n_batches)
    if workers <= 1:
        parts = [_secrecy_capacity_batch(params, p_r, s, n) for s, n in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _secrecy_capacity_batch(params, p_r, *job), jobs))
    return np.concatenate(parts)


def outage_from_samples(rate: float, secrecy: np.ndarray) -> OutageEstimate:
    n = secrecy.size
    p = float(np.count_nonzero(secrecy < rate)) / n
    return OutageEstimate(p_out=p, n_samples=n, ci_halfwidth=1.96 * math.sqrt(p * (1.0 - p) / n))


def empirical_outage_probability(
    rate: float, p_r, params: SystemParams, n_samples: int, seed: int
) -> OutageEstimate:
    """Fraction of draws whose secrecy capacity falls below ``rate``."""
    return outage_from_samples(rate, sample_secrecy_capacities(p_r, params, n_samples, seed))


def lower_quantile(values: np.ndarray, eps: float) -> float:
    """Order statistic of rank ceil(eps * n) (1-based)."""
    s = np.sort(values)
    # guard against eps * n landing a hair above an integer
    k = max(1, math.ceil(eps * s.size - 1e-9))
    return float(s[k - 1])


def empirical_secrecy_outage_capacity(p_r, params: SystemParams, n_samples: int, seed: int) -> float:
    """Empirical epsilon-quantile of max(C_D - C_E, 0)."""
    if n_samples < 1000:
        raise InvalidInputError(f"n_samples must be >= 1000, got {n_samples!r}")
    secrecy = np.maximum(sample_secrecy_capacities(p_r, params, n_samples, seed), 0.0)
    return lower_quantile(secrecy, params.epsilon)
