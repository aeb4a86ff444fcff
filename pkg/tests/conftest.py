import math

import numpy as np
import pytest

from secrecy_ee.model import SystemParams, derive_coefficients

ACCEPTANCE_LINES: list[str] = []


def random_feasible_params(rng: np.random.Generator, min_p_min: float = 0.0) -> SystemParams:
    """Draw a scenario with 0 < r_l < 0.95 and P_min >= ``min_p_min``."""
    while True:
        p = SystemParams(
            p_s=float(10 ** rng.uniform(-1, 2)),
            p_t=float(10 ** rng.uniform(-1, math.log10(20))),
            p_c=float(rng.uniform(0, 10)),
            n_r=int(rng.integers(8, 257)),
            w=float(10 ** rng.uniform(3, 6)),
            rho=float(rng.uniform(0.2, 1.0)),
            epsilon=float(rng.uniform(0.01, 0.3)),
            alpha_sr=float(10 ** rng.uniform(-0.7, 0.7)),
            alpha_rd=float(10 ** rng.uniform(-0.7, 0.7)),
            alpha_re=float(10 ** rng.uniform(-0.7, 0.7)),
        )
        co = derive_coefficients(p)
        if co.r_l < 0.95 and min(p.p_t, co.p_peak) >= min_p_min:
            return p


@pytest.fixture
def ref():
    return SystemParams.reference_scenario(10.0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
