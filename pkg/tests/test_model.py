import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secrecy_ee import model
from secrecy_ee.errors import InvalidInputError, InvalidParamsError
from secrecy_ee.model import SystemParams, derive_coefficients

from .conftest import random_feasible_params

# frozen from a 60-digit mpmath evaluation of the un-reduced capacity formula
C_SOC_AT_PEAK = 39625.49625190797
P_PEAK = 1.5732533145753864
R_L = 0.04992887122589985  # 1.5 * ln(20) / 90


def lemma_capacity_mp(p_r, p: SystemParams):
    """Capacity written with ln(epsilon) as in the original closed form,
    evaluated in 60-digit arithmetic.  Independent of the A/B/r_l reduction."""
    with mpmath.workdps(60):
        pr, ps, n = mpmath.mpf(p_r), mpmath.mpf(p.p_s), p.n_r
        asr, ard, are = mpmath.mpf(p.alpha_sr), mpmath.mpf(p.alpha_rd), mpmath.mpf(p.alpha_re)
        rho, le = mpmath.mpf(p.rho), mpmath.log(mpmath.mpf(p.epsilon))
        legit = mpmath.log(1 + ps * pr * asr * ard * rho * n**2 / (pr * ard * rho * n + ps * asr * n + 1), 2)
        eve = mpmath.log(1 + ps * pr * asr * are * n * le / (pr * are * le - ps * asr * n - 1), 2)
        return p.w * (legit - eve)


def test_params_validation():
    base = SystemParams.reference_scenario()
    for bad in [dict(p_s=0), dict(p_t=-1), dict(p_c=-0.1), dict(n_r=0), dict(w=0),
                dict(rho=0), dict(rho=1.1), dict(epsilon=0), dict(epsilon=1),
                dict(alpha_re=0), dict(n_r=2.5), dict(p_s=math.nan), dict(w=math.inf)]:
        with pytest.raises(InvalidParamsError):
            base.with_(**bad)
    assert base.with_(rho=1.0).rho == 1.0
    assert base.with_(p_c=0.0).p_c == 0.0


def test_reference_scenario_units():
    p = SystemParams.reference_scenario(10.0)
    assert p.p_s == 10.0
    assert p.p_t == 10.0
    assert math.isclose(p.p_c, 3.1622776601683795, rel_tol=1e-15)


class TestDeriveCoefficients:
    def test_reference_values(self, ref):
        co = derive_coefficients(ref)
        assert co.a == pytest.approx(90.0, rel=1e-15)
        assert co.b == pytest.approx(1000.0, rel=1e-15)
        assert co.r_l == pytest.approx(R_L, rel=1e-14)
        assert co.r_l == pytest.approx(0.04993, abs=1e-5)
        assert co.feasible

    def test_boundary(self):
        p = SystemParams(p_s=1, p_t=1, p_c=0, n_r=1, w=1, rho=1, epsilon=math.exp(-1),
                         alpha_sr=1, alpha_rd=1, alpha_re=1)
        co = derive_coefficients(p)
        assert co.a == 1.0
        assert co.r_l == pytest.approx(1.0, rel=1e-15)

    def test_infeasible_not_rejected(self, ref):
        co = derive_coefficients(ref.with_(alpha_re=100.0))
        assert co.r_l > 1 and not co.feasible

    def test_peak_matches_dense_grid(self, ref):
        co = derive_coefficients(ref)
        grid = np.arange(1, 50_001) * 1e-3
        c = model.secrecy_outage_capacity(grid, ref)
        assert abs(grid[np.argmax(c)] - co.p_peak) <= 1e-3
        assert co.p_peak == pytest.approx(P_PEAK, rel=1e-14)
        assert model.linear_to_db(co.p_peak) == pytest.approx(1.97, abs=0.01)

    def test_peak_consistency(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            co = derive_coefficients(random_feasible_params(rng))
            assert co.p_peak**2 * co.a**2 * co.r_l**2 == pytest.approx(co.r_l * (co.b + 1), rel=1e-12)

    def test_rejects_non_params(self):
        with pytest.raises(InvalidParamsError):
            derive_coefficients({"p_s": 1})


class TestCapacity:
    def test_zero_power(self, ref):
        assert model.secrecy_outage_capacity(0.0, ref) == 0.0

    def test_boundary_is_zero(self):
        p = SystemParams(p_s=3, p_t=1, p_c=0, n_r=1, w=1e4, rho=1, epsilon=math.exp(-1),
                         alpha_sr=1, alpha_rd=1, alpha_re=1)
        for pr in [0.1, 1.0, 7.0, 1e3]:
            assert model.secrecy_outage_capacity(pr, p) == pytest.approx(0.0, abs=1e-9)

    def test_at_peak_against_high_precision(self, ref):
        c = model.secrecy_outage_capacity(P_PEAK, ref)
        assert c == pytest.approx(3.96e4, rel=1e-3)
        assert c == pytest.approx(C_SOC_AT_PEAK, rel=1e-10)
        assert c == pytest.approx(float(lemma_capacity_mp(P_PEAK, ref)), rel=1e-10)

    def test_high_precision_random(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            p = random_feasible_params(rng)
            pr = float(rng.uniform(0.01, 3) * derive_coefficients(p).p_peak)
            assert model.secrecy_outage_capacity(pr, p) == pytest.approx(
                float(lemma_capacity_mp(pr, p)), rel=1e-9)

    def test_near_boundary_branch_is_continuous(self, ref):
        # straddle the |r_l - 1| = 1e-3 switch between the two formulas
        co0 = derive_coefficients(ref)
        target = lambda r: ref.with_(alpha_re=r * co0.a / -math.log(ref.epsilon))
        for r in [1 - 1e-3 - 1e-9, 1 - 1e-3 + 1e-9, 1 + 1e-3 - 1e-9, 1 + 1e-3 + 1e-9]:
            p = target(r)
            c = model.secrecy_outage_capacity(1.0, p)
            assert c == pytest.approx(float(lemma_capacity_mp(1.0, p)), rel=1e-8)

    def test_infeasible_negative(self, ref):
        p = ref.with_(alpha_re=100.0)
        grid = np.linspace(0.01, 20, 500)
        assert np.all(model.secrecy_outage_capacity(grid, p) < 0)
        assert np.all(model.secrecy_energy_efficiency(grid, p) <= 0)

    def test_array_and_scalar(self, ref):
        arr = model.secrecy_outage_capacity(np.array([0.5, 1.0]), ref)
        assert isinstance(arr, np.ndarray)
        assert isinstance(model.secrecy_outage_capacity(1.0, ref), float)
        assert arr[1] == model.secrecy_outage_capacity(1.0, ref)

    @pytest.mark.parametrize("bad", [-1.0, math.nan, math.inf])
    def test_invalid_power(self, ref, bad):
        with pytest.raises(InvalidInputError):
            model.secrecy_outage_capacity(bad, ref)


class TestDerivative:
    def test_zero_at_peak(self, ref):
        co = derive_coefficients(ref)
        d = model.capacity_derivative(co.p_peak, ref)
        assert abs(d) < 1e-9 * model.capacity_derivative_scale(co.p_peak, ref)

    def test_positive_below_peak(self, ref):
        co = derive_coefficients(ref)
        assert model.capacity_derivative(co.p_peak / 2, ref) > 0
        assert model.capacity_derivative(co.p_peak * 2, ref) < 0

    def test_finite_difference_reference(self, ref):
        pr, h = 1.0, 1e-6
        fd = (model.secrecy_outage_capacity(pr + h, ref) - model.secrecy_outage_capacity(pr - h, ref)) / (2 * h)
        assert model.capacity_derivative(pr, ref) == pytest.approx(fd, rel=1e-6)

    def test_limit_at_zero(self, ref):
        d0 = model.capacity_derivative_at_zero(ref)
        assert model.capacity_derivative(1e-12, ref) == pytest.approx(d0, rel=1e-8)

    def test_rejects_zero(self, ref):
        with pytest.raises(InvalidInputError):
            model.capacity_derivative(0.0, ref)


class TestPower:
    def test_total_power(self):
        p = SystemParams.reference_scenario(10.0).with_(p_c=3.1623)
        assert model.total_power(0.0, p) == pytest.approx(8.1623, abs=1e-12)
        assert model.total_power(10.0, p) == pytest.approx(13.1623, abs=1e-12)
        assert model.db_to_linear(5.0) == pytest.approx(3.1623, abs=1e-4)

    def test_efficiency_examples(self, ref):
        assert model.secrecy_energy_efficiency(0.0, ref) == 0.0
        q = model.secrecy_energy_efficiency(P_PEAK, ref)
        assert q == pytest.approx(2.2e3, rel=0.01)
        assert q == pytest.approx(C_SOC_AT_PEAK / (10 + P_PEAK + 2 * ref.p_c), rel=1e-14)

    def test_negative_power(self, ref):
        for fn in (model.total_power, model.secrecy_energy_efficiency):
            with pytest.raises(InvalidInputError):
                fn(-1e-3, ref)


# ---- properties -------------------------------------------------------------

def test_unimodality_random_sets():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        p = random_feasible_params(rng)
        pk = derive_coefficients(p).p_peak
        lo = np.sort(rng.uniform(0, pk, size=(2,)))
        hi = np.sort(rng.uniform(pk, 5 * pk, size=(2,)))
        assume_distinct = lo[1] > lo[0] * (1 + 1e-9) and hi[1] > hi[0] * (1 + 1e-9)
        if not assume_distinct:
            continue
        c_lo = model.secrecy_outage_capacity(lo, p)
        c_hi = model.secrecy_outage_capacity(hi, p)
        assert c_lo[0] < c_lo[1]
        assert c_hi[0] > c_hi[1]


def test_derivative_matches_finite_differences():
    rng = np.random.default_rng(7)
    for _ in range(30):
        p = random_feasible_params(rng)
        pk = derive_coefficients(p).p_peak
        pts = rng.uniform(0, 2 * pk, size=100)
        h = 1e-6 * pts
        fd = (model.secrecy_outage_capacity(pts + h, p) - model.secrecy_outage_capacity(pts - h, p)) / (2 * h)
        an = model.capacity_derivative(pts, p)
        # near the peak C' -> 0, so measure against the size of its terms
        scale = np.maximum(np.abs(an), model.capacity_derivative_scale(pts, p))
        assert np.max(np.abs(fd - an) / scale) < 1e-6


def test_concavity_below_peak():
    rng = np.random.default_rng(3)
    for _ in range(300):
        p = random_feasible_params(rng)
        pk = derive_coefficients(p).p_peak
        x, y, z = np.sort(rng.uniform(0, pk, 3))
        if z - x <= 0:
            continue
        lam = (y - x) / (z - x)
        cx, cy, cz = model.secrecy_outage_capacity(np.array([x, y, z]), p)
        assert cy >= (1 - lam) * cx + lam * cz - 1e-12 * max(1.0, abs(cz))


@settings(max_examples=200, deadline=None)
@given(are=st.floats(0.1, 5), eps=st.floats(0.01, 0.5), pr=st.floats(0, 50))
def test_reduction_invariance(are, eps, pr):
    p1 = SystemParams.reference_scenario().with_(alpha_re=are, epsilon=eps)
    # epsilon = 1/e has ln exactly -1, so alpha_re carries the product bit for bit
    e_inv = math.exp(-1)
    assert math.log(e_inv) == -1.0
    p2 = p1.with_(alpha_re=-are * math.log(eps), epsilon=e_inv)
    assert model.secrecy_outage_capacity(pr, p1) == model.secrecy_outage_capacity(pr, p2)


@settings(max_examples=300, deadline=None)
@given(ps=st.floats(0.01, 1e4), pc=st.floats(0, 100), pr=st.floats(0, 100))
def test_objective_identity(ps, pc, pr):
    p = SystemParams.reference_scenario().with_(p_s=ps, p_c=pc)
    lhs = 0.5 * model.secrecy_outage_capacity(pr, p) / model.total_power(pr, p)
    rhs = model.secrecy_energy_efficiency(pr, p)
    assert lhs == pytest.approx(rhs, rel=1e-15, abs=0)
