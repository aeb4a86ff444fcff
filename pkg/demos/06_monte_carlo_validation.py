"""Check the closed-form capacity against simulated fading.

At the closed-form rate the simulated outage should sit near the target
epsilon, and the empirical epsilon-quantile should approach the closed
form as the antenna count grows.
"""
from secrecy_ee import SystemParams, derive_coefficients, secrecy_outage_capacity
from secrecy_ee.montecarlo import empirical_outage_probability, empirical_secrecy_outage_capacity

for n_r in (25, 50, 100, 200):
    p = SystemParams.reference_scenario(10.0, n_r=n_r)
    pk = derive_coefficients(p).p_peak
    closed = secrecy_outage_capacity(pk, p)
    out = empirical_outage_probability(closed, pk, p, n_samples=50_000, seed=1)
    emp = empirical_secrecy_outage_capacity(pk, p, n_samples=50_000, seed=1)
    print(f"N_R={n_r:<4} closed={closed:9.1f}  empirical={emp:9.1f}  "
          f"gap={(emp - closed) / closed:+.2%}  outage={out.p_out:.4f} +/- {out.ci_halfwidth:.4f}")
