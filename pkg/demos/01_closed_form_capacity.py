"""Closed-form secrecy outage capacity versus relay power.

The capacity rises up to a single peak and falls beyond it; the analytic
derivative changes sign exactly there.
"""
import numpy as np

from secrecy_ee import SystemParams, capacity_derivative, derive_coefficients, secrecy_outage_capacity
from secrecy_ee.model import linear_to_db, secrecy_energy_efficiency

params = SystemParams.reference_scenario(p_s_db=10.0)
co = derive_coefficients(params)
print(f"A = {co.a:g}, B = {co.b:g}, r_l = {co.r_l:.5f}, feasible = {co.feasible}")
print(f"capacity peak at P_R = {co.p_peak:.4f} ({linear_to_db(co.p_peak):.2f} dB)\n")

print(f"{'P_R':>8} {'C_soc [bit/s]':>14} {'dC/dP':>12} {'EE [bit/J]':>11}")
for p in np.r_[0.1, 0.5, 1.0, co.p_peak, 3.0, 10.0, 30.0]:
    print(f"{p:8.3f} {secrecy_outage_capacity(p, params):14.1f} "
          f"{capacity_derivative(p, params):12.2f} {secrecy_energy_efficiency(p, params):11.1f}")

# a stronger eavesdropper link pushes r_l past 1: no secrecy at any power
weak = params.with_(alpha_re=60.0)
print(f"\nalpha_RE = 60: r_l = {derive_coefficients(weak).r_l:.3f}, "
      f"C_soc(1) = {secrecy_outage_capacity(1.0, weak):.1f} bit/s")
