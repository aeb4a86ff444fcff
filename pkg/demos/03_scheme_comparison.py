"""Energy-efficient allocation versus capacity-maximizing allocation.

Sweeps the relay-eavesdropper path loss at P_S = 10 dB.
"""
import numpy as np

from secrecy_ee import SystemParams, capacity_max_allocation, dinkelbach_solve, secrecy_energy_efficiency

print(f"{'alpha_RE':>8} {'q_EE':>9} {'q_capmax':>9} {'gain':>8}")
for a in np.round(np.arange(0.1, 1.51, 0.1), 2):
    p = SystemParams.reference_scenario(10.0, alpha_re=float(a))
    q_ee = dinkelbach_solve(p).q_opt
    q_cm = secrecy_energy_efficiency(capacity_max_allocation(p), p)
    print(f"{a:8.2f} {q_ee:9.1f} {q_cm:9.1f} {q_ee - q_cm:8.1f}")
