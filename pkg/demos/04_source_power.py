"""Maximum energy efficiency as a function of the source power.

Too little source power leaves nothing to secure; too much inflates the
denominator while the capacity saturates, so there is an interior optimum.
"""
import numpy as np

from secrecy_ee import SystemParams, dinkelbach_solve

dbs = np.arange(-20, 41, 5.0)
print("P_S[dB] " + " ".join(f"{d:7.0f}" for d in dbs))
for a in (0.5, 1.0, 1.5):
    qs = [dinkelbach_solve(SystemParams.reference_scenario(float(d), alpha_re=a)).q_opt for d in dbs]
    print(f"a={a:<5} " + " ".join(f"{q:7.0f}" for q in qs))
