"""More relay antennas buy energy efficiency, even against a nearby eavesdropper."""
import numpy as np

from secrecy_ee import SystemParams, derive_coefficients, dinkelbach_solve

alphas = np.round(np.arange(0.5, 3.01, 0.5), 2)
print("N_R   " + " ".join(f"a={a:<6}" for a in alphas))
for n in (50, 100, 200):
    cells = []
    for a in alphas:
        p = SystemParams.reference_scenario(10.0, n_r=n, alpha_re=float(a))
        cells.append(f"{dinkelbach_solve(p).q_opt:8.0f}" if derive_coefficients(p).feasible else "     n/a")
    print(f"{n:<5} " + " ".join(cells))
