"""Dinkelbach iterations for several source powers.

Each row is one outer iteration: the candidate relay power and the energy
efficiency it achieves.  A handful of iterations is enough.
"""
from secrecy_ee import SystemParams, dinkelbach_solve

for p_s_db in (0.0, 4.0, 10.0):
    res = dinkelbach_solve(SystemParams.reference_scenario(p_s_db))
    print(f"P_S = {p_s_db:g} dB: converged={res.converged} after {res.iterations} iterations")
    for t in res.trace:
        print(f"   n={t.iteration}  P'={t.p_r:.6f}  q={t.q:.3f} bit/J")
