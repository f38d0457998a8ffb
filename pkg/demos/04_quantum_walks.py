"""
Coined quantum walks
====================

Free spreading of a classical random walk (sigma ~ sqrt t) against a
Hadamard walk (sigma ~ t), then marked-site search on periodic lattices.
"""

from qwave import walk
from qwave.fitting import fit_power_law, fit_records

classical = walk.classical_walk_spread(1, 2050, 1024, trials=2000, seed=0)
quantum = walk.quantum_walk_spread(1, 1026, 512)
ec = fit_power_law([(r.t, r.sigma) for r in classical if r.t >= 16]).exponent
eq = fit_power_law([(r.t, r.sigma) for r in quantum if r.t >= 16]).exponent
print(f"spread exponents: classical {ec:.3f}, quantum {eq:.3f}")

# One search trace on a 3-d lattice.
tr = walk.spatial_search(walk.Lattice(3, 8))
print(f"d=3 L=8: peak at t={tr.T_peak} with p={tr.p_peak:.3f} (uniform start 1/N={1 / 512:.4f})")

# Search cost T_peak / p_peak against N, per dimension.
for d, sides in ((1, [64, 128, 256, 512]), (2, [8, 16, 32, 64]), (3, [4, 6, 8, 10])):
    recs = walk.scaling_experiment(d, sides)
    fit = fit_records(recs)
    row = ", ".join(f"N={r.N}: T={r.extra['T_peak']} p={r.extra['p_peak']:.3f}" for r in recs)
    print(f"d={d} exponent {fit.exponent:.3f}   [{row}]")
