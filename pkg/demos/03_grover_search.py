"""
Unstructured search
===================

The four-item case needs exactly one query. Larger databases need about
(pi/4) sqrt(N). Classical baselines and the factorized hybrid are shown for
comparison.
"""

import math

from qwave import grover
from qwave.grover import Oracle

# Uniform -> oracle flip -> reflection about the mean.
_, steps = grover.grover_iterate(4, Oracle(0, 4), 1, trace=True)
for label, amps in zip(("start", "after oracle", "after diffusion"), steps):
    print(f"{label:16s}", amps)

print("\n     N   Q*   p(Q*)   Q*/sqrt(N)")
for k in range(2, 15, 2):
    s = grover.optimal_queries(2 ** k)
    print(f"{2 ** k:6d} {s.Q_star:4d}  {s.predicted_success:.4f}  {s.Q_star / math.sqrt(2 ** k):.4f}")

N = 256
print("\nqueries for N = 256")
print("  random probing (mean of 2000):", grover.random_search_mean(N, 2000, seed=0))
print("  sorted bisection             :", grover.classical_sorted_search(N, 100))
print("  Grover                       :", grover.optimal_queries(N).Q_star)
plan = grover.hybrid_factorized_search(N, 100, seed=0)
print("  factorized hybrid            :", plan.total_queries, "stages", plan.stages)

w = grover.wave_analogue_search(1024, 5)
print("\nwave analogue N=1024: steps", w.steps, "cells", w.spatial_cost)
print("N = 2 stays at", grover.wave_analogue_search(2, 0).final_probability)
