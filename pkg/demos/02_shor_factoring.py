"""
Factoring with period finding
=============================

Walk through one period-finding run for a = 7, M = 15, then factor a few
small moduli end to end.
"""

import numpy as np

from qwave import shor

state = shor.build_period_state(7, 15, n_x=8)
print("oracle calls:", state.oracle_calls)

# Exact distribution of the measured x register after the transform.
p = shor.period_distribution(state)
print("outcomes with nonzero probability:", np.flatnonzero(p > 1e-12), "each", p[0])

# One sampled y and the classical post-processing.
y = shor.extract_period_sample(state, seed=1)
print("sampled y:", y)
print("convergents of y/256:", shor.convergents(y, 256))
print("recovered order:", shor.order_from_sample(7, 15, y, 256), "brute force:", shor.brute_force_order(7, 15))

for M in (15, 21, 33, 35, 39, 14, 49):
    res = shor.shor_factor(M, seed=1)
    print(f"M={M:2d} -> {res.factors}  method={res.method:13s} bases tried={res.a_values_tried}")
