"""
Superposition and the Fourier transform
=======================================

Build a uniform superposition with one Hadamard per qubit, then compare the
three Fourier transforms and their operation counts.
"""

import numpy as np

from qwave import core, qft

# Three qubits, three Hadamards: every amplitude is 2**(-3/2).
reg = core.uniform_superposition(core.new_zero_register(3))
print("amplitudes:", np.round(reg.amplitudes.real, 6))
print("gates used:", core.operation_counter(reg))

# The factorized circuit for n = 3.
for gate in qft.build_qft_plan(3):
    print("  ", gate)

# Same random state through all three routes.
rng = np.random.default_rng(0)
v = rng.normal(size=256) + 1j * rng.normal(size=256)
v /= np.linalg.norm(v)
naive = qft.dft_bruteforce(v)
fft = qft.fft_classical(v)
circ = qft.qft_vector(v)
print("max |naive - fft| :", np.max(np.abs(naive.amplitudes - fft.amplitudes)))
print("max |naive - qft| :", np.max(np.abs(naive.amplitudes - circ.amplitudes)))

# Operation counts, each in its own unit.
print(qft.complexity_table_csv(qft.complexity_table(range(1, 11))))

# A periodic input transforms to a comb at multiples of N/r.
comb = np.zeros(64)
comb[3::8] = 1
out = qft.qft_vector(comb / np.linalg.norm(comb)).amplitudes
print("support of transformed comb:", np.flatnonzero(np.abs(out) > 1e-9))
