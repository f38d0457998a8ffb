"""qwave: state-vector simulations of factorisation and superposition in quantum algorithms.

Modules
-------
core     dense n-qubit registers, gates, measurement, operation counters
qft      brute-force DFT, radix-2 FFT and the factorized QFT circuit
shor     period finding and factoring for small moduli
grover   Grover iteration, classical search baselines, wave analogue, hybrid search
walk     coined quantum walks: spreading and marked-vertex spatial search
fitting  scaling records and log-log power-law fits
harness  reproducible experiment runner and summary tables (CLI in ``qwave.cli``)
"""

__version__ = "0.1.0"
