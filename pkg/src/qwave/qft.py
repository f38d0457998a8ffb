"""Discrete Fourier transform three ways.

All three routes use the same convention,

    out[y] = N**-0.5 * sum_x exp(+2j*pi*x*y/N) * in[x],

and each reports its own operation count:

* ``dft_bruteforce``  -- N**2 complex multiply-adds
* ``fft_classical``   -- (N/2) log2 N radix-2 butterflies
* ``qft_factorized``  -- n Hadamards, n(n-1)/2 controlled phases, n//2 swaps
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from . import core
from .core import QuantumRegister
from .errors import ValidationError


@dataclass(frozen=True)
class SpectrumVector:
    amplitudes: np.ndarray
    ops: int
    unit: str

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def __len__(self):
        return self.amplitudes.size


@dataclass(frozen=True)
class Hadamard:
    target: int


@dataclass(frozen=True)
class ControlledPhase:
    control: int
    target: int
    k: int

    @property
    def angle(self) -> float:
        return np.pi / 2 ** self.k


@dataclass(frozen=True)
class Swap:
    a: int
    b: int


@dataclass(frozen=True)
class PhaseLadderPlan:
    n: int
    gates: tuple

    def counts(self) -> dict:
        out = {"hadamard": 0, "controlled_phase": 0, "swap": 0}
        for g in self.gates:
            if isinstance(g, Hadamard):
                out["hadamard"] += 1
            elif isinstance(g, ControlledPhase):
                out["controlled_phase"] += 1
            else:
                out["swap"] += 1
        return out

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


def qft_gate_count(n: int) -> int:
    return n + n * (n - 1) // 2 + n // 2


def _as_vector(values) -> np.ndarray:
    v = np.asarray(values, dtype=np.complex128).reshape(-1)
    if v.size < 1:
        raise ValidationError("transform input must have at least one element")
    return v


def dft_bruteforce(values) -> SpectrumVector:
    v = _as_vector(values)
    N = v.size
    twiddle = np.exp(2j * np.pi * np.arange(N) / N)
    x = np.arange(N, dtype=np.int64)
    out = np.empty(N, dtype=np.complex128)
    for y in range(N):
        out[y] = np.dot(twiddle[(x * y) % N], v)
    return SpectrumVector(out / np.sqrt(N), N * N, "complex multiply-adds")


def fractional_phase(x_bits, k: int, n: int | None = None) -> float:
    """Return ``2*pi * (.x_k x_{k-1} ... x_0)`` in binary.

    ``x_bits`` may be a bit string such as ``"101"`` (its length fixes ``n``)
    or an integer together with an explicit ``n``.
    """
    if isinstance(x_bits, str):
        if not x_bits or set(x_bits) - {"0", "1"}:
            raise ValidationError(f"not a bit string: {x_bits!r}")
        n = len(x_bits) if n is None else n
        x = int(x_bits, 2)
    else:
        x = int(x_bits)
        if n is None:
            n = max(x.bit_length(), 1)
    if not 0 <= k < n:
        raise IndexError(f"bit index {k} out of range for {n} bits")
    low = x & ((1 << (k + 1)) - 1)
    return 2.0 * np.pi * low / (1 << (k + 1))


def build_qft_plan(n: int) -> PhaseLadderPlan:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= core.MAX_QUBITS:
        raise ValidationError(f"qubit count {n!r} outside [1, {core.MAX_QUBITS}]")
    gates = []
    for j in range(n - 1, -1, -1):
        gates.append(Hadamard(j))
        for c in range(j - 1, -1, -1):
            gates.append(ControlledPhase(c, j, j - c))
    for i in range(n // 2):
        gates.append(Swap(i, n - 1 - i))
    return PhaseLadderPlan(n, tuple(gates))


def run_plan(reg: QuantumRegister, plan: PhaseLadderPlan, qubits=None) -> QuantumRegister:
    """Execute ``plan`` with plan qubit ``q`` mapped onto register qubit ``qubits[q]``."""
    qubits = list(range(plan.n)) if qubits is None else list(qubits)
    if len(qubits) != plan.n:
        raise ValidationError("qubit map does not match plan size")
    for g in plan.gates:
        if isinstance(g, Hadamard):
            core.apply_single_qubit(reg, core.HADAMARD, qubits[g.target])
        elif isinstance(g, ControlledPhase):
            core.apply_controlled_phase(reg, qubits[g.control], qubits[g.target], g.angle)
        else:
            core.apply_swap(reg, qubits[g.a], qubits[g.b])
    return reg


def qft_factorized(reg: QuantumRegister, qubits=None) -> QuantumRegister:
    """Apply the QFT in place, on all qubits or on the sub-register ``qubits`` (low bit first)."""
    n = reg.num_qubits if qubits is None else len(qubits)
    return run_plan(reg, build_qft_plan(n), qubits)


def qft_vector(values) -> SpectrumVector:
    """Convenience wrapper: QFT of a plain vector, counted in gate applications."""
    reg = QuantumRegister.from_amplitudes(values)
    qft_factorized(reg)
    c = reg.counts
    return SpectrumVector(reg.amplitudes, c["single_qubit"] + c["controlled_phase"] + c["swap"], "gates")


def _bit_reverse_permutation(n: int) -> np.ndarray:
    idx = np.arange(1 << n)
    rev = np.zeros_like(idx)
    for b in range(n):
        rev |= ((idx >> b) & 1) << (n - 1 - b)
    return rev


def fft_classical(values) -> SpectrumVector:
    v = _as_vector(values)
    N = v.size
    n = N.bit_length() - 1
    if (1 << n) != N:
        raise ValidationError(f"fft_classical needs a power-of-two length, got {N}")
    data = v[_bit_reverse_permutation(n)] if n else v.copy()
    butterflies = 0
    m = 2
    while m <= N:
        half = m // 2
        w = np.exp(2j * np.pi * np.arange(half) / m)
        blocks = data.reshape(N // m, m)
        top = blocks[:, :half]
        bot = blocks[:, half:] * w
        data = np.concatenate([top + bot, top - bot], axis=1).reshape(N)
        butterflies += (N // m) * half
        m *= 2
    return SpectrumVector(data / np.sqrt(N), butterflies, "butterflies")


@dataclass(frozen=True)
class ComplexityRow:
    n: int
    naive_ops: int
    fft_ops: int
    qft_gates: int


def complexity_table(n_range) -> list[ComplexityRow]:
    """Run all three transforms on ``|1>`` for each ``n`` and read back their counters.

    The brute-force route costs O(4**n) time, so keep ``n`` modest (<= 12).
    """
    rows = []
    for n in n_range:
        N = 1 << n
        basis = np.zeros(N, dtype=np.complex128)
        basis[1 % N] = 1.0
        naive = dft_bruteforce(basis).ops
        fft = fft_classical(basis).ops
        reg = QuantumRegister.basis_state(n, 1)
        qft_factorized(reg)
        gates = reg.counts["single_qubit"] + reg.counts["controlled_phase"] + reg.counts["swap"]
        rows.append(ComplexityRow(n, naive, fft, gates))
    return rows


def complexity_table_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "naive_ops", "fft_ops", "qft_gates"])
    for r in rows:
        w.writerow([r.n, r.naive_ops, r.fft_ops, r.qft_gates])
    return buf.getvalue()
