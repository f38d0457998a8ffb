"""Dense state-vector engine.

Basis index ``i`` of an ``n``-qubit register encodes the bit string
``x_{n-1} ... x_1 x_0`` with ``x_0`` the least significant bit, so qubit ``q``
corresponds to bit ``q`` of the index.

Gates act in place on ``QuantumRegister.amplitudes`` and return the register
for chaining. Nothing is ever renormalized behind the caller's back.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError, StateCorruptionError, ValidationError
from .rng import make_rng

MAX_QUBITS = 24
UNITARY_TOL = 1e-12
NORM_TOL = 1e-10
MEASURE_NORM_TOL = 1e-6

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
IDENTITY = np.eye(2, dtype=np.complex128)

COUNTER_KINDS = ("single_qubit", "controlled_phase", "swap", "oracle")


@dataclass(frozen=True)
class MeasurementOutcome:
    basis_index: int
    probability: float


def _check_qubit_count(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise ValidationError(f"qubit count must be an integer, got {n!r}")
    n = int(n)
    if n < 1 or n > MAX_QUBITS:
        raise ResourceLimitError(f"qubit count {n} outside supported range [1, {MAX_QUBITS}]")
    return n


class QuantumRegister:
    """``n`` qubits stored as ``2**n`` complex amplitudes plus gate counters."""

    def __init__(self, num_qubits: int, amplitudes=None):
        self.num_qubits = _check_qubit_count(num_qubits)
        dim = 1 << self.num_qubits
        if amplitudes is None:
            amps = np.zeros(dim, dtype=np.complex128)
            amps[0] = 1.0
        else:
            amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
            if amps.size != dim:
                raise ValidationError(f"expected {dim} amplitudes for {self.num_qubits} qubits, got {amps.size}")
            if not np.all(np.isfinite(amps)):
                raise ValidationError("amplitudes must be finite")
            if abs(np.vdot(amps, amps).real - 1.0) > NORM_TOL:
                raise ValidationError("amplitudes are not normalized")
        self.amplitudes = amps
        self.counts = dict.fromkeys(COUNTER_KINDS, 0)

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "QuantumRegister":
        amps = np.asarray(amplitudes)
        n = int(amps.size).bit_length() - 1
        if amps.size < 2 or (1 << n) != amps.size:
            raise ValidationError(f"amplitude vector length {amps.size} is not a power of two >= 2")
        return cls(n, amps)

    @classmethod
    def basis_state(cls, num_qubits: int, index: int) -> "QuantumRegister":
        reg = cls(num_qubits)
        if not 0 <= index < reg.dim:
            raise IndexError(f"basis index {index} out of range")
        reg.amplitudes[0] = 0.0
        reg.amplitudes[index] = 1.0
        return reg

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self) -> np.ndarray:
        return self.amplitudes.real ** 2 + self.amplitudes.imag ** 2

    def copy(self) -> "QuantumRegister":
        out = QuantumRegister.__new__(QuantumRegister)
        out.num_qubits = self.num_qubits
        out.amplitudes = self.amplitudes.copy()
        out.counts = dict(self.counts)
        return out

    def _tensor(self) -> np.ndarray:
        # axis k of the view holds qubit n-1-k
        return self.amplitudes.reshape((2,) * self.num_qubits)

    def _axis(self, qubit: int) -> int:
        if not isinstance(qubit, (int, np.integer)) or not 0 <= qubit < self.num_qubits:
            raise IndexError(f"qubit {qubit!r} out of range for {self.num_qubits}-qubit register")
        return self.num_qubits - 1 - int(qubit)

    def __repr__(self):
        return f"QuantumRegister(num_qubits={self.num_qubits}, counts={self.counts})"


def new_zero_register(n: int) -> QuantumRegister:
    return QuantumRegister(n)


def validate_gate(gate) -> np.ndarray:
    g = np.asarray(gate, dtype=np.complex128)
    if g.shape != (2, 2):
        raise ValidationError(f"single-qubit gate must be 2x2, got shape {g.shape}")
    if not np.all(np.isfinite(g)):
        raise ValidationError("gate has non-finite entries")
    if np.max(np.abs(g @ g.conj().T - IDENTITY)) > UNITARY_TOL:
        raise ValidationError("gate is not unitary")
    return g


def apply_single_qubit(reg: QuantumRegister, gate, target: int) -> QuantumRegister:
    g = validate_gate(gate)
    reg._axis(target)
    n = reg.num_qubits
    psi = reg.amplitudes.reshape(1 << (n - 1 - target), 2, 1 << target)
    a0 = psi[:, 0, :].copy()
    a1 = psi[:, 1, :].copy()
    psi[:, 0, :] = g[0, 0] * a0 + g[0, 1] * a1
    psi[:, 1, :] = g[1, 0] * a0 + g[1, 1] * a1
    reg.counts["single_qubit"] += 1
    return reg


def hadamard(reg: QuantumRegister, target: int) -> QuantumRegister:
    return apply_single_qubit(reg, HADAMARD, target)


def apply_controlled_phase(reg: QuantumRegister, control: int, target: int, angle: float) -> QuantumRegister:
    """Multiply amplitudes whose ``control`` and ``target`` bits are both 1 by ``exp(i*angle)``."""
    ax_c = reg._axis(control)
    ax_t = reg._axis(target)
    if ax_c == ax_t:
        raise ValidationError("control and target must differ")
    if not np.isfinite(angle):
        raise ValidationError("phase angle must be finite")
    sl = [slice(None)] * reg.num_qubits
    sl[ax_c] = 1
    sl[ax_t] = 1
    reg._tensor()[tuple(sl)] *= np.exp(1j * angle)
    reg.counts["controlled_phase"] += 1
    return reg


def apply_swap(reg: QuantumRegister, a: int, b: int) -> QuantumRegister:
    ax_a = reg._axis(a)
    ax_b = reg._axis(b)
    if ax_a == ax_b:
        raise ValidationError("swap needs two distinct qubits")
    view = reg._tensor()
    s01 = [slice(None)] * reg.num_qubits
    s10 = [slice(None)] * reg.num_qubits
    s01[ax_a], s01[ax_b] = 0, 1
    s10[ax_a], s10[ax_b] = 1, 0
    tmp = view[tuple(s01)].copy()
    view[tuple(s01)] = view[tuple(s10)]
    view[tuple(s10)] = tmp
    reg.counts["swap"] += 1
    return reg


def apply_phase_oracle(reg: QuantumRegister, marked) -> QuantumRegister:
    """One oracle query: flip the sign of every marked basis amplitude."""
    idx = np.atleast_1d(np.asarray(marked, dtype=np.int64))
    if idx.size and (idx.min() < 0 or idx.max() >= reg.dim):
        raise IndexError("marked index out of range")
    reg.amplitudes[idx] *= -1.0
    reg.counts["oracle"] += 1
    return reg


def uniform_superposition(reg: QuantumRegister) -> QuantumRegister:
    """Hadamard every qubit of ``|0...0>``; costs exactly ``n`` gate applications."""
    zero = np.zeros(reg.dim, dtype=np.complex128)
    zero[0] = 1.0
    if not np.array_equal(reg.amplitudes, zero):
        raise ValidationError("uniform_superposition expects the all-zero register")
    for q in range(reg.num_qubits):
        apply_single_qubit(reg, HADAMARD, q)
    return reg


def _cdf(reg: QuantumRegister) -> tuple[np.ndarray, np.ndarray]:
    probs = reg.probabilities()
    total = probs.sum()
    if not np.isfinite(total) or abs(total - 1.0) > MEASURE_NORM_TOL:
        raise StateCorruptionError(f"register norm^2 = {total!r}, refusing to measure")
    cdf = np.cumsum(probs)
    return probs, cdf / cdf[-1]


def _draw(cdf: np.ndarray, u) -> np.ndarray:
    # u in (0, 1]; outcome i satisfies cdf[i-1] < u <= cdf[i], so zero-probability
    # outcomes are unreachable and boundary ties go to the lower index
    return np.minimum(np.searchsorted(cdf, u, side="left"), cdf.size - 1)


def measure_all(reg: QuantumRegister, seed=None, collapse: bool = True) -> MeasurementOutcome:
    probs, cdf = _cdf(reg)
    rng = make_rng(seed)
    u = 1.0 - rng.random()
    idx = int(_draw(cdf, u))
    outcome = MeasurementOutcome(idx, float(probs[idx]))
    if collapse:
        reg.amplitudes[:] = 0.0
        reg.amplitudes[idx] = 1.0
    return outcome


def sample(reg: QuantumRegister, shots: int, seed=None) -> np.ndarray:
    """Draw ``shots`` independent outcomes without collapsing the register."""
    _, cdf = _cdf(reg)
    rng = make_rng(seed)
    u = 1.0 - rng.random(int(shots))
    return _draw(cdf, u)


def operation_counter(reg: QuantumRegister) -> dict:
    return dict(reg.counts)
