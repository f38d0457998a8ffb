"""Shor factoring at simulation scale.

The modular-exponentiation oracle is simulated by writing the state
``2**(-n_x/2) * sum_x |x>|a**x mod M>`` directly, and it counts as a single
oracle call. Period extraction goes through ``qwave.qft.qft_factorized`` and a
sampled measurement. The order is then recovered classically from
continued-fraction convergents.

Register layout: the x register occupies qubits ``0 .. n_x-1`` and the f
register the qubits above it, so joint index = ``(f << n_x) | x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import core
from .core import QuantumRegister
from .errors import DomainError, ProbabilisticFailure, ResourceLimitError, ValidationError
from .qft import qft_factorized
from .rng import make_rng

MAX_MODULUS = 64
DEFAULT_RETRIES = 32


@dataclass(frozen=True)
class FactoringInstance:
    M: int
    a: int

    @property
    def gcd(self) -> int:
        return math.gcd(self.a, self.M)

    @property
    def short_circuit(self) -> bool:
        return self.gcd > 1


@dataclass(frozen=True)
class Convergent:
    p: int
    q: int


@dataclass
class PeriodOracleState:
    a: int
    M: int
    n_x: int
    n_f: int
    register: QuantumRegister

    @property
    def oracle_calls(self) -> int:
        return self.register.counts["oracle"]

    def joint(self) -> np.ndarray:
        """Amplitudes as a ``(2**n_f, 2**n_x)`` array indexed ``[f, x]`` (a view)."""
        return self.register.amplitudes.reshape(1 << self.n_f, 1 << self.n_x)


def _check_coprime(a: int, M: int):
    if M < 2:
        raise DomainError(f"modulus must be >= 2, got {M}")
    if math.gcd(a, M) != 1:
        raise DomainError(f"gcd({a}, {M}) = {math.gcd(a, M)} != 1")


def brute_force_order(a: int, M: int) -> int:
    """Smallest r >= 1 with a**r = 1 (mod M), by direct iteration."""
    _check_coprime(a, M)
    value = a % M
    r = 1
    while value != 1 % M:
        value = value * a % M
        r += 1
    return r


def modular_powers(a: int, M: int, count: int) -> np.ndarray:
    out = np.empty(count, dtype=np.int64)
    v = 1 % M
    for x in range(count):
        out[x] = v
        v = v * a % M
    return out


def register_sizes(M: int) -> tuple[int, int]:
    """Standard sizing: n_f = ceil(log2 M) bits for f, n_x = 2 * n_f for x."""
    n_f = max(1, (M - 1).bit_length())
    return 2 * n_f, n_f


def build_period_state(a: int, M: int, n_x: int) -> PeriodOracleState:
    _check_coprime(a, M)
    n_f = max(1, (M - 1).bit_length())
    if n_x < 1 or n_x + n_f > core.MAX_QUBITS:
        raise ResourceLimitError(f"n_x + n_f = {n_x + n_f} exceeds {core.MAX_QUBITS} qubits")
    Q = 1 << n_x
    x = np.arange(Q, dtype=np.int64)
    f = modular_powers(a, M, Q)
    amps = np.zeros(1 << (n_x + n_f), dtype=np.complex128)
    amps[(f << n_x) | x] = 1.0 / np.sqrt(Q)
    reg = QuantumRegister(n_x + n_f, amps)
    reg.counts["oracle"] += 1
    return PeriodOracleState(a, M, n_x, n_f, reg)


def extract_period_sample(state: PeriodOracleState, seed=None, measure_f: bool = True) -> int:
    """Sample one y from the period-finding circuit; ``state`` is left untouched.

    With ``measure_f`` the f register is measured first and only the collapsed
    x register is transformed. Without it the QFT runs on the joint state and
    f is traced out at the end (deferred measurement, same statistics).
    """
    rng = make_rng(seed)
    mask = (1 << state.n_x) - 1
    if measure_f:
        f0 = core.measure_all(state.register, rng, collapse=False).basis_index >> state.n_x
        row = state.joint()[f0]
        xreg = QuantumRegister(state.n_x, row / np.linalg.norm(row))
        qft_factorized(xreg)
        return core.measure_all(xreg, rng).basis_index
    reg = state.register.copy()
    qft_factorized(reg, range(state.n_x))
    return core.measure_all(reg, rng).basis_index & mask


def period_distribution(state: PeriodOracleState) -> np.ndarray:
    """Exact post-QFT probability of every y (f traced out), no sampling."""
    reg = state.register.copy()
    qft_factorized(reg, range(state.n_x))
    return reg.probabilities().reshape(1 << state.n_f, 1 << state.n_x).sum(axis=0)


def convergents(y: int, Q: int) -> list[Convergent]:
    """Continued-fraction convergents of y/Q, in order."""
    if Q < 1 or not 0 <= y < Q:
        raise ValidationError(f"need 0 <= y < Q, got y={y}, Q={Q}")
    out = []
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    num, den = y, Q
    while den:
        t, rem = divmod(num, den)
        p_prev, p = p, t * p + p_prev
        q_prev, q = q, t * q + q_prev
        out.append(Convergent(p, q))
        num, den = den, rem
    return out


def continued_fraction_period(y: int, Q: int, M: int) -> list[int] | None:
    """Candidate periods: convergent denominators of y/Q that are <= M, ascending.

    Returns None for y == 0, which carries no information about the period.
    """
    if y == 0:
        return None
    return sorted({c.q for c in convergents(y, Q) if c.q <= M})


def _minimal_order(a: int, M: int, multiple: int) -> int:
    # strip prime factors while a**(r/p) stays 1; yields the exact order
    r = multiple
    p = 2
    rest = r
    while p * p <= rest:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            while r % p == 0 and pow(a, r // p, M) == 1:
                r //= p
        p += 1
    if rest > 1 and r % rest == 0 and pow(a, r // rest, M) == 1:
        r //= rest
    return r


def order_from_sample(a: int, M: int, y: int, Q: int) -> int | None:
    cands = continued_fraction_period(y, Q, M)
    if not cands:
        return None
    for q in cands:
        if pow(a, q, M) == 1:
            return _minimal_order(a, M, q)
    return None


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    return all(m % p for p in range(2, math.isqrt(m) + 1))


def _prime_power_base(m: int) -> int | None:
    for k in range(2, m.bit_length() + 1):
        b = round(m ** (1.0 / k))
        for c in (b - 1, b, b + 1):
            if c > 1 and c ** k == m and _is_prime(c):
                return c
    return None


@dataclass
class ShorResult:
    M: int
    seed: int
    factors: tuple
    method: str
    a_values_tried: list = field(default_factory=list)
    y_samples: list = field(default_factory=list)
    periods: list = field(default_factory=list)
    r: int | None = None
    oracle_calls: int = 0
    attempts: int = 0
    lucky_gcd: int = 0

    def to_record(self) -> dict:
        return {
            "M": self.M,
            "seed": self.seed,
            "method": self.method,
            "a_values_tried": list(self.a_values_tried),
            "y_samples": list(self.y_samples),
            "periods": [list(p) for p in self.periods],
            "r": self.r,
            "factors": list(self.factors),
            "oracle_calls": self.oracle_calls,
            "attempts": self.attempts,
            "lucky_gcd": self.lucky_gcd,
        }


def shor_factor(M: int, seed: int = 0, max_retries: int = DEFAULT_RETRIES, measure_f: bool = True) -> ShorResult:
    """Factor ``M`` into ``(p, q)`` with ``1 < p <= q < M``.

    Even moduli and prime powers are split classically and flagged through
    ``ShorResult.method``; everything else goes through period finding with a
    fresh random base per attempt, at most ``max_retries`` attempts.
    """
    M = int(M)
    if M < 4:
        raise DomainError(f"modulus must be >= 4, got {M}")
    if M > MAX_MODULUS:
        raise ResourceLimitError(f"modulus {M} exceeds simulation limit {MAX_MODULUS}")
    if _is_prime(M):
        raise DomainError(f"{M} is prime")
    if max_retries < 1:
        raise ValidationError("max_retries must be >= 1")
    if M % 2 == 0:
        return ShorResult(M, seed, (2, M // 2), "even")
    base = _prime_power_base(M)
    if base is not None:
        return ShorResult(M, seed, (base, M // base), "prime-power")

    rng = make_rng(seed)
    n_x, _ = register_sizes(M)
    Q = 1 << n_x
    res = ShorResult(M, seed, (), "quantum")
    while res.attempts < max_retries:
        res.attempts += 1
        a = int(rng.integers(2, M - 1))
        res.a_values_tried.append(a)
        g = math.gcd(a, M)
        if g > 1:
            res.lucky_gcd += 1
            res.factors = tuple(sorted((g, M // g)))
            res.method = "classical-gcd"
            return res
        state = build_period_state(a, M, n_x)
        res.oracle_calls += state.oracle_calls
        y = extract_period_sample(state, rng, measure_f=measure_f)
        res.y_samples.append(y)
        r = order_from_sample(a, M, y, Q)
        if r is None:
            continue
        res.periods.append((a, r))
        if r % 2:
            continue
        half = pow(a, r // 2, M)
        if half == M - 1:
            continue
        p = math.gcd(half - 1, M)
        if 1 < p < M:
            res.r = r
            res.factors = tuple(sorted((p, M // p)))
            return res
    raise ProbabilisticFailure(f"no factor of {M} after {max_retries} attempts", log=res.to_record())
