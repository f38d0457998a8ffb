"""Unstructured search: Grover iteration and its classical baselines.

The quantum search runs on a real amplitude vector of any length N >= 2
(both reflections keep real amplitudes real). The algorithm sees the marked
item only through :class:`Oracle`, which flips a sign and counts the call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import core
from .errors import DomainError, ValidationError
from .rng import make_rng


class Oracle:
    """Binary query for one marked item. The index itself stays private."""

    def __init__(self, target: int, size: int | None = None):
        if size is not None and not 0 <= target < size:
            raise ValidationError(f"target {target} outside [0, {size})")
        self._target = int(target)
        self.calls = 0

    def flip(self, amplitudes: np.ndarray) -> None:
        amplitudes[self._target] = -amplitudes[self._target]
        self.calls += 1

    def query(self, index: int) -> bool:
        self.calls += 1
        return int(index) == self._target


@dataclass
class SearchState:
    amplitudes: np.ndarray
    oracle: Oracle

    @classmethod
    def uniform(cls, N: int, oracle: Oracle) -> "SearchState":
        if N < 2:
            raise DomainError("search needs N >= 2")
        return cls(np.full(N, 1.0 / math.sqrt(N)), oracle)

    @property
    def N(self) -> int:
        return self.amplitudes.size

    def norm_squared(self) -> float:
        return float(np.dot(self.amplitudes, self.amplitudes))


def oracle_reflect(state: SearchState) -> SearchState:
    amps = state.amplitudes.copy()
    state.oracle.flip(amps)
    return SearchState(amps, state.oracle)


def diffusion_reflect(state: SearchState) -> SearchState:
    a = state.amplitudes
    return SearchState(2.0 * a.mean() - a, state.oracle)


@dataclass(frozen=True)
class QuerySchedule:
    N: int
    Q_star: int
    theta: float
    predicted_success: float


def success_probability(N: int, Q: int) -> float:
    theta = math.asin(1.0 / math.sqrt(N))
    return math.sin((2 * Q + 1) * theta) ** 2


def optimal_queries(N: int) -> QuerySchedule:
    """Nearest integer solution of (2Q+1) asin(1/sqrt N) = pi/2, halves rounded up."""
    if N < 2:
        raise DomainError(f"optimal_queries needs N >= 2, got {N}")
    theta = math.asin(1.0 / math.sqrt(N))
    # round(pi/(4 theta) - 1/2) with ties up is floor(pi/(4 theta)); the slack
    # keeps exact ties (N = 2) from slipping below the integer in floating point
    q = math.floor(math.pi / (4.0 * theta) + 1e-12)
    return QuerySchedule(N, q, theta, math.sin((2 * q + 1) * theta) ** 2)


def grover_iterate(N: int, oracle: Oracle, Q: int, trace: bool = False):
    """Q rounds of oracle then diffusion from the uniform state.

    With ``trace`` also returns the amplitude vector after every half-step.
    """
    if Q < 0:
        raise ValidationError("query count must be >= 0")
    state = SearchState.uniform(N, oracle)
    steps = [state.amplitudes.copy()]
    for _ in range(Q):
        state = oracle_reflect(state)
        if trace:
            steps.append(state.amplitudes.copy())
        state = diffusion_reflect(state)
        if trace:
            steps.append(state.amplitudes.copy())
    return (state, steps) if trace else state


@dataclass(frozen=True)
class GroverResult:
    N: int
    Q: int
    success: bool
    final_probability: float
    measured: int
    oracle_calls: int


def _measure_real(amps: np.ndarray, rng) -> int:
    cdf = np.cumsum(amps * amps)
    u = (1.0 - rng.random()) * cdf[-1]
    return int(min(np.searchsorted(cdf, u, side="left"), amps.size - 1))


def grover_search(N: int, target: int, Q: int, seed=None) -> GroverResult:
    if not 0 <= target < N:
        raise ValidationError(f"target {target} outside [0, {N})")
    oracle = Oracle(target, N)
    state = grover_iterate(N, oracle, Q)
    measured = _measure_real(state.amplitudes, make_rng(seed))
    p = float(state.amplitudes[target] ** 2)
    return GroverResult(N, Q, measured == target, p, measured, oracle.calls)


def grover_search_register(n: int, target: int, Q: int) -> core.QuantumRegister:
    """Same iteration on an n-qubit state vector, built from core gates."""
    reg = core.uniform_superposition(core.new_zero_register(n))
    for _ in range(Q):
        core.apply_phase_oracle(reg, target)
        for q in range(n):
            core.hadamard(reg, q)
        reg.amplitudes[1:] *= -1.0
        for q in range(n):
            core.hadamard(reg, q)
    return reg


def classical_random_search(N: int, target: int, seed=None, trace: bool = False):
    """Probe uniformly random items (with replacement) until the target turns up."""
    if N < 1 or not 0 <= target < N:
        raise ValidationError(f"bad search instance N={N}, target={target}")
    rng = make_rng(seed)
    chunk = min(max(4 * N, 64), 1 << 16)
    probes = []
    used = 0
    while True:
        draws = rng.integers(0, N, size=chunk)
        hits = np.flatnonzero(draws == target)
        if hits.size:
            used += int(hits[0]) + 1
            if trace:
                probes.append(draws[: hits[0] + 1])
            break
        used += chunk
        if trace:
            probes.append(draws)
    if trace:
        return used, np.concatenate(probes)
    return used


def random_search_mean(N: int, trials: int, seed: int, target: int = 0) -> float:
    """Mean queries of classical random search, one substream per trial."""
    total = 0
    for k in range(trials):
        total += classical_random_search(N, target, make_rng(seed, k))
    return total / trials


def sort_cost(N: int) -> int:
    """Charge for sorting the database once: N * ceil(log2 N) comparisons."""
    return N * max(0, (N - 1).bit_length())


def classical_sorted_search(N: int, target: int) -> int:
    """Bisection over the sorted database; exactly ceil(log2 N) queries for N > 1.

    The index range is padded to the next power of two so every branch of the
    search tree has the same depth.
    """
    if N < 1 or not 0 <= target < N:
        raise ValidationError(f"bad search instance N={N}, target={target}")
    depth = (N - 1).bit_length()
    lo, size = 0, 1 << depth
    queries = 0
    while size > 1:
        size //= 2
        queries += 1
        if target >= lo + size:
            lo += size
    assert lo == target
    return queries


@dataclass(frozen=True)
class WaveAnalogueResult:
    N: int
    steps: int
    spatial_cost: int
    final_probability: float
    degenerate: bool


def wave_analogue_search(N: int, target: int) -> WaveAnalogueResult:
    """Two-reflection dynamics on N explicitly stored real cells.

    Stops at the first step where the target intensity reaches the
    closed-form optimum (within 1e-9). N = 2 is degenerate: the intensity is
    1/2 forever, so the run stops at step 0 and sets ``degenerate``.
    """
    if N < 2:
        raise DomainError("wave analogue needs N >= 2")
    if not 0 <= target < N:
        raise ValidationError(f"target {target} outside [0, {N})")
    sched = optimal_queries(N)
    cells = np.full(N, 1.0 / math.sqrt(N))
    steps = 0
    limit = 2 * sched.Q_star + 2
    while cells[target] ** 2 <= sched.predicted_success - 1e-9 and steps < limit:
        cells[target] = -cells[target]
        cells = 2.0 * cells.mean() - cells
        steps += 1
    return WaveAnalogueResult(N, steps, cells.size, float(cells[target] ** 2), N == 2)


@dataclass
class HybridPlan:
    N: int
    branching: int
    stages: list = field(default_factory=list)
    total_queries: int = 0
    found: int | None = None


def hybrid_factorized_search(N: int, target: int, branching: int = 4, seed=None) -> HybridPlan:
    """Narrow N -> N/b -> N/b**2 ... with one small Grover search per level.

    Each level's oracle only answers "is the target in sub-block j?". For
    b = 4 a single query identifies the block with certainty.
    """
    if branching < 2:
        raise ValidationError("branching factor must be >= 2")
    levels = 0
    m = N
    while m > 1 and m % branching == 0:
        m //= branching
        levels += 1
    if m != 1 or levels == 0:
        raise ValidationError(f"N={N} is not a positive power of {branching}")
    if not 0 <= target < N:
        raise ValidationError(f"target {target} outside [0, {N})")
    rng = make_rng(seed)
    q = optimal_queries(branching).Q_star
    plan = HybridPlan(N, branching)
    lo, size = 0, N
    for _ in range(levels):
        block = size // branching
        oracle = Oracle((target - lo) // block, branching)
        state = grover_iterate(branching, oracle, q)
        pick = _measure_real(state.amplitudes, rng)
        lo += pick * block
        size = block
        plan.stages.append((size, oracle.calls))
        plan.total_queries += oracle.calls
    plan.found = lo
    return plan
