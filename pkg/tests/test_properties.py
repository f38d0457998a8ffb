"""Randomized invariants, each checked on at least 100 generated cases."""

import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from qwave import core, grover, qft, shor, walk
from qwave.core import QuantumRegister
from qwave.grover import Oracle, SearchState
from qwave.harness import ExperimentConfig, render, run_experiment
from qwave.walk import CoinedWalkState, Lattice

from _oracles import full_single_qubit

CASES = settings(max_examples=120, deadline=None)

seeds = st.integers(0, 2 ** 32 - 1)


def _state(seed, dim):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def _unitary(seed):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


# ---------------------------------------------------------------- norm conservation

@CASES
@given(n=st.integers(1, 7), seed=seeds, ops=st.lists(st.tuples(st.integers(0, 2), st.integers(0, 6),
                                                              st.integers(0, 6), st.floats(-7, 7)),
                                                    min_size=1, max_size=40))
def test_norm_conserved_by_gate_sequences(n, seed, ops):
    reg = QuantumRegister(n, _state(seed, 2 ** n))
    for i, (kind, a, b, angle) in enumerate(ops):
        a, b = a % n, b % n
        if kind == 0:
            core.apply_single_qubit(reg, _unitary(seed + i), a)
        elif a != b and kind == 1:
            core.apply_controlled_phase(reg, a, b, angle)
        elif a != b:
            core.apply_swap(reg, a, b)
    assert abs(reg.norm_squared() - 1) <= 1e-10 * len(ops)


@CASES
@given(n=st.integers(1, 8), seed=seeds)
def test_norm_conserved_by_qft(n, seed):
    reg = qft.qft_factorized(QuantumRegister(n, _state(seed, 2 ** n)))
    assert abs(reg.norm_squared() - 1) <= 1e-10


@CASES
@given(d=st.integers(1, 3), L=st.integers(2, 7), seed=seeds, steps=st.integers(1, 30))
def test_norm_conserved_by_walk(d, L, seed, steps):
    lat = Lattice(d, L)
    shape = (L,) * d + (2 * d,)
    st0 = CoinedWalkState(lat, _state(seed, lat.slots).reshape(shape))
    coin = "hadamard" if d == 1 else "grover"
    for _ in range(steps):
        st0 = walk.quantum_walk_step(st0, coin, "moving" if seed % 2 else "flipflop", marked=lat.site([seed % L] * d))
    assert abs(st0.norm_squared() - 1) <= 1e-12 * steps + 1e-14


# ---------------------------------------------------------------- linearity and brute force

@CASES
@given(n=st.integers(1, 6), seed=seeds, phases=st.tuples(st.floats(0, 2 * np.pi), st.floats(0, 2 * np.pi)))
def test_single_qubit_gate_linearity(n, seed, phases):
    u, v = _state(seed, 2 ** n), _state(seed + 1, 2 ** n)
    alpha, beta = np.exp(1j * phases[0]), np.exp(1j * phases[1])
    G = _unitary(seed + 2)
    t = seed % n

    def apply(vec):
        # registers hold unit vectors, so scale in and out
        c = np.linalg.norm(vec)
        reg = QuantumRegister(n, vec / c)
        return core.apply_single_qubit(reg, G, t).amplitudes * c

    np.testing.assert_allclose(apply(alpha * u + beta * v), alpha * apply(u) + beta * apply(v), atol=1e-12)
    np.testing.assert_allclose(apply(u), full_single_qubit(n, G, t) @ u, atol=1e-12)


# ---------------------------------------------------------------- involutions

@CASES
@given(N=st.integers(2, 300), seed=seeds)
def test_search_reflections_are_involutions(N, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=N)
    a /= np.linalg.norm(a)
    s = SearchState(a, Oracle(seed % N, N))
    twice_o = grover.oracle_reflect(grover.oracle_reflect(s))
    twice_d = grover.diffusion_reflect(grover.diffusion_reflect(s))
    np.testing.assert_allclose(twice_o.amplitudes, a, atol=1e-12)
    np.testing.assert_allclose(twice_d.amplitudes, a, atol=1e-12)
    assert abs(grover.diffusion_reflect(s).norm_squared() - 1) <= 1e-12
    assert abs(grover.oracle_reflect(s).norm_squared() - 1) <= 1e-12
    assert s.oracle.calls == 3


@CASES
@given(n=st.integers(1, 6), seed=seeds)
def test_hadamard_is_involution(n, seed):
    v = _state(seed, 2 ** n)
    reg = QuantumRegister(n, v)
    q = seed % n
    core.hadamard(core.hadamard(reg, q), q)
    np.testing.assert_allclose(reg.amplitudes, v, atol=1e-12)


@CASES
@given(d=st.integers(1, 3), seed=seeds, steps=st.integers(1, 40))
def test_walk_step_reversible(d, seed, steps):
    lat = Lattice(d, 4)
    shape = (4,) * d + (2 * d,)
    st0 = CoinedWalkState(lat, _state(seed, lat.slots).reshape(shape))
    coin = "hadamard" if d == 1 else "grover"
    shift = "flipflop" if seed % 2 else "moving"
    marked = lat.site([seed % 4] * d)
    s = st0
    for _ in range(steps):
        s = walk.quantum_walk_step(s, coin, shift, marked)
    for _ in range(steps):
        s = walk.quantum_walk_step_inverse(s, coin, shift, marked)
    np.testing.assert_allclose(s.amplitudes, st0.amplitudes, atol=1e-10)


# ---------------------------------------------------------------- two-dimensional subspace

@CASES
@given(N=st.integers(3, 2000), seed=seeds, extra=st.integers(0, 10))
def test_grover_two_dimensional_subspace(N, seed, extra):
    t = seed % N
    Q = grover.optimal_queries(N).Q_star + extra
    _, steps = grover.grover_iterate(N, Oracle(t, N), Q, trace=True)
    u = np.full(N, 1 / math.sqrt(N))
    e = np.zeros(N)
    e[t] = 1
    basis, _ = np.linalg.qr(np.stack([u, e], axis=1))
    worst = max(np.linalg.norm(v - basis @ (basis.T @ v)) for v in steps)
    assert worst <= 1e-10
    theta = math.asin(1 / math.sqrt(N))
    assert abs(steps[-1][t] - math.sin((2 * Q + 1) * theta)) <= 1e-10


# ---------------------------------------------------------------- translation invariance

@CASES
@given(d=st.integers(1, 3), L=st.integers(3, 9), seed=seeds, steps=st.integers(0, 12))
def test_walk_translation_invariance(d, L, seed, steps):
    lat = Lattice(d, L)
    rng = np.random.default_rng(seed)
    o = tuple(int(x) for x in rng.integers(0, L, size=d))
    coin = "hadamard" if d == 1 else "grover"
    a = CoinedWalkState.localized(lat)
    b = CoinedWalkState.localized(lat, o)
    for _ in range(steps):
        a = walk.quantum_walk_step(a, coin)
        b = walk.quantum_walk_step(b, coin)
    np.testing.assert_array_equal(np.roll(a.site_probabilities(), o, axis=tuple(range(d))), b.site_probabilities())


# ---------------------------------------------------------------- continued fractions

@CASES
@given(r=st.integers(2, 64), k=st.integers(1, 10 ** 6), nudge=st.sampled_from([-1, 0, 1]))
def test_continued_fraction_recovers_reduced_period(r, k, nudge):
    k = k % r
    while k == 0 or math.gcd(k, r) != 1:
        k = (k + 1) % r
    M, Q = 64, 1 << 12
    assert Q >= M * M
    y = round(k * Q / r)
    # one step off the nearest integer is still allowed when it stays within 1/(2Q)
    if abs((y + nudge) / Q - k / r) <= 1 / (2 * Q):
        y += nudge
    assert abs(y / Q - k / r) <= 1 / (2 * Q)
    assert r in shor.continued_fraction_period(y, Q, M)


# ---------------------------------------------------------------- reproducibility

@CASES
@given(seed=st.integers(0, 2 ** 63 - 1), N=st.integers(2, 64), trials=st.integers(1, 20))
def test_grover_experiment_reproducible(seed, N, trials):
    cfg = ExperimentConfig("grover", {"n": N, "target": seed % N, "queries": "auto", "trials": trials}, seed)
    a, b = run_experiment(cfg), run_experiment(cfg)
    assert a.status == 0 and a.payload == b.payload
    assert f'"seed": {seed}' in a.payload


@CASES
@given(seed=seeds, n=st.integers(1, 6))
def test_measurement_reproducible(seed, n):
    v = _state(seed, 2 ** n)
    outs = [core.measure_all(QuantumRegister(n, v), seed).basis_index for _ in range(2)]
    assert outs[0] == outs[1]
    assert abs(v[outs[0]]) > 0


@CASES
@given(seed=seeds, rows=st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=5))
def test_csv_floats_round_trip(seed, rows):
    cfg = ExperimentConfig("grover", {"n": 2, "target": 0, "queries": 0, "trials": 1}, seed)
    text = render(cfg, ["x"], [{"x": x} for x in rows])
    body = text.splitlines()[2:]
    assert [float(line) for line in body] == [float(x) for x in rows]
