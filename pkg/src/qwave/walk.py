"""Discrete-time coined walks on periodic d-dimensional lattices.

Amplitudes live in an array of shape ``(L,)*d + (2*d,)``. Direction slot
``2*k`` points along ``+e_k`` and slot ``2*k + 1`` along ``-e_k``.

Two coins are provided. The Grover coin ``(1/d) J - I`` reflects about the
uniform direction vector. The Hadamard coin is for ``d == 1`` only. There are
two shifts as well:

* ``moving``   -- each direction component hops one site along its own axis
* ``flipflop`` -- it hops and then reverses its direction label

Spreading experiments use the moving shift. Marked-vertex search pairs the
Grover coin with the flip-flop shift. With the moving shift the Grover walk
never concentrates on the marked site. In d = 1 the Grover coin is a pure
swap, so search there uses the Hadamard coin with the moving shift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError, ValidationError
from .fitting import ScalingRecord
from .rng import make_rng

MAX_SLOTS = 1 << 24
COINS = ("grover", "hadamard")
SHIFTS = ("moving", "flipflop")
PEAK_PROMINENCE = 0.5

_H = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)


@dataclass(frozen=True)
class Lattice:
    d: int
    L: int

    def __post_init__(self):
        if self.d < 1 or self.L < 2:
            raise ValidationError(f"lattice needs d >= 1 and L >= 2, got d={self.d}, L={self.L}")
        if self.slots > MAX_SLOTS:
            raise ResourceLimitError(f"{self.slots} amplitude slots exceed the {MAX_SLOTS} limit")

    @property
    def N(self) -> int:
        return self.L ** self.d

    @property
    def ndir(self) -> int:
        return 2 * self.d

    @property
    def slots(self) -> int:
        return self.N * self.ndir

    def site(self, coords) -> tuple:
        if coords is None:
            return (0,) * self.d
        c = tuple(int(v) % self.L for v in np.atleast_1d(coords))
        if len(c) != self.d:
            raise ValidationError(f"site needs {self.d} coordinates")
        return c

    def squared_distance(self) -> np.ndarray:
        """Minimal-image squared distance of every site from the origin."""
        c = np.arange(self.L)
        r2 = np.minimum(c, self.L - c) ** 2
        out = np.zeros((self.L,) * self.d)
        for ax in range(self.d):
            shape = [1] * self.d
            shape[ax] = self.L
            out = out + r2.reshape(shape)
        return out


@dataclass
class CoinedWalkState:
    lattice: Lattice
    amplitudes: np.ndarray

    @classmethod
    def localized(cls, lattice: Lattice, site=None, coin_state=None) -> "CoinedWalkState":
        amps = np.zeros((lattice.L,) * lattice.d + (lattice.ndir,), dtype=np.complex128)
        if coin_state is None:
            coin_state = np.full(lattice.ndir, 1.0 / math.sqrt(lattice.ndir))
        coin_state = np.asarray(coin_state, dtype=np.complex128)
        if coin_state.shape != (lattice.ndir,):
            raise ValidationError(f"coin state needs {lattice.ndir} entries")
        amps[lattice.site(site)] = coin_state / np.linalg.norm(coin_state)
        return cls(lattice, amps)

    @classmethod
    def uniform(cls, lattice: Lattice) -> "CoinedWalkState":
        amps = np.full((lattice.L,) * lattice.d + (lattice.ndir,), 1.0 / math.sqrt(lattice.slots), dtype=np.complex128)
        return cls(lattice, amps)

    def site_probabilities(self) -> np.ndarray:
        a = self.amplitudes
        return (a.real ** 2 + a.imag ** 2).sum(axis=-1)

    def norm_squared(self) -> float:
        return float(self.site_probabilities().sum())

    def copy(self) -> "CoinedWalkState":
        return CoinedWalkState(self.lattice, self.amplitudes.copy())


def _check_coin(coin: str, d: int):
    if coin not in COINS:
        raise ValidationError(f"unknown coin {coin!r}")
    if coin == "hadamard" and d != 1:
        raise ValidationError("the Hadamard coin is only defined for d = 1")


def apply_coin(amps: np.ndarray, coin: str, d: int) -> np.ndarray:
    _check_coin(coin, d)
    if coin == "grover":
        return amps.sum(axis=-1, keepdims=True) / d - amps
    return amps @ _H.T


def apply_shift(amps: np.ndarray, d: int, shift: str = "moving", inverse: bool = False) -> np.ndarray:
    if shift not in SHIFTS:
        raise ValidationError(f"unknown shift {shift!r}")
    out = np.empty_like(amps)
    sgn = -1 if inverse else 1
    for ax in range(d):
        plus, minus = 2 * ax, 2 * ax + 1
        if shift == "moving":
            out[..., plus] = np.roll(amps[..., plus], sgn, axis=ax)
            out[..., minus] = np.roll(amps[..., minus], -sgn, axis=ax)
        elif not inverse:
            out[..., minus] = np.roll(amps[..., plus], 1, axis=ax)
            out[..., plus] = np.roll(amps[..., minus], -1, axis=ax)
        else:
            out[..., plus] = np.roll(amps[..., minus], -1, axis=ax)
            out[..., minus] = np.roll(amps[..., plus], 1, axis=ax)
    return out


def quantum_walk_step(state: CoinedWalkState, coin: str = "grover", shift: str = "moving", marked=None) -> CoinedWalkState:
    """Coin at every site, then shift. ``marked`` negates that site's amplitudes first."""
    d = state.lattice.d
    amps = state.amplitudes
    if marked is not None:
        amps = amps.copy()
        amps[marked] = -amps[marked]
    amps = apply_coin(amps, coin, d)
    return CoinedWalkState(state.lattice, apply_shift(amps, d, shift))


def quantum_walk_step_inverse(state: CoinedWalkState, coin: str = "grover", shift: str = "moving", marked=None) -> CoinedWalkState:
    # both coins and the marked sign flip are involutions
    d = state.lattice.d
    amps = apply_coin(apply_shift(state.amplitudes, d, shift, inverse=True), coin, d)
    if marked is not None:
        amps[marked] = -amps[marked]
    return CoinedWalkState(state.lattice, amps)


@dataclass(frozen=True)
class SpreadRecord:
    t: int
    sigma: float
    wrapped: bool = False


def _wrapped(L: int, t: int) -> bool:
    return 2 * t >= L


def classical_walk_spread(d: int, L: int, t_max: int, trials: int, seed: int = 0) -> list[SpreadRecord]:
    """RMS displacement of a simple random walk, one PRNG substream per trial."""
    if d < 1 or L < 2 or t_max < 1 or trials < 1:
        raise ValidationError("classical_walk_spread needs d, t_max, trials >= 1 and L >= 2")
    acc = np.zeros(t_max)
    for k in range(trials):
        moves = make_rng(seed, k).integers(0, 2 * d, size=t_max)
        r2 = np.zeros(t_max)
        for ax in range(d):
            step = (moves == 2 * ax).astype(np.int64) - (moves == 2 * ax + 1)
            c = np.cumsum(step) % L
            r2 += np.minimum(c, L - c) ** 2
        acc += r2
    sig = np.sqrt(acc / trials)
    return [SpreadRecord(t, float(sig[t - 1]), _wrapped(L, t)) for t in range(1, t_max + 1)]


def quantum_walk_spread(d: int, L: int, t_max: int, coin: str | None = None, shift: str = "moving") -> list[SpreadRecord]:
    """Exact RMS displacement of a coined walk started at the origin.

    The initial coin state is uniform over the 2d directions. No sampling.
    """
    coin = coin or ("hadamard" if d == 1 else "grover")
    lat = Lattice(d, L)
    _check_coin(coin, d)
    r2 = lat.squared_distance()
    state = CoinedWalkState.localized(lat)
    out = []
    for t in range(1, t_max + 1):
        state = quantum_walk_step(state, coin, shift)
        sigma = math.sqrt(float((state.site_probabilities() * r2).sum()))
        out.append(SpreadRecord(t, sigma, _wrapped(L, t)))
    return out


@dataclass
class SearchTrace:
    N: int
    probabilities: np.ndarray
    T_peak: int | None
    p_peak: float | None

    @property
    def found_peak(self) -> bool:
        return self.T_peak is not None


def find_peak(p: np.ndarray, prominence: float = PEAK_PROMINENCE) -> tuple[int | None, float | None]:
    """First local maximum (t >= 1) reaching ``prominence`` times the trace maximum.

    ``p[t]`` is the marked-site probability after ``t`` steps. Small ripples
    before the real peak are skipped because they fall under the threshold.
    """
    if p.size < 3:
        return None, None
    tail = p[1:]
    thr = prominence * tail.max()
    for t in range(1, p.size - 1):
        if p[t] >= p[t - 1] and p[t] > p[t + 1] and p[t] >= thr:
            return t, float(p[t])
    return None, None


def default_search_steps(lattice: Lattice) -> int:
    N = lattice.N
    return int(math.ceil(2.0 * max(N ** (1.0 / lattice.d), math.sqrt(N)) * math.log2(max(N, 4))))


def spatial_search(lattice: Lattice, marked_site=None, t_max: int | None = None, coin: str | None = None,
                   shift: str | None = None, perturb: bool = True) -> SearchTrace:
    """Marked-vertex search from the uniform state.

    Each step negates every direction amplitude at the marked site, then
    applies the coin everywhere and the shift. ``perturb=False`` turns the
    oracle off and only records the probability at ``marked_site``.
    """
    coin = coin or ("hadamard" if lattice.d == 1 else "grover")
    if shift is None:
        shift = "flipflop" if coin == "grover" else "moving"
    _check_coin(coin, lattice.d)
    t_max = default_search_steps(lattice) if t_max is None else int(t_max)
    if t_max < 1:
        raise ValidationError("t_max must be >= 1")
    m = lattice.site(marked_site)
    state = CoinedWalkState.uniform(lattice)
    p = np.empty(t_max + 1)
    p[0] = float(np.sum(np.abs(state.amplitudes[m]) ** 2))
    for t in range(1, t_max + 1):
        state = quantum_walk_step(state, coin, shift, marked=m if perturb else None)
        p[t] = float(np.sum(np.abs(state.amplitudes[m]) ** 2))
    T, pk = find_peak(p)
    return SearchTrace(lattice.N, p, T, pk)


def search_cost(T_peak: int, p_peak: float) -> float:
    """Expected steps to succeed by rerunning a T_peak-step walk: T_peak / p_peak.

    Repetition here is classical. Amplitude amplification would need a
    reflection about the spread-out start state, and a local walk cannot
    perform that in O(1) steps.
    """
    return T_peak / p_peak


def scaling_experiment(d: int, L_list, t_max: int | None = None) -> list[ScalingRecord]:
    records = []
    for L in L_list:
        lat = Lattice(d, int(L))
        tr = spatial_search(lat, t_max=t_max)
        if not tr.found_peak:
            raise ValidationError(f"no marked-site peak within t_max for d={d}, L={L}")
        records.append(ScalingRecord(
            N=lat.N,
            cost=search_cost(tr.T_peak, tr.p_peak),
            unit="walk steps",
            success=tr.p_peak,
            extra={
                "d": d,
                "L": int(L),
                "T_peak": tr.T_peak,
                "p_peak": tr.p_peak,
                "T_eff": search_cost(tr.T_peak, tr.p_peak),
                "T_amplified": tr.T_peak / math.sqrt(tr.p_peak),
                "t_max": tr.probabilities.size - 1,
            },
        ))
    return records
