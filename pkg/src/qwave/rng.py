"""Seeded random streams.

All randomness goes through Philox (a counter-based bit generator) keyed by
``(seed, stream)``, so trial ``k`` of a run sees the same numbers no matter
how many other trials ran before it or in which order.
"""

from __future__ import annotations

import numpy as np

RNG_NAME = "philox-seedseq"
RNG_VERSION = 1


def make_rng(seed: int | np.random.Generator | None, stream: int | None = None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        seed = 0
    if int(seed) < 0:
        raise ValueError("seed must be non-negative")
    key = () if stream is None else (int(stream),)
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=key)
    return np.random.Generator(np.random.Philox(ss))


def trial_rngs(seed: int, trials: int):
    """Yield one independent generator per trial index."""
    for k in range(trials):
        yield make_rng(seed, k)
