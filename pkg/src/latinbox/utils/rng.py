"""Seed handling. Every random object in latinbox is drawn from a numpy PCG64
generator; trial i of an experiment uses the substream (master_seed, i)."""
from __future__ import annotations

import numpy as np

Seed = int | np.random.Generator | None

def make_rng(seed: Seed) -> np.random.Generator:
    """Accepts an integer seed or an existing generator. A generator is used
    as is, so callers can thread one stream through several operations."""
    if isinstance(seed, np.random.Generator):
        return seed

    if seed is not None and (not isinstance(seed, (int, np.integer)) or seed < 0):
        raise ValueError(f"seed must be a non-negative integer, got {seed!r}")

    return np.random.Generator(np.random.PCG64(seed))

def derive_seed(master_seed: int, index: int) -> int:
    """Integer seed of substream index. Stable across platforms and numpy
    versions since it only depends on SeedSequence hashing."""
    seq = np.random.SeedSequence(int(master_seed), spawn_key=(int(index),))
    return int(seq.generate_state(1, dtype=np.uint64)[0])
