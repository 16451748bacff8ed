# src/rng.py
"""
Counter-based random streams. Every draw is addressed by (seed, *keys), so
trials and matrix rows can be generated in any order or thread and still
reproduce bit for bit.
"""
from typing import Optional

import numpy as np

STREAM_MATRIX = 0
STREAM_SIGNAL = 1
STREAM_NOISE = 2


def child_rng(seed: Optional[int], *keys: int) -> np.random.Generator:
    """Philox generator for the sub-stream keys of seed."""
    sequence = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.Philox(sequence))


def derive_seed(seed: Optional[int], *keys: int) -> int:
    """A 63-bit integer seed for the sub-stream keys of seed."""
    sequence = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in keys))
    return int(sequence.generate_state(1, dtype=np.uint64)[0]) >> 1
