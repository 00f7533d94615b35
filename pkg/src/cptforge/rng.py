"""Deterministic random streams.

All sampling in this package goes through counter-based Philox generators:
seeded streams replay bit-identically, and independent substreams for
concurrent work are derived by spawning the seed sequence.
"""

from __future__ import annotations

import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def substreams(seed: int, k: int) -> list[np.random.Generator]:
    """k independent generators derived deterministically from one seed."""
    children = np.random.SeedSequence(seed).spawn(k)
    return [np.random.Generator(np.random.Philox(child)) for child in children]
