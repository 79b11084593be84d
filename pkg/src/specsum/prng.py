"""Deterministic random-number plumbing shared by every stochastic operation.

All randomness in this package flows through numpy's Philox4x64-10 counter-based
generator, keyed through ``numpy.random.SeedSequence``. Philox is platform- and
word-order-stable, and SeedSequence spawn keys give a collision-resistant way to
derive independent streams from ``(seed, index, ...)`` paths, so parallel and
serial execution of the same experiment consume identical variates.
"""

from __future__ import annotations

import numpy as np

# Every CLI entry point and generator falls back to this seed when the caller
# does not supply one. Never replaced by wall-clock entropy.
DEFAULT_SEED = 42

GENERATOR_NAME = "Philox4x64-10 (numpy.random.Philox via SeedSequence)"


def make_rng(seed: int, *path: int) -> np.random.Generator:
    """Generator for stream ``path`` of the root ``seed``.

    ``path`` elements are nonnegative stream indices (row number, trial number,
    ...). Equal ``(seed, path)`` always yields an identical stream; distinct
    paths yield statistically independent streams.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: int, *path: int) -> int:
    """Collapse ``(seed, path)`` into a single 64-bit child seed.

    Used where an interface carries one integer seed (e.g. a per-trial
    measurement config) but the value must be reproducibly derived from a
    sweep-level seed and trial index.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(p) for p in path))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
