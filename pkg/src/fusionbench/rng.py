"""Seeded random streams.

All randomness goes through a single, named bit generator so that a seed
means the same thing on every machine running the same numpy major version.
"""

import numpy as np

RNG_NAME = "numpy.Philox4x64-10"


def make_rng(seed):
    """Return a Generator backed by the counter-based Philox bit generator."""
    return np.random.Generator(np.random.Philox(int(seed)))


def spawn_seeds(seed, count):
    """Derive `count` independent child seeds from a master seed."""
    children = np.random.SeedSequence(int(seed)).spawn(count)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]
