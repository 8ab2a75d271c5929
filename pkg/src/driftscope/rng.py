"""Seeded random number generation.

Every sampling operation in the package draws from a PCG64 generator built
here, and artifacts that depend on randomness persist the algorithm name next
to the seed. Pinning the bit generator explicitly (rather than relying on
numpy's default_rng alias) keeps outputs reproducible across numpy versions
and platforms.
"""

import numpy as np

PRNG_ALGORITHM = "pcg64"


def make_rng(seed: int) -> np.random.Generator:
    """Return the package-wide generator for a given integer seed."""
    return np.random.Generator(np.random.PCG64(seed))
