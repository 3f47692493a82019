"""Counter-based randomness with stateless per-task seed derivation.

All randomness in the package flows through Philox generators keyed by a
64-bit seed.  Parallel work derives one independent seed per task from the
master seed and the task's index path via a splitmix64-style hash, so
results never depend on scheduling order or worker count.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
# Second Philox key word; a fixed domain constant separating this package's
# streams from any other Philox user with the same seed.
_KEY_CONST = 0x67AE6C7E1C2B9D4F


def _mix(x: int) -> int:
    x &= _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def derive(master: int, *indices: int) -> int:
    """Hash a master seed and an index path into a 64-bit seed.

    derive(s) != derive(s, 0) in general; the path length is part of the
    input, so nested derivations do not collide across levels.
    """
    x = int(master) & _MASK
    x = _mix(x + _GOLDEN)
    for ix in indices:
        x = _mix(x ^ ((int(ix) & _MASK) * 0xD1B54A32D192ED03 + _GOLDEN) & _MASK)
    return x


def generator(seed: int) -> np.random.Generator:
    """Philox generator for a derived 64-bit seed."""
    return np.random.Generator(np.random.Philox(key=[int(seed) & _MASK, _KEY_CONST]))
