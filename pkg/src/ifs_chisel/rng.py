"""Deterministic random stream based on the splitmix64 generator.

splitmix64 is counter-based: output k of the stream for a given seed is
``mix(seed + (k + 1) * GOLDEN)`` with all arithmetic modulo 2**64, so any
slice of the stream can be produced independently and the same (seed, index)
pair yields the same value in every implementation and language.
"""

from __future__ import annotations

import numpy as np

GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def splitmix64(seed, start, count):
    """Return stream outputs start .. start+count-1 as a uint64 array."""
    ks = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + ks * np.uint64(GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
    return z


def uniform01(seed, start, count):
    """Uniform doubles in [0, 1): top 53 bits of each stream output."""
    bits = splitmix64(seed, start, count) >> np.uint64(11)
    return bits.astype(np.float64) * 2.0**-53
