"""Counter-based deterministic random numbers for shot sampling.

Every uniform draw is a pure function of the triple (seed, shot, draw), so
shots can be sampled in any order, in parallel, or re-derived individually
and the results are identical. The generator is three chained rounds of the
SplitMix64 finalizer over 64-bit wrap-around arithmetic:

    z0 = mix(seed + GAMMA)
    z1 = mix((z0 xor shot) + GAMMA)
    z2 = mix((z1 xor draw) + GAMMA)
    mix(z) = let z = (z xor z>>30) * 0xBF58476D1CE4E5B9
             let z = (z xor z>>27) * 0x94D049BB133111EB
             in  z xor z>>31

The top 53 bits of z2 become a uniform double in [0, 1). This algorithm is
frozen: changing it changes every seeded histogram.
"""
from __future__ import annotations

import numpy as np

_MASK = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_INV_2_53 = 2.0**-53


def _mix(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * _M1) & _MASK
    z = ((z ^ (z >> 27)) * _M2) & _MASK
    return z ^ (z >> 31)


def uniform(seed: int, shot: int, draw: int) -> float:
    """One uniform double in [0, 1) keyed by (seed, shot, draw)."""
    z = _mix((seed + _GAMMA) & _MASK)
    z = _mix((z ^ (shot & _MASK)) + _GAMMA)
    z = _mix((z ^ (draw & _MASK)) + _GAMMA)
    return (z >> 11) * _INV_2_53


def _mix_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def uniforms(seed: int, shots: np.ndarray, draw: int) -> np.ndarray:
    """Vectorized uniform(seed, shot, draw) over an array of shot indices."""
    gamma = np.uint64(_GAMMA)
    z0 = np.uint64(_mix((seed + _GAMMA) & _MASK))
    with np.errstate(over="ignore"):
        z = _mix_np((z0 ^ shots.astype(np.uint64)) + gamma)
        z = _mix_np((z ^ np.uint64(draw & _MASK)) + gamma)
    return (z >> np.uint64(11)) * _INV_2_53
