"""Deterministic keyed random streams built on splitmix64 mixing.

Every random quantity in the package is derived from a 64-bit key that is a
pure function of a master seed and a tuple of integer stream labels.  Each
stream yields exactly one variate (by inversion of its distribution's CDF),
so results never depend on evaluation order, chunking, or thread schedule.

The mixing function is the splitmix64 finalizer; a stream key is obtained by
folding each label into the state with a golden-ratio multiply followed by a
remix.  Scalar (arbitrary-precision int) and numpy (uint64) implementations
are provided and produce identical values.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB

# one double in [0, 1) from the top 53 bits of a 64-bit word
_INV53 = 1.0 / (1 << 53)


def mix64(z: int) -> int:
    """splitmix64 finalizer: a bijective scramble of a 64-bit integer."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX_A) & _MASK
    z = ((z ^ (z >> 27)) * _MIX_B) & _MASK
    return z ^ (z >> 31)


def substream_key(seed: int, *labels: int) -> int:
    """64-bit key of the substream of ``seed`` addressed by integer labels.

    ``substream_key(s)`` initialises the chain; each label is folded in with
    a golden-ratio multiply and remixed, so (seed, a, b) and (seed, a', b')
    collide only if the label tuples collide under the scramble.
    """
    z = mix64((seed + _GOLDEN) & _MASK)
    for lab in labels:
        z = mix64(z ^ ((lab * _GOLDEN) & _MASK))
    return z


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX_A)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX_B)
    return z ^ (z >> np.uint64(31))


def substream_keys(seed: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorized ``substream_key(seed, a_i, b_i)`` over label arrays."""
    z0 = np.uint64(substream_key(seed))
    golden = np.uint64(_GOLDEN)
    with np.errstate(over="ignore"):
        za = _mix64_np(z0 ^ (a.astype(np.uint64) * golden))
        return _mix64_np(za ^ (b.astype(np.uint64) * golden))


def uniform_from_key(key: int) -> float:
    """The single double in [0, 1) carried by a stream key."""
    return (key >> 11) * _INV53


def uniforms_from_keys(keys: np.ndarray) -> np.ndarray:
    """Vectorized :func:`uniform_from_key`."""
    return (keys >> np.uint64(11)).astype(np.float64) * _INV53
