"""Window factories, including a reproducible counter-based random window.

Random windows use SplitMix64 in counter mode so that the same seed yields
the same window in any language.  For seed ``s`` the ``i``-th 64-bit output
is ``mix(s + (i + 1) * 0x9E3779B97F4A7C15 mod 2**64)`` with the usual
SplitMix64 finalizer; a uniform double in ``[0, 1)`` is ``(out >> 11) *
2**-53``.  Entry ``k`` of the window is ``(2 u(2k) - 1) + i (2 u(2k+1) - 1)``.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError
from .groups import FiniteAbelianGroup

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(seed: int, i: int) -> int:
    z = (seed + (i + 1) * _GOLDEN) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def uniform(seed: int, count: int) -> np.ndarray:
    """``count`` doubles in [0, 1) from counters 0..count-1."""
    if seed < 0:
        raise InvalidInputError("seed must be non-negative")
    seed &= _MASK
    return np.array([(splitmix64(seed, i) >> 11) * 2.0 ** -53 for i in range(count)])


def random_window(group: FiniteAbelianGroup, seed: int) -> np.ndarray:
    u = uniform(seed, 2 * group.order)
    return (2 * u[0::2] - 1) + 1j * (2 * u[1::2] - 1)


def delta(group: FiniteAbelianGroup, at=0) -> np.ndarray:
    g = np.zeros(group.order, dtype=complex)
    g[group.index(at)] = 1.0
    return g


def constant(group: FiniteAbelianGroup, value: complex = 1.0) -> np.ndarray:
    return np.full(group.order, value, dtype=complex)


def indicator(group: FiniteAbelianGroup, elements) -> np.ndarray:
    g = np.zeros(group.order, dtype=complex)
    g[[group.index(e) for e in elements]] = 1.0
    return g
