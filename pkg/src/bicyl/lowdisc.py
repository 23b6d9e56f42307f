"""Sobol points in two and three dimensions with an optional seeded digital shift.

Direction numbers are the Joe & Kuo (2008) ``new-joe-kuo-6.21201`` values for
the first three coordinates. Points are produced in Gray-code order, so the
first ``2**m`` points form a (t, m, s)-net exactly as in the usual
Antonov-Saleev construction.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

BITS = 32
MAX_LOG2 = 30
DIMENSIONS = (2, 3)

# (degree s, coefficient a, initial m_1..m_s); dimension 1 is the van der Corput sequence.
_JOE_KUO = (
    None,
    (1, 0, (1,)),
    (2, 1, (1, 3)),
)

_SCALE = 1.0 / 2.0**BITS


def _direction_numbers(dim_index: int) -> np.ndarray:
    """``V[j]`` for ``j = 0..BITS-1`` as integers scaled by ``2**BITS``."""
    v = np.zeros(BITS, dtype=np.uint64)
    if dim_index == 0:
        for j in range(BITS):
            v[j] = 1 << (BITS - 1 - j)
        return v
    s, a, m_init = _JOE_KUO[dim_index]
    m = list(m_init)
    for j in range(s, BITS):
        new = m[j - s] ^ (m[j - s] << s)
        for k in range(1, s):
            if (a >> (s - 1 - k)) & 1:
                new ^= m[j - k] << k
        m.append(new)
    for j in range(BITS):
        v[j] = m[j] << (BITS - 1 - j)
    return v


@lru_cache(maxsize=None)
def _directions(dimension: int) -> np.ndarray:
    out = np.stack([_direction_numbers(i) for i in range(dimension)], axis=1)
    out.flags.writeable = False
    return out


def sobol_integers(dimension: int, start: int, count: int) -> np.ndarray:
    """Raw 32-bit Sobol digits for indices ``start .. start+count-1``, shape (count, dimension)."""
    if dimension not in DIMENSIONS:
        raise ValueError(f"dimension must be one of {DIMENSIONS}, got {dimension!r}")
    if start < 0 or count < 0 or start + count > 2**MAX_LOG2:
        raise ValueError("index range exceeds the supported 2**30 points")
    v = _directions(dimension)
    idx = np.arange(start, start + count, dtype=np.uint64)
    gray = idx ^ (idx >> np.uint64(1))
    out = np.zeros((count, dimension), dtype=np.uint64)
    top = int(start + count).bit_length()
    for j in range(top):
        bit = (gray >> np.uint64(j)) & np.uint64(1)
        out ^= bit[:, None] * v[j]
    return out


@lru_cache(maxsize=8)
def _cached_block(dimension: int, m: int) -> np.ndarray:
    # reflected Gray code: gray(2**k + j) = 2**k | gray(2**k - 1 - j)
    v = _directions(dimension)
    block = np.zeros((1 << m, dimension), dtype=np.uint64)
    for k in range(m):
        lo = 1 << k
        np.bitwise_xor(block[lo - 1 :: -1][:lo], v[k], out=block[lo : 2 * lo])
    block.flags.writeable = False
    return block


def digital_shift(seed: int, dimension: int) -> np.ndarray:
    """Per-coordinate 32-bit XOR mask derived from ``seed``."""
    rng = np.random.default_rng(seed)
    return rng.integers(0, 2**BITS, size=dimension, dtype=np.uint64)


class SobolSampler:
    """Stateful Sobol generator.

    Each call to :meth:`random_base2` returns the next ``2**m`` points and
    advances the cursor. With ``scramble_seed`` set, every coordinate is XORed
    with a fixed seeded mask (a random digital shift), which keeps the net
    structure of every aligned block.
    """

    def __init__(self, dimension: int, scramble_seed: int | None = None):
        if dimension not in DIMENSIONS:
            raise ValueError(f"dimension must be one of {DIMENSIONS}, got {dimension!r}")
        self.dimension = dimension
        self.scramble_seed = scramble_seed
        self.cursor = 0
        self._shift = None if scramble_seed is None else digital_shift(scramble_seed, dimension)

    def random_base2(self, m: int) -> np.ndarray:
        if not (isinstance(m, (int, np.integer)) and 1 <= m <= MAX_LOG2):
            raise ValueError(f"m must be an integer in [1, {MAX_LOG2}], got {m!r}")
        n = 1 << int(m)
        if self.cursor == 0 and m <= 24:
            ints = _cached_block(self.dimension, int(m))
        else:
            ints = sobol_integers(self.dimension, self.cursor, n)
        if self._shift is not None:
            ints = ints ^ self._shift
        self.cursor += n
        return ints.astype(np.float64) * _SCALE

    def random(self, n: int) -> np.ndarray:
        """``n`` points, drawn as the smallest power-of-two block and truncated."""
        if n < 1:
            raise ValueError(f"n must be positive, got {n!r}")
        m = max(1, (int(n) - 1).bit_length())
        return self.random_base2(m)[:n]


def sobol_points(dimension: int, m: int, scramble_seed: int | None = None) -> np.ndarray:
    """First ``2**m`` points of the (optionally shifted) Sobol sequence, shape (2**m, dimension)."""
    return SobolSampler(dimension, scramble_seed).random_base2(m)
