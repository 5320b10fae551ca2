"""Deterministic 64-bit random number generation.

Every randomized operation in the library (train/test shuffling, k-fold
assignment, bootstrap resampling, per-split feature draws) runs on the
generators in this module rather than on OS entropy or ``random``/numpy
state, so identical seeds give bit-identical results on any platform and
are reproducible from the update equations alone.

Two primitives:

* SplitMix64: state advances by the odd constant 0x9E3779B97F4A7C15; each
  output is ``mix(state)`` with ``mix(z) = h(h(g(z)))`` where
  ``g(z) = (z ^ z>>30) * 0xBF58476D1CE4E5B9``,
  ``h(z) = (z ^ z>>27) * 0x94D049BB133111EB`` followed by ``z ^ z>>31``,
  all modulo 2**64. Used for seed expansion and stream derivation.

* xoshiro256**: 256-bit state, output ``rotl(s1 * 5, 7) * 9``; state update
  ``t = s1 << 17; s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t;
  s3 = rotl(s3, 45)``. The four state words are seeded from the first four
  SplitMix64 outputs of the 64-bit seed.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Child seed ``index`` of ``seed``: output ``index`` of the SplitMix64
    stream started at ``seed``.

    Used to give ensemble member ``i`` its own stream so results do not
    depend on the order (or parallelism) in which members are fitted.
    """
    if index < 0:
        raise ValueError("stream index must be non-negative")
    state = (seed + (index + 1) * _GAMMA) & _MASK64
    return _mix64(state)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256StarStar:
    """xoshiro256** stream for one seeded random sequence."""

    def __init__(self, seed: int):
        self._s = [derive_seed(seed & _MASK64, i) for i in range(4)]

    def next_uint64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def next_float(self) -> float:
        """Uniform in [0, 1) with 53 random bits."""
        return (self.next_uint64() >> 11) * 2.0 ** -53

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection sampling."""
        if n <= 0:
            raise ValueError("randbelow needs n >= 1")
        # largest multiple of n that fits in 64 bits; values at or above
        # it would skew the modulo and are redrawn
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            v = self.next_uint64()
            if v < limit:
                return v % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates: for i = n-1 .. 1, swap i with
        ``randbelow(i + 1)``."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_without_replacement(self, n: int, k: int) -> list[int]:
        """k distinct values from range(n) by a partial Fisher-Yates pass."""
        if not 0 <= k <= n:
            raise ValueError("need 0 <= k <= n")
        idx = list(range(n))
        for i in range(k):
            j = i + self.randbelow(n - i)
            idx[i], idx[j] = idx[j], idx[i]
        return idx[:k]

    def bootstrap_indices(self, n: int) -> list[int]:
        """n draws with replacement from range(n), in draw order."""
        return [self.randbelow(n) for _ in range(n)]
