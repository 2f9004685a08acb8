"""Deterministic PRNG for fold assignment.

SplitMix64 (Steele, Lea & Flood 2014): a 64-bit-state generator with a
fixed, trivially portable update, so fold assignments can be reproduced
bit-for-bit by any implementation that follows the same recipe.  Not
intended for anything beyond shuffling indices.
"""

_MASK = (1 << 64) - 1


class SplitMix64:
    """64-bit SplitMix64 stream seeded with an unsigned integer."""

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError("seed must be an unsigned integer")
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (_MASK + 1) - ((_MASK + 1) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle, iterating i = len-1 .. 1."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
