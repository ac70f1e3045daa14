"""Deterministic seeding: FNV-1a keyed splitmix64."""
from __future__ import annotations

import math

MASK64 = (1 << 64) - 1
FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def fnv1a64(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & MASK64
    return h


def splitmix64_mix(z: int) -> int:
    """One splitmix64 step applied to ``z``: add the gamma, then finalize."""
    z = (z + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(global_seed: int, key: str) -> int:
    """64-bit seed for ``key`` under ``global_seed``.

    Depends only on the key text, never on paths or iteration order.
    """
    return splitmix64_mix((int(global_seed) & MASK64) ^ fnv1a64(key.encode("utf-8")))


class SplitMix64:
    """The package's only random source.

    >>> rng = SplitMix64(42)
    >>> 0.0 <= rng.uniform() < 1.0
    True
    """

    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next64(self) -> int:
        out = splitmix64_mix(self.state)
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return out

    def uniform(self) -> float:
        """Real in ``[0, 1)`` with 53 random bits."""
        return (self.next64() >> 11) * 2.0 ** -53

    def randint(self, lo: int, hi: int) -> int:
        """Integer uniform on ``lo..hi`` inclusive."""
        if hi < lo:
            raise ValueError(f"empty range {lo}..{hi}")
        span = hi - lo + 1
        return lo + min(span - 1, int(self.uniform() * span))

    def log_uniform(self, lo: float, hi: float) -> float:
        return math.exp(math.log(lo) + self.uniform() * (math.log(hi) - math.log(lo)))

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, high index downwards."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]
