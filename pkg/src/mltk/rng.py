"""Deterministic 64-bit PRNG used by all partitioning code.

The generator is defined arithmetically (an additive-counter mix with two
xor-multiply finalization rounds) so any implementation, in any language,
reproduces the exact same partition index lists from the same seed. Nothing
here depends on Python's `random` module or on numpy's bit generators.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_INCREMENT = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Counter-based generator: state advances by a fixed odd increment,
    outputs are a bijective mix of the state. All arithmetic mod 2**64."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _INCREMENT) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform draw in [0, bound) by rejection sampling on the high bits."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        bits = (bound - 1).bit_length()
        while True:
            value = self.next_u64() >> (64 - bits) if bits else 0
            if value < bound:
                return value

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, iterating from the last index down to 1."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
