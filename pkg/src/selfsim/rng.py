"""Deterministic 64-bit random number generation.

The generator is SplitMix64 (Vigna's reference construction): a 64-bit
counter advanced by the golden-gamma constant, finalized by two
xor-multiply-shift rounds.  It is seedable and portable.  All stochastic
behavior in the toolkit (zoom-out sampling, random walks, the search
command) draws from this generator so runs replay exactly.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4B7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def splitmix64_next(state: int) -> tuple[int, int]:
    """Advance one step: returns (new_state, output)."""
    state = (state + _GAMMA) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    z = z ^ (z >> 31)
    return state, z


class SplitMix64:
    """Stateful wrapper around :func:`splitmix64_next`."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state, out = splitmix64_next(self.state)
        return out

    def next_below(self, n: int) -> int:
        """Uniform integer in [0, n) via the multiply-high reduction."""
        if n <= 0:
            raise ValueError("n must be positive")
        return (self.next_u64() * n) >> 64

    def next_unit(self) -> float:
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (2.0**-53)
