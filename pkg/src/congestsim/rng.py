"""Deterministic 64-bit randomness for node programs.

Every source of randomness in the simulated algorithms is a splitmix64
stream seeded from (root_seed, node_id, trial_index).  The derivation is
pure integer arithmetic so a run can be reproduced from its root seed on
any platform, and so a sequential driver can replay exactly the draws a
node made inside a simulation.
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """One splitmix64 mixing step (reference constants)."""
    z = (x + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_stream_seed(root_seed: int, node_id: int, trial: int = 0) -> int:
    """Mix (root_seed, node_id, trial) into one 64-bit stream seed.

    The three inputs are folded in one at a time so that distinct nodes and
    distinct trials get streams that are independent for all practical
    purposes even when the raw ids are small consecutive integers.
    """
    h = splitmix64(root_seed & MASK64)
    h = splitmix64(h ^ (node_id & MASK64))
    h = splitmix64(h ^ (trial & MASK64))
    return h


class Stream:
    """A splitmix64 generator with helpers for bounded draws."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection sampling, no modulo bias."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n

    def bit(self) -> int:
        return self.next_u64() >> 63
