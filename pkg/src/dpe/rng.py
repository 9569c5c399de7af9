"""Reproducible 64-bit random streams for parallel trials.

The generator is xorshift64* with the state derived from (seed, stream_index)
by two rounds of the splitmix64 finalizer, so any trial can be regenerated in
isolation and trials may run in any order or in parallel. All arithmetic is
64-bit modular integer work plus IEEE doubles, hence identical across
platforms. Normal variates come from the Box-Muller transform with the spare
value cached.

Exact derivation, for reimplementation elsewhere:

    state = mix64(mix64((seed + (stream_index + 1) * 0x9E3779B97F4A7C15) mod 2^64))
    if state == 0: state = 0x9E3779B97F4A7C15

    mix64(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
              z *= 0x94D049BB133111EB; z ^= z >> 31      (all mod 2^64)

    next_u64(): state ^= state >> 12; state ^= state << 25; state ^= state >> 27;
                return (state * 0x2545F4914F6CDD1D) mod 2^64

    uniform()  = (next_u64() >> 11) * 2^-53                 in [0, 1)
    normal(): u1 = 1 - uniform() in (0, 1]; u2 = uniform();
              r = sqrt(-2 ln u1); return r*cos(2 pi u2), caching r*sin(2 pi u2)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_TWO_TO_MINUS_53 = 2.0**-53


def _mix64(z: int) -> int:
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK
    z ^= z >> 31
    return z


@dataclass
class RngStream:
    """Deterministic stream of draws identified by (seed, stream_index)."""

    seed: int
    stream_index: int = 0
    _state: int = field(init=False, repr=False)
    _spare_normal: float | None = field(init=False, default=None, repr=False)

    def __post_init__(self):
        z = (self.seed + (self.stream_index + 1) * _GAMMA) & _MASK
        z = _mix64(_mix64(z))
        self._state = z if z != 0 else _GAMMA

    def next_u64(self) -> int:
        x = self._state
        x ^= x >> 12
        x = (x ^ (x << 25)) & _MASK
        x ^= x >> 27
        self._state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK

    def uniform(self) -> float:
        """Uniform double in [0, 1) built from the top 53 bits."""
        return (self.next_u64() >> 11) * _TWO_TO_MINUS_53

    def bit(self) -> int:
        """Single fair bit (the top bit of the next word)."""
        return self.next_u64() >> 63

    def normal(self) -> float:
        """Standard normal via Box-Muller; consumes two uniforms per pair."""
        if self._spare_normal is not None:
            value = self._spare_normal
            self._spare_normal = None
            return value
        u1 = 1.0 - self.uniform()  # (0, 1], keeps the log finite
        u2 = self.uniform()
        radius = math.sqrt(-2.0 * math.log(u1))
        theta = 2.0 * math.pi * u2
        self._spare_normal = radius * math.sin(theta)
        return radius * math.cos(theta)

    def sample_without_replacement(self, n: int, k: int) -> list[int]:
        """k distinct integers from range(n), by partial Fisher-Yates shuffle."""
        if not 0 <= k <= n:
            raise ValueError("need 0 <= k <= n")
        pool = list(range(n))
        for i in range(k):
            j = i + int(self.uniform() * (n - i))
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
