"""Deterministic seeding and uniform draw streams.

The on-disk dataset format is defined here as much as in the renderer:
every sampled parameter comes from a Philox4x64-10 counter-based stream
keyed by a seed derived below, so changing any constant or conversion in
this module changes every generated image. Treat them as frozen.

Seed derivation chains the SplitMix64 finalizer over the input components,
giving order-sensitive, collision-resistant 64-bit mixing with no large
state. Streams then read raw 64-bit Philox outputs and convert them to
doubles and bounded integers in-house, so draw values depend only on the
published Philox algorithm, never on the distribution code of any numpy
release.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15  # SplitMix64 increment
_INSTANCE_TAG = 0x8C6785EED21C3FFB  # separates instance streams from class streams
_ORBIT_WAVE_TAG = 0x3A93C2B1F04D9E57  # separates per-orbit wave sub-streams

_SHIFT_11 = np.uint64(11)
_INV_2_53 = 2.0 ** -53


def _mix64(x: int) -> int:
    """SplitMix64 finalizer: bijective 64-bit avalanche."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def _absorb(h: int, value: int) -> int:
    """Fold one component into the running hash; order-sensitive."""
    return _mix64((h + _GOLDEN) ^ (value & _MASK64))


def derive_seed(master_seed: int, class_id: int, instance_id: int | None = None) -> int:
    """Derive the 64-bit stream seed for a class or a single instance.

    Identical inputs always give identical seeds, independent of call
    order, worker count, or scheduling. Class-level seeds (instance_id
    None) and instance-level seeds live in separate domains, and swapping
    class_id with instance_id changes the result.
    """
    h = _mix64(master_seed)
    h = _absorb(h, class_id)
    if instance_id is not None:
        h = _absorb(h, _INSTANCE_TAG)
        h = _absorb(h, instance_id)
    return h


def orbit_wave_seed(class_seed: int, orbit_index: int) -> int:
    """Sub-seed for one orbit's wave draws (per-orbit wave mode)."""
    return _absorb(_absorb(class_seed, _ORBIT_WAVE_TAG), orbit_index)


class ParamStream:
    """Sequential uniform draws from one Philox4x64-10 stream.

    Conversions are fixed for the life of the dataset format:

    * doubles on [0, 1) use the top 53 bits of one raw output;
    * bounded integers use masked rejection on raw outputs (bias-free,
      consuming a deterministic sequence of raws given the stream).
    """

    __slots__ = ("_bits",)

    def __init__(self, seed: int) -> None:
        self._bits = np.random.Philox(key=seed & _MASK64)

    def raw(self, n: int) -> np.ndarray:
        """Next n raw 64-bit outputs of the underlying generator."""
        return self._bits.random_raw(n)

    def unit(self, n: int) -> np.ndarray:
        """n doubles uniform on [0, 1)."""
        return (self.raw(n) >> _SHIFT_11) * _INV_2_53

    def uniform(self, low: float, high: float) -> float:
        """One double uniform on [low, high)."""
        if low > high:
            raise ValueError(f"empty range [{low}, {high}]")
        return low + (high - low) * float(self.unit(1)[0])

    def uniform_vec(self, low: float, high: float, n: int) -> np.ndarray:
        """n doubles uniform on [low, high); same values as n uniform() calls."""
        if low > high:
            raise ValueError(f"empty range [{low}, {high}]")
        return low + (high - low) * self.unit(n)

    def integer(self, low: int, high: int) -> int:
        """One integer uniform on [low, high], inclusive, bias-free."""
        if low > high:
            raise ValueError(f"empty range [{low}, {high}]")
        span = high - low + 1
        mask = (1 << (span - 1).bit_length()) - 1
        while True:
            candidate = int(self.raw(1)[0]) & mask
            if candidate < span:
                return low + candidate
