"""Seedable uniform random streams with a fixed draw contract.

Every stochastic operation in this package draws from an ``RngStream`` in a
documented order, so a run is fully determined by its seed.  Batch draws are
contractually identical to the same number of scalar draws, which lets
vectorized code and scalar reference code share one stream.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """splitmix64 finalizer: a bijection on 64-bit integers."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(base_seed: int, index: int) -> int:
    """Seed for the stream at `index`, derived from `base_seed`.

    Computed as ``mix64(base_seed + GOLDEN * (index + 1) mod 2**64)`` with
    GOLDEN = 0x9E3779B97F4A7C15.  Injective in `index` for a fixed base
    (GOLDEN is odd, and mix64 is a bijection), so no two trial indices can
    collide; changing the base changes every derived seed.
    """
    return mix64((base_seed + _GOLDEN * (index + 1)) & _MASK64)


class RngStream:
    """Uniform random source backed by numpy's PCG64.

    Contract:
      * ``next_unit()`` returns a float64 uniform on [0, 1).
      * ``next_signed_unit()`` returns ``2 * next_unit() - 1``, uniform on
        [-1, 1); it consumes exactly one draw.
      * ``next_units(n)`` consumes exactly the same underlying stream as
        ``n`` successive ``next_unit()`` calls.
      * Two streams constructed from the same seed produce identical
        sequences.
    """

    __slots__ = ("seed", "_gen")

    def __init__(self, seed: int):
        self.seed = seed
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def next_unit(self) -> float:
        return self._gen.random()

    def next_signed_unit(self) -> float:
        return 2.0 * self._gen.random() - 1.0

    def next_units(self, n: int) -> np.ndarray:
        return self._gen.random(n)

    @property
    def generator(self) -> np.random.Generator:
        """The wrapped generator; draws taken on it advance this stream."""
        return self._gen


class CountingRng:
    """Wraps a stream and counts draws; a batch of n counts as n.

    Used by the draw-accounting audits: the engine's per-operation draw
    counts are part of its contract.
    """

    __slots__ = ("inner", "draws")

    def __init__(self, inner):
        self.inner = inner
        self.draws = 0

    def next_unit(self) -> float:
        self.draws += 1
        return self.inner.next_unit()

    def next_signed_unit(self) -> float:
        self.draws += 1
        return self.inner.next_signed_unit()

    def next_units(self, n: int) -> np.ndarray:
        self.draws += int(n)
        return self.inner.next_units(n)
