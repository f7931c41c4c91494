"""Pure-Python permutation kernel.

Balanced Feistel network over an even number of bits, with cycle-walking
to shrink the power-of-two domain down to an arbitrary size N.  The round
function is a keyed splitmix-style 64-bit finalizer, so the whole mapping
is stateless: (seed, N, rounds) fully determine the permutation.

The compiled kernel in ``_feistel_cy`` implements exactly the same
arithmetic; a test cross-checks the two byte for byte.
"""

from __future__ import annotations

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF

_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(x: int, key: int = 0) -> int:
    """Keyed 64-bit mixing hash (splitmix64 finalizer over x + key)."""
    h = (x + key) & MASK64
    h = ((h ^ (h >> 30)) * _MIX1) & MASK64
    h = ((h ^ (h >> 27)) * _MIX2) & MASK64
    return h ^ (h >> 31)


def domain_bits(n: int) -> int:
    """Even bit width of the smallest balanced-Feistel domain covering n."""
    if n < 1:
        raise ValueError("permutation domain must hold at least one element")
    bits = max(2, (n - 1).bit_length())
    return bits + (bits & 1)


def _walk(index: int, n: int, seed: int, rounds: int, half_bits: int, half_mask: int) -> int:
    v = index
    while True:
        left = v >> half_bits
        right = v & half_mask
        for r in range(rounds):
            h = (right + seed + r * _GOLDEN) & MASK64
            h = ((h ^ (h >> 30)) * _MIX1) & MASK64
            h = ((h ^ (h >> 27)) * _MIX2) & MASK64
            h ^= h >> 31
            left, right = right, left ^ (h & half_mask)
        v = (left << half_bits) | right
        if v < n:
            return v


def permute_one(seed: int, n: int, rounds: int, index: int) -> int:
    """Map one index through the keyed permutation on [0, n)."""
    bits = domain_bits(n)
    half_bits = bits >> 1
    return _walk(index, n, seed & MASK64, rounds, half_bits, (1 << half_bits) - 1)


def materialize(seed: int, n: int, rounds: int) -> np.ndarray:
    """Evaluate the permutation for every index; returns a uint64 array."""
    bits = domain_bits(n)
    half_bits = bits >> 1
    half_mask = (1 << half_bits) - 1
    seed &= MASK64
    out = np.empty(n, dtype=np.uint64)
    walk = _walk
    for i in range(n):
        out[i] = walk(i, n, seed, rounds, half_bits, half_mask)
    return out
