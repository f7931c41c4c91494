"""Keyed index permutation: the pseudorandom visit order of a sweep.

The kernel backend is chosen at import time: the compiled Cython module
when it was built, otherwise the pure-Python implementation.  Both
produce identical sequences for identical (seed, size, rounds).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _feistel_py

try:
    from . import _feistel_cy as _kernel

    KERNEL_BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on build environment
    _kernel = _feistel_py
    KERNEL_BACKEND = "python"

DEFAULT_ROUNDS = 4


@dataclass(frozen=True)
class IndexPermutation:
    """Bijection on [0, space_size) determined by (seed, size, rounds)."""

    seed: int
    space_size: int
    round_count: int = DEFAULT_ROUNDS

    def __post_init__(self) -> None:
        if self.space_size < 1:
            raise ValueError("space_size must be at least 1")
        if self.round_count < 1:
            raise ValueError("round_count must be at least 1")
        object.__setattr__(self, "seed", self.seed & _feistel_py.MASK64)

    def apply(self, index: int) -> int:
        if not 0 <= index < self.space_size:
            raise ValueError(f"index {index} outside [0, {self.space_size})")
        return int(
            _kernel.permute_one(self.seed, self.space_size, self.round_count, index)
        )

    def materialize(self) -> np.ndarray:
        """All outputs in index order; uint64 array of length space_size."""
        return _kernel.materialize(self.seed, self.space_size, self.round_count)


def build_permutation(seed: int, space_size: int, round_count: int = DEFAULT_ROUNDS) -> IndexPermutation:
    return IndexPermutation(seed=seed, space_size=space_size, round_count=round_count)


def permute(perm: IndexPermutation, index: int) -> int:
    return perm.apply(index)
