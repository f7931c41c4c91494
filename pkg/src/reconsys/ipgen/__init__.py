"""Deterministic target enumeration and work-unit slicing."""

from .permutation import (
    DEFAULT_ROUNDS,
    KERNEL_BACKEND,
    IndexPermutation,
    build_permutation,
    permute,
)
from .space import RangeOverlapError, TargetSpace, normalize_ranges, parse_range
from .units import (
    ASSIGNED,
    COMPLETED,
    DEFAULT_UNIT_SIZE,
    FAILED,
    PENDING,
    WorkUnit,
    split_work_units,
)

__all__ = [
    "ASSIGNED",
    "COMPLETED",
    "DEFAULT_ROUNDS",
    "DEFAULT_UNIT_SIZE",
    "FAILED",
    "IndexPermutation",
    "KERNEL_BACKEND",
    "PENDING",
    "RangeOverlapError",
    "TargetSpace",
    "WorkUnit",
    "build_permutation",
    "normalize_ranges",
    "parse_range",
    "permute",
    "split_work_units",
]
