"""Work units: contiguous slices of the permuted index sequence."""

from __future__ import annotations

from dataclasses import dataclass, field

from .space import TargetSpace

DEFAULT_UNIT_SIZE = 4096

PENDING = "pending"
ASSIGNED = "assigned"
COMPLETED = "completed"
FAILED = "failed"


@dataclass
class WorkUnit:
    unit_id: str
    operation_id: str
    start_index: int
    end_index: int
    site_group: str = "default"
    state: str = PENDING
    assigned_node: str | None = None
    attempt_count: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.start_index < self.end_index:
            raise ValueError(
                f"bad unit interval [{self.start_index}, {self.end_index})"
            )

    @property
    def length(self) -> int:
        return self.end_index - self.start_index


def split_work_units(
    space: TargetSpace,
    unit_size: int = DEFAULT_UNIT_SIZE,
    operation_id: str = "",
    site_group: str = "default",
) -> list[WorkUnit]:
    """Partition [0, space.size) into units of unit_size (last may be short)."""
    if unit_size < 1:
        raise ValueError("unit_size must be at least 1")
    units = []
    for seq, start in enumerate(range(0, space.size, unit_size)):
        end = min(start + unit_size, space.size)
        units.append(
            WorkUnit(
                unit_id=f"{operation_id}/{site_group}/{seq:05d}",
                operation_id=operation_id,
                start_index=start,
                end_index=end,
                site_group=site_group,
            )
        )
    return units
