"""Cohort averages: mean CVE count over entity subsets.

Cohorts filter on the critical-infrastructure flag and a bed-count
ceiling; entities without bed data are excluded whenever a ceiling is
applied (they cannot be placed in a size cohort).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence


@dataclass(frozen=True)
class EntityCveCount:
    entity: Any  # carries .beds and .kritis
    cve_count: int


@dataclass(frozen=True)
class CohortStats:
    count: int
    mean: float | None  # None: empty cohort, explicit no-data

    def to_doc(self) -> dict[str, Any]:
        return {"count": self.count, "mean": self.mean}


def cohort_average(
    rows: Sequence[EntityCveCount],
    kritis: bool | None = None,
    max_beds: int | None = None,
) -> CohortStats:
    picked = []
    for row in rows:
        e = row.entity
        if kritis is not None and bool(getattr(e, "kritis", False)) != kritis:
            continue
        if max_beds is not None:
            beds = getattr(e, "beds", None)
            if beds is None or beds > max_beds:
                continue
        picked.append(row.cve_count)
    if not picked:
        return CohortStats(count=0, mean=None)
    return CohortStats(count=len(picked), mean=sum(picked) / len(picked))
