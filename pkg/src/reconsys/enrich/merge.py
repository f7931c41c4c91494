"""Aggregator consistency pass: deduplicate node submissions.

Reassigned units can produce the same endpoint twice; the record with
the latest collection time wins and older ones are archived, never
silently dropped.  Records from different site groups are distinct by
design (cross-location visibility comparison is the point)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class UnknownUnitBatchError(ValueError):
    """A result batch references a unit the operation does not know."""


@dataclass
class MergeResult:
    records: list[dict[str, Any]] = field(default_factory=list)
    archived: list[dict[str, Any]] = field(default_factory=list)

    @property
    def record_count(self) -> int:
        return len(self.records)


def _dedup_key(record: dict[str, Any]) -> tuple:
    return (
        record.get("ip"),
        record.get("port"),
        record.get("protocol_id"),
        record.get("site_group", "default"),
    )


def consistency_merge(
    batches: list[dict[str, Any]],
    known_unit_ids: set[str] | None = None,
) -> MergeResult:
    """Merge completed-unit submissions into one deduplicated record list.

    batches: submission envelopes with ``unit_id`` and ``records``.
    known_unit_ids: when given, a batch naming an unknown unit raises.
    """
    best: dict[tuple, dict[str, Any]] = {}
    archived: list[dict[str, Any]] = []
    for batch in batches:
        unit_id = batch.get("unit_id")
        if known_unit_ids is not None and unit_id not in known_unit_ids:
            raise UnknownUnitBatchError(f"batch references unknown unit {unit_id!r}")
        for record in batch.get("records", []):
            key = _dedup_key(record)
            incumbent = best.get(key)
            if incumbent is None:
                best[key] = record
                continue
            if _beats(record, incumbent):
                archived.append(incumbent)
                best[key] = record
            else:
                archived.append(record)
    ordered = sorted(best.values(), key=_dedup_key)
    return MergeResult(records=ordered, archived=archived)


def _beats(challenger: dict[str, Any], incumbent: dict[str, Any]) -> bool:
    """Later collection time wins; node id breaks exact ties deterministically."""
    c = (challenger.get("collected_at", 0.0), challenger.get("node_id", ""))
    i = (incumbent.get("collected_at", 0.0), incumbent.get("node_id", ""))
    return c > i
