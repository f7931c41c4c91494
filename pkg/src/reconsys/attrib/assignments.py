"""Asset assignments and the human curation loop.

Auto-accepted and pending assignments both enter the log; a human
decision (accepted/rejected) is final — repeated decisions are refused,
which the API surfaces as a conflict.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .entities import Entity
from .scoring import SIGNAL_KEYWORD, AttributionScore, ScoringConfig, score_candidate

STATUS_AUTO = "auto_accepted"
STATUS_PENDING = "pending_review"
STATUS_ACCEPTED = "accepted"
STATUS_REJECTED = "rejected"

EFFECTIVE_STATUSES = (STATUS_AUTO, STATUS_ACCEPTED)


class AlreadyDecidedError(RuntimeError):
    """Curation decisions are immutable once made."""


def _record_key(record: Mapping[str, Any]) -> str:
    svc = record.get("service", record)
    return (
        f"{svc.get('ip')}:{svc.get('port')}:"
        f"{svc.get('protocol_id')}:{svc.get('site_group', 'default')}"
    )


@dataclass
class AssetAssignment:
    assignment_id: str
    record_key: str
    entity_id: str
    score: AttributionScore
    status: str
    conflict: bool = False
    decided_by: str | None = None
    decided_at: float | None = None
    operation_id: str = ""

    def to_doc(self) -> dict[str, Any]:
        return {
            "assignment_id": self.assignment_id,
            "record_key": self.record_key,
            "entity_id": self.entity_id,
            "score": self.score.to_doc(),
            "status": self.status,
            "conflict": self.conflict,
            "decided_by": self.decided_by,
            "decided_at": self.decided_at,
            "operation_id": self.operation_id,
        }

    @classmethod
    def from_doc(cls, doc: dict[str, Any]) -> "AssetAssignment":
        from .scoring import Evidence

        score_doc = doc.get("score", {})
        score = AttributionScore(
            total=int(score_doc.get("total", 0)),
            evidence=tuple(
                Evidence(e["signal"], e["matched_value"], int(e["weight"]))
                for e in score_doc.get("evidence", [])
            ),
        )
        return cls(
            assignment_id=doc["assignment_id"],
            record_key=doc["record_key"],
            entity_id=doc["entity_id"],
            score=score,
            status=doc["status"],
            conflict=bool(doc.get("conflict", False)),
            decided_by=doc.get("decided_by"),
            decided_at=doc.get("decided_at"),
            operation_id=doc.get("operation_id", ""),
        )


def propose_assignments(
    records: Sequence[Mapping[str, Any]],
    entities: Sequence[Entity],
    config: ScoringConfig | None = None,
) -> list[AssetAssignment]:
    """Score every record against every entity; keep candidates at or
    above the review threshold.  A record may map to several entities;
    when more than one would auto-accept, all are flagged conflicted."""
    config = config or ScoringConfig()
    out: list[AssetAssignment] = []
    by_record: dict[str, list[AssetAssignment]] = {}
    for record in records:
        rkey = _record_key(record)
        for entity in entities:
            score = score_candidate(record, entity, config)
            if score.total < config.review_threshold:
                continue
            # keyword evidence may queue a candidate but never carries it
            # over the auto bar
            hard_total = sum(
                e.weight for e in score.evidence if e.signal != SIGNAL_KEYWORD
            )
            if hard_total >= config.auto_threshold:
                status = STATUS_AUTO
            else:
                status = STATUS_PENDING
            assignment = AssetAssignment(
                assignment_id=f"{rkey}~{entity.entity_id}",
                record_key=rkey,
                entity_id=entity.entity_id,
                score=score,
                status=status,
            )
            out.append(assignment)
            by_record.setdefault(rkey, []).append(assignment)
    for group in by_record.values():
        autos = [a for a in group if a.status == STATUS_AUTO]
        if len(autos) > 1:
            for a in autos:
                a.conflict = True
    return out


class AssignmentLog:
    """Serialized assignment store with decision immutability."""

    def __init__(self, store: Any | None = None, operation_id: str = ""):
        self._lock = threading.RLock()
        self._items: dict[str, AssetAssignment] = {}
        self._store = store
        self._operation_id = operation_id

    def add_all(self, assignments: Iterable[AssetAssignment]) -> None:
        with self._lock:
            for a in assignments:
                if not a.operation_id:
                    a.operation_id = self._operation_id
                self._items[a.assignment_id] = a
                self._persist(a)

    @classmethod
    def load_from_store(cls, store: Any) -> "AssignmentLog":
        """Rebuild one log across every operation persisted in the store."""
        log = cls(store=store)
        with log._lock:
            for op_id in store.operation_ids():
                for doc in store.iter_collection("assignments", op_id):
                    a = AssetAssignment.from_doc(doc)
                    if not a.operation_id:
                        a.operation_id = op_id
                    log._items[a.assignment_id] = a
        return log

    def get(self, assignment_id: str) -> AssetAssignment:
        with self._lock:
            return self._items[assignment_id]

    def list(self, status: str | None = None) -> list[AssetAssignment]:
        with self._lock:
            items = sorted(self._items.values(), key=lambda a: a.assignment_id)
            if status is None:
                return items
            return [a for a in items if a.status == status]

    def effective(self) -> list[AssetAssignment]:
        """Assignments that currently count: auto-accepted or human-accepted."""
        return [a for a in self.list() if a.status in EFFECTIVE_STATUSES]

    def decide(
        self,
        assignment_id: str,
        decision: str,
        reviewer: str,
        when: float | None = None,
    ) -> AssetAssignment:
        if decision not in (STATUS_ACCEPTED, STATUS_REJECTED):
            raise ValueError(f"decision must be accepted|rejected, got {decision!r}")
        with self._lock:
            assignment = self._items[assignment_id]
            if assignment.status in (STATUS_ACCEPTED, STATUS_REJECTED):
                raise AlreadyDecidedError(
                    f"{assignment_id} already {assignment.status} by {assignment.decided_by}"
                )
            assignment.status = decision
            assignment.decided_by = reviewer
            assignment.decided_at = time.time() if when is None else when
            self._persist(assignment)
            return assignment

    def _persist(self, assignment: AssetAssignment) -> None:
        if self._store is None:
            return
        from ..store import DocumentKey

        scope = assignment.operation_id or self._operation_id
        self._store.put(
            DocumentKey("assignments", scope, assignment.assignment_id),
            assignment.to_doc(),
        )

    # curate() is the operation name analysts know; decide() the verb the
    # API route uses — same thing.
    curate = decide
