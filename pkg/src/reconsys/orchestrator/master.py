"""Scan master: node registry, unit assignment, failure detection.

The registry and the unit-state table form one logically serialized
state machine: every mutation happens under a single lock, in arrival
order, so any number of worker nodes can interact concurrently through
the API without ever observing a torn state.
"""

from __future__ import annotations

import re
import secrets
import threading
import time
from dataclasses import dataclass, field
from typing import Any, Callable

_SAFE_LABEL = re.compile(r"[A-Za-z0-9_.-]+")

from ..ipgen import (
    ASSIGNED,
    COMPLETED,
    DEFAULT_ROUNDS,
    DEFAULT_UNIT_SIZE,
    FAILED,
    PENDING,
    TargetSpace,
    WorkUnit,
    split_work_units,
)

NODE_ACTIVE = "active"
NODE_SUSPECT = "suspect"
NODE_DEAD = "dead"


class UnknownNodeError(KeyError):
    """Caller identified itself with a node id the registry does not know."""


class DeadNodeError(RuntimeError):
    """A node declared dead must re-register before interacting again."""


class UnknownUnitError(KeyError):
    """No unit with that id exists."""


class UnknownOperationError(KeyError):
    """No operation with that id exists."""


class UnauthorizedRangeError(ValueError):
    """Target ranges leave loopback/RFC1918 scope without authorization."""


@dataclass
class MasterConfig:
    heartbeat_interval: float = 5.0
    suspect_timeout: float = 15.0
    dead_timeout: float = 60.0
    attempt_cap: int = 5
    default_unit_size: int = DEFAULT_UNIT_SIZE
    node_token: str | None = None
    allow_public_ranges: bool = False


@dataclass
class NodeRecord:
    node_id: str
    site_group: str = "default"
    bandwidth_class: str = "standard"
    last_heartbeat: float = 0.0
    state: str = NODE_ACTIVE


@dataclass
class OperationStatus:
    operation_id: str
    total_units: int
    pending: int
    assigned: int
    completed: int
    failed: int
    started_at: float
    finished_at: float | None
    site_groups: list[str]
    per_group_completed: dict[str, int]
    per_group_total: dict[str, int]

    @property
    def finished(self) -> bool:
        return self.finished_at is not None

    def to_doc(self) -> dict[str, Any]:
        return {
            "operation_id": self.operation_id,
            "total_units": self.total_units,
            "pending": self.pending,
            "assigned": self.assigned,
            "completed": self.completed,
            "failed": self.failed,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "finished": self.finished,
            "site_groups": self.site_groups,
            "per_group_completed": self.per_group_completed,
            "per_group_total": self.per_group_total,
        }


@dataclass
class Operation:
    operation_id: str
    space: TargetSpace
    seed: int
    round_count: int
    unit_size: int
    site_groups: list[str]
    units: dict[str, WorkUnit]
    unit_order: list[str]
    started_at: float
    finished_at: float | None = None
    submissions: list[dict[str, Any]] = field(default_factory=list)
    archived_submissions: list[dict[str, Any]] = field(default_factory=list)


class ScanMaster:
    def __init__(
        self,
        config: MasterConfig | None = None,
        clock: Callable[[], float] = time.monotonic,
        store: Any | None = None,
    ):
        self.config = config or MasterConfig()
        self.clock = clock
        self.store = store
        self._lock = threading.RLock()
        self.nodes: dict[str, NodeRecord] = {}
        self.operations: dict[str, Operation] = {}

    # -- operations --------------------------------------------------------

    def create_operation(
        self,
        space: TargetSpace,
        seed: int,
        unit_size: int | None = None,
        site_groups: list[str] | None = None,
        round_count: int = DEFAULT_ROUNDS,
    ) -> str:
        if not self.config.allow_public_ranges and not space.is_private_scope():
            raise UnauthorizedRangeError(
                "target ranges outside loopback/RFC1918 need explicit authorization"
            )
        unit_size = unit_size or self.config.default_unit_size
        groups = list(site_groups) if site_groups else ["default"]
        if len(set(groups)) != len(groups):
            raise ValueError("duplicate site group labels")
        for g in groups:
            if not _SAFE_LABEL.fullmatch(g):
                raise ValueError(f"site group label must be URL-safe: {g!r}")
        with self._lock:
            op_id = f"op-{secrets.token_hex(4)}"
            units: dict[str, WorkUnit] = {}
            order: list[str] = []
            for group in groups:
                for unit in split_work_units(space, unit_size, op_id, group):
                    units[unit.unit_id] = unit
                    order.append(unit.unit_id)
            self.operations[op_id] = Operation(
                operation_id=op_id,
                space=space,
                seed=seed,
                round_count=round_count,
                unit_size=unit_size,
                site_groups=groups,
                units=units,
                unit_order=order,
                started_at=self.clock(),
            )
            self._persist_status(op_id)
            return op_id

    def create_from_catalog(
        self,
        catalog: list[dict[str, Any]],
        range_texts: list[str],
        seed: int,
        unit_size: int | None = None,
        site_groups: list[str] | None = None,
    ) -> list[str]:
        """One operation per (protocol_id, port) catalog entry."""
        ids = []
        for entry in catalog:
            space = TargetSpace.from_strings(
                range_texts, int(entry["port"]), str(entry["protocol_id"])
            )
            ids.append(self.create_operation(space, seed, unit_size, site_groups))
        return ids

    def status(self, operation_id: str) -> OperationStatus:
        with self._lock:
            op = self._operation(operation_id)
            counts = {PENDING: 0, ASSIGNED: 0, COMPLETED: 0, FAILED: 0}
            per_group_completed = {g: 0 for g in op.site_groups}
            per_group_total = {g: 0 for g in op.site_groups}
            for unit in op.units.values():
                counts[unit.state] += 1
                per_group_total[unit.site_group] += 1
                if unit.state == COMPLETED:
                    per_group_completed[unit.site_group] += 1
            return OperationStatus(
                operation_id=operation_id,
                total_units=len(op.units),
                pending=counts[PENDING],
                assigned=counts[ASSIGNED],
                completed=counts[COMPLETED],
                failed=counts[FAILED],
                started_at=op.started_at,
                finished_at=op.finished_at,
                site_groups=list(op.site_groups),
                per_group_completed=per_group_completed,
                per_group_total=per_group_total,
            )

    def operation(self, operation_id: str) -> Operation:
        with self._lock:
            return self._operation(operation_id)

    def submissions(self, operation_id: str) -> list[dict[str, Any]]:
        with self._lock:
            return list(self._operation(operation_id).submissions)

    # -- nodes ---------------------------------------------------------------

    def register_node(
        self,
        node_id: str | None = None,
        site_group: str = "default",
        bandwidth_class: str = "standard",
    ) -> NodeRecord:
        with self._lock:
            node_id = node_id or f"n-{secrets.token_hex(3)}"
            record = NodeRecord(
                node_id=node_id,
                site_group=site_group,
                bandwidth_class=bandwidth_class,
                last_heartbeat=self.clock(),
                state=NODE_ACTIVE,
            )
            self.nodes[node_id] = record
            return record

    def heartbeat(self, node_id: str) -> None:
        with self._lock:
            node = self._node(node_id)
            node.last_heartbeat = self.clock()
            if node.state == NODE_SUSPECT:
                node.state = NODE_ACTIVE

    def _node(self, node_id: str) -> NodeRecord:
        node = self.nodes.get(node_id)
        if node is None:
            raise UnknownNodeError(node_id)
        if node.state == NODE_DEAD:
            raise DeadNodeError(f"node {node_id} is dead; re-register")
        return node

    def _operation(self, operation_id: str) -> Operation:
        op = self.operations.get(operation_id)
        if op is None:
            raise UnknownOperationError(operation_id)
        return op

    # -- unit lifecycle --------------------------------------------------------

    def next_unit(self, node_id: str, operation_id: str | None = None) -> WorkUnit | None:
        """Hand the oldest pending unit of the node's site group to the node."""
        with self._lock:
            node = self._node(node_id)
            node.last_heartbeat = self.clock()
            if node.state == NODE_SUSPECT:
                node.state = NODE_ACTIVE
            ops = (
                [self._operation(operation_id)]
                if operation_id
                else [self.operations[k] for k in sorted(self.operations)]
            )
            for op in ops:
                if op.finished_at is not None:
                    continue
                for unit_id in op.unit_order:
                    unit = op.units[unit_id]
                    if unit.state != PENDING:
                        continue
                    if unit.site_group != "default" and unit.site_group != node.site_group:
                        continue
                    unit.state = ASSIGNED
                    unit.assigned_node = node_id
                    return unit
            return None

    def submit_result(
        self,
        node_id: str,
        unit_id: str,
        records: list[dict[str, Any]],
        probed_count: int | None = None,
    ) -> dict[str, Any]:
        """Complete a unit.  Duplicate submissions are acknowledged and
        archived, never double-counted."""
        with self._lock:
            node = self._node(node_id)
            node.last_heartbeat = self.clock()
            if node.state == NODE_SUSPECT:
                node.state = NODE_ACTIVE
            op, unit = self._find_unit(unit_id)
            envelope = {
                "unit_id": unit_id,
                "operation_id": op.operation_id,
                "node_id": node_id,
                "site_group": unit.site_group,
                "start_index": unit.start_index,
                "end_index": unit.end_index,
                "probed_count": probed_count if probed_count is not None else unit.length,
                "record_count": len(records),
                "received_at": self.clock(),
                "records": records,
            }
            if unit.state == COMPLETED:
                op.archived_submissions.append(envelope)
                return {"accepted": True, "duplicate": True}
            # A unit reverted to pending after a failure may still be
            # completed by its original node; the work was done either way.
            unit.state = COMPLETED
            unit.assigned_node = node_id
            op.submissions.append(envelope)
            self._persist_records(op, envelope)
            if all(u.state == COMPLETED for u in op.units.values()):
                op.finished_at = self.clock()
            self._persist_status(op.operation_id)
            return {"accepted": True, "duplicate": False}

    def payload_for(self, unit: WorkUnit) -> dict[str, Any]:
        """Wire shape of a unit hand-off, embedding the operation parameters
        a stateless node needs to execute it."""
        with self._lock:
            op = self._operation(unit.operation_id)
            return {
                "unit_id": unit.unit_id,
                "operation_id": unit.operation_id,
                "start_index": unit.start_index,
                "end_index": unit.end_index,
                "site_group": unit.site_group,
                "attempt_count": unit.attempt_count,
                "seed": op.seed,
                "round_count": op.round_count,
                "space": {
                    "ranges": op.space.range_strings(),
                    "port": op.space.port,
                    "protocol_id": op.space.protocol_id,
                },
            }

    def _find_unit(self, unit_id: str) -> tuple[Operation, WorkUnit]:
        op_id = unit_id.split("/", 1)[0]
        op = self.operations.get(op_id)
        if op is None or unit_id not in op.units:
            raise UnknownUnitError(unit_id)
        return op, op.units[unit_id]

    # -- failure detection ------------------------------------------------------

    def detect_failures(self, now: float | None = None) -> list[str]:
        """Apply heartbeat timeouts; returns ids of units reverted to pending."""
        now = self.clock() if now is None else now
        reverted: list[str] = []
        with self._lock:
            for node in self.nodes.values():
                silent = now - node.last_heartbeat
                if node.state == NODE_DEAD:
                    continue
                if silent >= self.config.dead_timeout:
                    node.state = NODE_DEAD
                    reverted.extend(self._revert_units_of(node.node_id))
                elif silent >= self.config.suspect_timeout:
                    if node.state == NODE_ACTIVE:
                        node.state = NODE_SUSPECT
        return reverted

    def _revert_units_of(self, node_id: str) -> list[str]:
        reverted = []
        for op in self.operations.values():
            for unit in op.units.values():
                if unit.state == ASSIGNED and unit.assigned_node == node_id:
                    unit.attempt_count += 1
                    unit.assigned_node = None
                    if unit.attempt_count >= self.config.attempt_cap:
                        unit.state = FAILED
                    else:
                        unit.state = PENDING
                        reverted.append(unit.unit_id)
            self._persist_status(op.operation_id)
        return reverted

    # -- persistence hooks -----------------------------------------------------

    def _persist_status(self, operation_id: str) -> None:
        if self.store is None:
            return
        from ..store import DocumentKey

        doc = self.status(operation_id).to_doc()
        self.store.put(DocumentKey("operations", operation_id, "status"), doc)

    def _persist_records(self, op: Operation, envelope: dict[str, Any]) -> None:
        if self.store is None:
            return
        from ..store import DocumentKey

        for rec in envelope["records"]:
            doc_id = f"{rec.get('ip')}:{rec.get('port')}:{rec.get('protocol_id')}:{envelope['site_group']}"
            self.store.put(
                DocumentKey("records", op.operation_id, doc_id),
                rec,
                ts=rec.get("collected_at"),
            )
