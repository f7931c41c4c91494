"""HTTP+JSON control and worker API for the scan master.

Worker endpoints authenticate with a shared node token when one is
configured.  Unit results arrive as newline-delimited JSON, one record
per line (the aggregator's input schema).
"""

from __future__ import annotations

import json
from typing import Any

from fastapi import FastAPI, Header, HTTPException, Query, Request, Response
from pydantic import BaseModel, Field

from ..ipgen import RangeOverlapError, TargetSpace
from .master import (
    DeadNodeError,
    ScanMaster,
    UnauthorizedRangeError,
    UnknownNodeError,
    UnknownOperationError,
    UnknownUnitError,
)


class NodeIn(BaseModel):
    node_id: str | None = None
    site_group: str = "default"
    bandwidth_class: str = "standard"


class OperationIn(BaseModel):
    ranges: list[str]
    port: int
    protocol_id: str
    seed: int = 0
    unit_size: int | None = None
    site_groups: list[str] | None = None
    round_count: int = Field(default=4, ge=1, le=16)


def create_app(
    master: ScanMaster,
    assignments: Any | None = None,
    store: Any | None = None,
) -> FastAPI:
    app = FastAPI(title="recon control API")

    def check_token(token: str | None) -> None:
        expected = master.config.node_token
        if expected is not None and token != expected:
            raise HTTPException(status_code=401, detail="bad or missing node token")

    @app.post("/nodes", status_code=201)
    def register_node(body: NodeIn, x_node_token: str | None = Header(default=None)):
        check_token(x_node_token)
        rec = master.register_node(body.node_id, body.site_group, body.bandwidth_class)
        return {
            "node_id": rec.node_id,
            "site_group": rec.site_group,
            "bandwidth_class": rec.bandwidth_class,
            "state": rec.state,
        }

    @app.get("/nodes")
    def list_nodes():
        now = master.clock()
        return {
            "nodes": [
                {
                    "node_id": n.node_id,
                    "site_group": n.site_group,
                    "bandwidth_class": n.bandwidth_class,
                    "state": n.state,
                    "seconds_since_heartbeat": max(0.0, now - n.last_heartbeat),
                }
                for n in sorted(master.nodes.values(), key=lambda n: n.node_id)
            ]
        }

    @app.post("/nodes/{node_id}/heartbeat")
    def heartbeat(node_id: str, x_node_token: str | None = Header(default=None)):
        check_token(x_node_token)
        try:
            master.heartbeat(node_id)
        except UnknownNodeError:
            raise HTTPException(status_code=404, detail=f"unknown node {node_id}")
        except DeadNodeError as exc:
            raise HTTPException(status_code=410, detail=str(exc))
        return {"ok": True}

    @app.post("/operations", status_code=201)
    def create_operation(body: OperationIn):
        try:
            space = TargetSpace.from_strings(body.ranges, body.port, body.protocol_id)
            op_id = master.create_operation(
                space,
                seed=body.seed,
                unit_size=body.unit_size,
                site_groups=body.site_groups,
                round_count=body.round_count,
            )
        except UnauthorizedRangeError as exc:
            raise HTTPException(status_code=403, detail=str(exc))
        except (RangeOverlapError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        status = master.status(op_id)
        return {"operation_id": op_id, "unit_count": status.total_units}

    @app.get("/operations/{operation_id}")
    def operation_status(operation_id: str):
        try:
            return master.status(operation_id).to_doc()
        except UnknownOperationError:
            raise HTTPException(status_code=404, detail=f"unknown operation {operation_id}")

    @app.post("/nodes/{node_id}/units:next")
    def next_unit(
        node_id: str,
        operation: str | None = Query(default=None),
        x_node_token: str | None = Header(default=None),
    ):
        check_token(x_node_token)
        try:
            unit = master.next_unit(node_id, operation)
        except UnknownNodeError:
            raise HTTPException(status_code=404, detail=f"unknown node {node_id}")
        except DeadNodeError as exc:
            raise HTTPException(status_code=410, detail=str(exc))
        except UnknownOperationError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        if unit is None:
            return Response(status_code=204)
        return master.payload_for(unit)

    @app.post("/units/{unit_id:path}/result")
    async def submit_result(
        unit_id: str,
        request: Request,
        node_id: str = Query(...),
        probed_count: int | None = Query(default=None),
        x_node_token: str | None = Header(default=None),
    ):
        check_token(x_node_token)
        body = await request.body()
        records = []
        for line in body.decode("utf-8").splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise HTTPException(status_code=400, detail=f"bad NDJSON line: {exc}")
        try:
            ack = master.submit_result(node_id, unit_id, records, probed_count)
        except UnknownNodeError:
            raise HTTPException(status_code=404, detail=f"unknown node {node_id}")
        except DeadNodeError as exc:
            raise HTTPException(status_code=410, detail=str(exc))
        except UnknownUnitError:
            raise HTTPException(status_code=404, detail=f"unknown unit {unit_id}")
        return ack

    if assignments is not None:
        _mount_curation(app, assignments)
    if store is not None:
        _mount_reports(app, store)
    return app


class DecisionIn(BaseModel):
    decision: str
    reviewer: str


def _mount_curation(app: FastAPI, assignments: Any) -> None:
    from ..attrib import AlreadyDecidedError

    @app.get("/assignments")
    def list_assignments(status: str | None = Query(default=None)):
        return {"assignments": [a.to_doc() for a in assignments.list(status=status)]}

    @app.post("/assignments/{assignment_id}/decision")
    def decide(assignment_id: str, body: DecisionIn):
        if body.decision not in ("accepted", "rejected"):
            raise HTTPException(status_code=400, detail="decision must be accepted|rejected")
        try:
            updated = assignments.decide(assignment_id, body.decision, body.reviewer)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown assignment {assignment_id}")
        except AlreadyDecidedError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return updated.to_doc()


def _mount_reports(app: FastAPI, store: Any) -> None:
    @app.get("/operations/{operation_id}/report/{kind}")
    def get_report(operation_id: str, kind: str):
        from ..store import DocumentKey

        doc = store.get(DocumentKey("reports", operation_id, kind))
        if doc is None:
            raise HTTPException(status_code=404, detail=f"no {kind} report for {operation_id}")
        return doc
