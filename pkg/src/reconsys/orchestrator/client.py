"""Worker-side client for the master API.

``ScanMaster`` itself and ``MasterClient`` expose the same four calls a
node needs (register/heartbeat/next/submit), so node code runs unchanged
in-process (tests, demo) or over HTTP (deployment).
"""

from __future__ import annotations

import json
from typing import Any

import httpx


class MasterClient:
    def __init__(self, base_url: str, node_token: str | None = None, timeout: float = 10.0):
        headers = {}
        if node_token is not None:
            headers["X-Node-Token"] = node_token
        self._http = httpx.Client(base_url=base_url, headers=headers, timeout=timeout)

    def close(self) -> None:
        self._http.close()

    def register_node(
        self,
        node_id: str | None = None,
        site_group: str = "default",
        bandwidth_class: str = "standard",
    ) -> dict[str, Any]:
        r = self._http.post(
            "/nodes",
            json={
                "node_id": node_id,
                "site_group": site_group,
                "bandwidth_class": bandwidth_class,
            },
        )
        r.raise_for_status()
        return r.json()

    def heartbeat(self, node_id: str) -> None:
        self._http.post(f"/nodes/{node_id}/heartbeat").raise_for_status()

    def next_unit(self, node_id: str, operation_id: str | None = None) -> dict[str, Any] | None:
        params = {"operation": operation_id} if operation_id else None
        r = self._http.post(f"/nodes/{node_id}/units:next", params=params)
        if r.status_code == 204:
            return None
        r.raise_for_status()
        return r.json()

    def submit_result(
        self,
        node_id: str,
        unit_id: str,
        records: list[dict[str, Any]],
        probed_count: int | None = None,
    ) -> dict[str, Any]:
        body = "\n".join(json.dumps(rec, sort_keys=True) for rec in records)
        params: dict[str, Any] = {"node_id": node_id}
        if probed_count is not None:
            params["probed_count"] = probed_count
        r = self._http.post(
            f"/units/{unit_id}/result",
            params=params,
            content=body.encode("utf-8"),
            headers={"Content-Type": "application/x-ndjson"},
        )
        r.raise_for_status()
        return r.json()


class InProcessMaster:
    """Same call surface as MasterClient, backed by a ScanMaster directly.

    Lets node code run unchanged inside tests and the demo command.
    """

    def __init__(self, master):
        self.master = master

    def register_node(self, node_id=None, site_group="default", bandwidth_class="standard"):
        rec = self.master.register_node(node_id, site_group, bandwidth_class)
        return {
            "node_id": rec.node_id,
            "site_group": rec.site_group,
            "bandwidth_class": rec.bandwidth_class,
            "state": rec.state,
        }

    def heartbeat(self, node_id: str) -> None:
        self.master.heartbeat(node_id)

    def next_unit(self, node_id: str, operation_id: str | None = None):
        unit = self.master.next_unit(node_id, operation_id)
        return None if unit is None else self.master.payload_for(unit)

    def submit_result(self, node_id, unit_id, records, probed_count=None):
        return self.master.submit_result(node_id, unit_id, records, probed_count)
