import json

import pytest
from fastapi.testclient import TestClient

from reconsys.attrib import (
    STATUS_AUTO,
    STATUS_PENDING,
    AssetAssignment,
    AssignmentLog,
    AttributionScore,
)
from reconsys.orchestrator import MasterConfig, ScanMaster
from reconsys.orchestrator.api import create_app
from reconsys.store import DocumentKey, DocumentStore


@pytest.fixture
def app_client(tmp_path):
    store = DocumentStore(tmp_path / "data")
    master = ScanMaster(MasterConfig(node_token="sekrit"), store=store)
    log = AssignmentLog(store=store, operation_id="op-fix")
    log.add_all(
        [
            AssetAssignment(
                assignment_id="k1~e1",
                record_key="k1",
                entity_id="e1",
                score=AttributionScore(total=60),
                status=STATUS_PENDING,
            ),
            AssetAssignment(
                assignment_id="k2~e2",
                record_key="k2",
                entity_id="e2",
                score=AttributionScore(total=100),
                status=STATUS_AUTO,
            ),
        ]
    )
    app = create_app(master, assignments=log, store=store)
    return TestClient(app), master, store, log


AUTH = {"X-Node-Token": "sekrit"}


def _create_op(client, **overrides):
    body = {
        "ranges": ["127.60.0.0/26"],
        "port": 8080,
        "protocol_id": "http",
        "seed": 5,
        "unit_size": 16,
    }
    body.update(overrides)
    r = client.post("/operations", json=body)
    assert r.status_code == 201, r.text
    return r.json()["operation_id"]


class TestWorkerFlow:
    def test_full_round_trip(self, app_client):
        client, _master, _store, _log = app_client
        op_id = _create_op(client)

        r = client.post("/nodes", json={"site_group": "default"}, headers=AUTH)
        assert r.status_code == 201
        node_id = r.json()["node_id"]

        r = client.post(f"/nodes/{node_id}/heartbeat", headers=AUTH)
        assert r.status_code == 200

        r = client.post(f"/nodes/{node_id}/units:next", headers=AUTH)
        assert r.status_code == 200
        unit = r.json()
        assert unit["operation_id"] == op_id
        assert unit["space"]["port"] == 8080
        assert unit["space"]["ranges"] == ["127.60.0.0-127.60.0.63"]

        lines = "\n".join(
            json.dumps({"ip": f"127.60.0.{i}", "port": 8080, "protocol_id": "http",
                        "site_group": "default", "banner": "nginx", "collected_at": 1.0})
            for i in range(2)
        )
        r = client.post(
            f"/units/{unit['unit_id']}/result",
            params={"node_id": node_id, "probed_count": 16},
            content=lines,
            headers={**AUTH, "Content-Type": "application/x-ndjson"},
        )
        assert r.status_code == 200
        assert r.json() == {"accepted": True, "duplicate": False}

        status = client.get(f"/operations/{op_id}").json()
        assert status["completed"] == 1
        assert status["assigned"] == 0

    def test_node_health_listing(self, app_client):
        client, _m, _s, _l = app_client
        client.post("/nodes", json={"node_id": "alpha-1", "site_group": "alpha"}, headers=AUTH)
        r = client.get("/nodes")
        assert r.status_code == 200
        nodes = r.json()["nodes"]
        assert nodes[0]["node_id"] == "alpha-1"
        assert nodes[0]["state"] == "active"
        assert nodes[0]["seconds_since_heartbeat"] >= 0.0

    def test_next_unit_exhaustion_returns_204(self, app_client):
        client, _m, _s, _l = app_client
        _create_op(client, unit_size=64)
        node_id = client.post("/nodes", json={}, headers=AUTH).json()["node_id"]
        assert client.post(f"/nodes/{node_id}/units:next", headers=AUTH).status_code == 200
        assert client.post(f"/nodes/{node_id}/units:next", headers=AUTH).status_code == 204

    def test_token_required_on_worker_endpoints(self, app_client):
        client, _m, _s, _l = app_client
        assert client.post("/nodes", json={}).status_code == 401
        assert (
            client.post("/nodes", json={}, headers={"X-Node-Token": "wrong"}).status_code
            == 401
        )

    def test_bad_ndjson_rejected(self, app_client):
        client, _m, _s, _l = app_client
        _create_op(client)
        node_id = client.post("/nodes", json={}, headers=AUTH).json()["node_id"]
        unit = client.post(f"/nodes/{node_id}/units:next", headers=AUTH).json()
        r = client.post(
            f"/units/{unit['unit_id']}/result",
            params={"node_id": node_id},
            content="{not json}",
            headers=AUTH,
        )
        assert r.status_code == 400


class TestControlSurface:
    def test_invalid_ranges_rejected_with_diagnostic(self, app_client):
        client, _m, _s, _l = app_client
        r = client.post(
            "/operations",
            json={
                "ranges": ["127.60.0.0/24", "127.60.0.128/25"],
                "port": 80,
                "protocol_id": "http",
            },
        )
        assert r.status_code == 400
        assert "declared more than once" in r.json()["detail"]

    def test_public_range_needs_authorization(self, app_client):
        client, _m, _s, _l = app_client
        r = client.post(
            "/operations",
            json={"ranges": ["8.8.8.0/24"], "port": 80, "protocol_id": "http"},
        )
        assert r.status_code == 403

    def test_unknown_operation_404(self, app_client):
        client, _m, _s, _l = app_client
        assert client.get("/operations/nope").status_code == 404


class TestCurationApi:
    def test_list_pending(self, app_client):
        client, _m, _s, _log = app_client
        r = client.get("/assignments", params={"status": "pending_review"})
        assert r.status_code == 200
        items = r.json()["assignments"]
        assert [a["assignment_id"] for a in items] == ["k1~e1"]

    def test_decision_round_trip_and_conflict(self, app_client):
        client, _m, _s, _log = app_client
        r = client.post(
            "/assignments/k1~e1/decision",
            json={"decision": "accepted", "reviewer": "analyst-1"},
        )
        assert r.status_code == 200
        assert r.json()["status"] == "accepted"
        assert r.json()["decided_by"] == "analyst-1"
        # queue no longer lists it
        items = client.get("/assignments", params={"status": "pending_review"}).json()
        assert items["assignments"] == []
        # a second decision is a conflict, not a retry
        r = client.post(
            "/assignments/k1~e1/decision",
            json={"decision": "rejected", "reviewer": "analyst-2"},
        )
        assert r.status_code == 409

    def test_unknown_assignment_404(self, app_client):
        client, _m, _s, _log = app_client
        r = client.post(
            "/assignments/ghost/decision",
            json={"decision": "accepted", "reviewer": "x"},
        )
        assert r.status_code == 404

    def test_bad_decision_400(self, app_client):
        client, _m, _s, _log = app_client
        r = client.post(
            "/assignments/k1~e1/decision",
            json={"decision": "maybe", "reviewer": "x"},
        )
        assert r.status_code == 400

    def test_decisions_survive_restart_via_store(self, app_client, tmp_path):
        client, _m, store, _log = app_client
        client.post(
            "/assignments/k1~e1/decision",
            json={"decision": "rejected", "reviewer": "analyst-9"},
        )
        reloaded = AssignmentLog.load_from_store(DocumentStore(store.root))
        again = reloaded.get("k1~e1")
        assert again.status == "rejected"
        assert again.decided_by == "analyst-9"


class TestReportEndpoint:
    def test_stored_report_served(self, app_client):
        client, _m, store, _log = app_client
        store.put(
            DocumentKey("reports", "op-zz", "stats"),
            {"display": {"vulnerable_entity_ratio": "36.4%"}},
        )
        r = client.get("/operations/op-zz/report/stats")
        assert r.status_code == 200
        assert r.json()["display"]["vulnerable_entity_ratio"] == "36.4%"
        assert client.get("/operations/op-zz/report/missing").status_code == 404
