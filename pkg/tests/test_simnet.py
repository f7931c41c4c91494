import json

import httpx
import pytest

from reconsys.probe import NodeConfig, ScanNode
from reconsys.simnet import (
    SHIPPED,
    CtFixtureServer,
    SimNetwork,
    SimServiceSpec,
    StaticResolver,
    inject_spoof,
    load_scenario,
)


class TestScenarioFiles:
    def test_all_shipped_scenarios_load(self):
        for name in SHIPPED:
            scenario = load_scenario(name)
            assert scenario.name == name
            assert scenario.services
            assert scenario.ranges

    def test_empty_banner_scenario_shape(self):
        scenario = load_scenario("empty_banners_47pct")
        assert len(scenario.services) == 100
        assert sum(1 for s in scenario.services if s.banner == "") == 47

    def test_spoofstorm_carries_at_least_100_spoofs(self):
        scenario = load_scenario("spoofstorm")
        assert len(scenario.spoofs) >= 100
        decoys = [s for s in scenario.services if s.decoy]
        assert decoys

    def test_scenario_file_by_path(self, tmp_path):
        doc = {
            "name": "custom",
            "ranges": ["127.99.0.0/30"],
            "protocol_id": "http",
            "services": [{"ip": "127.99.0.1", "banner": "x"}],
        }
        p = tmp_path / "custom.json"
        p.write_text(json.dumps(doc), encoding="utf-8")
        scenario = load_scenario(p)
        assert scenario.services[0].ip == "127.99.0.1"


class TestSimNetwork:
    def test_launch_manifest_and_teardown(self):
        net = SimNetwork()
        manifest = net.launch(
            [SimServiceSpec(ip="127.71.0.1", protocol_id="http", banner="b")],
            ["127.71.0.0/28"],
            "http",
        )
        assert manifest.expected[0]["banner"] == "b"
        assert manifest.port > 0
        net.teardown()
        net.teardown()  # idempotent

    def test_duplicate_endpoints_rejected(self):
        net = SimNetwork()
        with pytest.raises(ValueError):
            net.launch(
                [
                    SimServiceSpec(ip="127.71.0.1"),
                    SimServiceSpec(ip="127.71.0.1"),
                ],
                ["127.71.0.0/28"],
                "http",
            )

    def test_connection_logging(self):
        net = SimNetwork()
        manifest = net.launch(
            [SimServiceSpec(ip="127.71.0.2", protocol_id="http", banner="b")],
            ["127.71.0.0/28"],
            "http",
        )
        import socket
        import time

        socket.create_connection(("127.71.0.2", manifest.port), timeout=1).close()
        svc = net.service_at("127.71.0.2")
        # the accept loop logs asynchronously; give it a moment
        deadline = time.monotonic() + 2.0
        while time.monotonic() < deadline and not svc.connections():
            time.sleep(0.01)
        assert len(svc.connections()) == 1
        net.teardown()


class TestFixtureServers:
    def test_ct_fixture_speaks_the_search_shape(self):
        with CtFixtureServer({"klinik-a.example": ["www.klinik-a.example"]}) as ct:
            r = httpx.get(
                ct.base_url, params={"q": "%.klinik-a.example", "output": "json"}
            )
            assert r.status_code == 200
            assert r.json() == [{"name_value": "www.klinik-a.example"}]

    def test_dns_fixture(self):
        resolver = StaticResolver(
            forward={"www.x.example": "10.0.0.1"},
            reverse={"10.0.0.1": "www.x.example"},
        )
        assert resolver.resolve("WWW.X.EXAMPLE") == "10.0.0.1"
        assert resolver.reverse_dns("10.0.0.1") == "www.x.example"


class TestSpoofInjection:
    def test_injected_event_reaches_node_intake(self):
        from reconsys.orchestrator import MasterConfig, ScanMaster
        from reconsys.orchestrator.client import InProcessMaster

        master = ScanMaster(MasterConfig())
        node = ScanNode(InProcessMaster(master), NodeConfig(node_id="n1"))
        inject_spoof(node, "127.72.0.9", 80)
        event = node._injected.get_nowait()
        assert event.src_ip == "127.72.0.9"
        assert event.responded
