"""Local end-to-end run: scenario services, in-process master, real nodes.

This is what `recon demo` executes and what several integration tests
reuse: everything a deployment does, shrunk onto loopback.
"""

from __future__ import annotations

from typing import Any

from .enrich import Indices
from .ipgen import TargetSpace
from .orchestrator import MasterConfig, ScanMaster
from .orchestrator.client import InProcessMaster
from .pipeline import run_analysis
from .probe import NodeConfig, ScanNode
from .simnet import StaticResolver, load_scenario
from .store import DocumentStore


def fast_node_config(site_group: str = "default", **overrides: Any) -> NodeConfig:
    """Node timeouts tightened for loopback scale."""
    defaults = dict(
        site_group=site_group,
        connect_timeout=0.5,
        grab_connect_timeout=1.0,
        grab_read_timeout=1.0,
        grab_total_timeout=3.0,
        heartbeat_interval=0.2,
        poll_interval=0.02,
    )
    defaults.update(overrides)
    return NodeConfig(**defaults)


def run_demo(
    scenario_name: str,
    data_dir: str,
    node_count: int = 2,
    seed: int = 7,
) -> dict[str, Any]:
    scenario = load_scenario(scenario_name)
    store = DocumentStore(data_dir)
    master = ScanMaster(MasterConfig(), store=store)
    with scenario.launch() as net:
        space = TargetSpace.from_strings(
            scenario.ranges, net.manifest.port, scenario.protocol_id
        )
        op_id = master.create_operation(
            space,
            seed=seed,
            unit_size=scenario.unit_size,
            site_groups=scenario.site_groups or None,
        )
        groups = scenario.site_groups or ["default"]
        nodes = []
        for i in range(node_count):
            node = ScanNode(
                InProcessMaster(master),
                fast_node_config(site_group=groups[i % len(groups)]),
            )
            nodes.append(node)
        for node in nodes:
            node.run(stop_when_idle=True)
        for node in nodes:
            node.kill()
        result = run_analysis(
            master,
            op_id,
            store,
            indices=Indices(resolver=StaticResolver()),
        )
    status = master.status(op_id)
    return {
        "operation_id": op_id,
        "scenario": scenario.name,
        "finished": status.finished,
        "units_completed": status.completed,
        "records": len(result.records),
        "banners": sorted(
            {r.get("banner", "") for r in result.records if r.get("banner")}
        ),
        "data_dir": data_dir,
    }
