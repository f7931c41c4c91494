"""Adversarial response injection against a scan node under test."""

from __future__ import annotations

from typing import Any

from ..probe import ResponseEvent, ScanNode


def inject_spoof(
    node: ScanNode,
    src_ip: str,
    src_port: int,
    arrived_on_source: str = "spoofed-src",
) -> None:
    """Deliver a crafted response from a never-probed endpoint to the node.

    A correct node rejects it at the ring buffer and opens no follow-up
    connection toward (src_ip, src_port)."""
    node.inject_response(
        ResponseEvent(
            src_ip=src_ip,
            src_port=src_port,
            arrived_on_source=arrived_on_source,
            responded=True,
            rtt_ms=0.1,
            kind="synack",
        )
    )


def inject_scenario_spoofs(node: ScanNode, spoofs: list[dict[str, Any]], default_port: int) -> int:
    for sp in spoofs:
        inject_spoof(
            node,
            sp["src_ip"],
            int(sp.get("src_port", default_port)),
            sp.get("arrived_on_source", "spoofed-src"),
        )
    return len(spoofs)
