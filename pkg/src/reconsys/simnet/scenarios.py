"""Shipped scenarios and their loader."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .services import SimNetwork, SimServiceSpec

SHIPPED = ("basic3", "empty_banners_47pct", "failover", "spoofstorm")


@dataclass
class Scenario:
    name: str
    ranges: list[str]
    protocol_id: str
    services: list[SimServiceSpec]
    unit_size: int = 64
    site_groups: list[str] = field(default_factory=list)
    spoofs: list[dict[str, Any]] = field(default_factory=list)

    def launch(self, port: int | None = None) -> SimNetwork:
        net = SimNetwork()
        net.launch(self.services, self.ranges, self.protocol_id, port=port)
        return net


def load_scenario(name_or_path: str | Path) -> Scenario:
    """Load a shipped scenario by name, or any scenario file by path."""
    if isinstance(name_or_path, str) and name_or_path in SHIPPED:
        text = (
            resources.files("reconsys.data.scenarios")
            .joinpath(f"{name_or_path}.json")
            .read_text("utf-8")
        )
    else:
        text = Path(name_or_path).read_text("utf-8")
    doc = json.loads(text)
    return Scenario(
        name=doc["name"],
        ranges=list(doc["ranges"]),
        protocol_id=doc["protocol_id"],
        services=[SimServiceSpec.from_doc(d) for d in doc["services"]],
        unit_size=int(doc.get("unit_size", 64)),
        site_groups=list(doc.get("site_groups", [])),
        spoofs=list(doc.get("spoofs", [])),
    )
