"""Handler registry: protocol_id -> transport, handler, UDP payload.

The shipped registry covers the full operation catalog; protocols
without a dedicated handler carry openport semantics (validated connect,
empty banner).  Operators extend coverage by editing the JSON file, no
code change needed for payload-only UDP protocols.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .handlers import Timeouts, grab
from .records import ServiceRecord

_FALLBACK = ("tcp", "openport", b"")


@dataclass(frozen=True)
class HandlerSpec:
    protocol_id: str
    transport: str
    default_port: int
    handler: str
    udp_payload: bytes = b""


class HandlerRegistry:
    def __init__(self, specs: dict[str, HandlerSpec]):
        self.specs = specs

    @classmethod
    def load(cls, path: str | Path | None = None) -> "HandlerRegistry":
        if path is None:
            text = resources.files("reconsys.data").joinpath("handlers.json").read_text("utf-8")
        else:
            text = Path(path).read_text("utf-8")
        raw = json.loads(text)
        specs = {}
        for pid, cfg in raw.items():
            specs[pid] = HandlerSpec(
                protocol_id=pid,
                transport=cfg.get("transport", "tcp"),
                default_port=int(cfg.get("default_port", 0)),
                handler=cfg.get("handler", "openport"),
                udp_payload=bytes.fromhex(cfg.get("udp_payload_hex", "")),
            )
        return cls(specs)

    def known(self, protocol_id: str) -> bool:
        return protocol_id in self.specs

    def spec_for(self, protocol_id: str) -> HandlerSpec:
        """Unmapped protocols degrade to openport semantics."""
        spec = self.specs.get(protocol_id)
        if spec is None:
            transport, handler, payload = _FALLBACK
            spec = HandlerSpec(protocol_id, transport, 0, handler, payload)
        return spec

    def grab(
        self,
        ip: str,
        port: int,
        protocol_id: str,
        timeouts: Timeouts | None = None,
        node_id: str = "",
        site_group: str = "default",
    ) -> ServiceRecord:
        spec = self.spec_for(protocol_id)
        return grab(
            ip=ip,
            port=port,
            protocol_id=protocol_id,
            handler_name=spec.handler,
            transport=spec.transport,
            timeouts=timeouts,
            udp_payload=spec.udp_payload,
            node_id=node_id,
            site_group=site_group,
        )
