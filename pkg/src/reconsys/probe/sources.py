"""Rotating source pool: deterministic originator selection per target.

Production pools hold distinct originator addresses (1,024 and up); in
test mode the identifiers name local ports instead, which keeps the
correlation logic identical without owning that much address space.
"""

from __future__ import annotations

import ipaddress
from dataclasses import dataclass

from ..ipgen._feistel_py import mix64


@dataclass(frozen=True)
class SourcePool:
    sources: tuple[str, ...]
    selection_seed: int = 0

    def __post_init__(self) -> None:
        if not self.sources:
            raise ValueError("source pool must hold at least one source")

    def source_for(self, ip: str, port: int) -> str:
        """Same target always maps to the same source; near-uniform spread."""
        addr = int(ipaddress.IPv4Address(ip))
        h = mix64((addr << 16) | port, self.selection_seed)
        return self.sources[h % len(self.sources)]

    @classmethod
    def of_size(cls, n: int, selection_seed: int = 0, prefix: str = "src") -> "SourcePool":
        return cls(tuple(f"{prefix}-{i:04d}" for i in range(n)), selection_seed)
