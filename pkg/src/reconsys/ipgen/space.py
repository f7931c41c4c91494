"""Target-space definition: IPv4 ranges plus one (port, protocol) pair.

Ranges are normalized (sorted, adjacent runs merged) when the space is
built.  Overlapping declarations are rejected rather than deduplicated:
an operator declaring the same address twice almost certainly made a
mistake we should not paper over.
"""

from __future__ import annotations

import ipaddress
from bisect import bisect_right
from dataclasses import dataclass, field


class RangeOverlapError(ValueError):
    """Two declared ranges cover at least one address in common."""


def parse_range(text: str) -> tuple[int, int]:
    """Parse one range in CIDR (``10.0.0.0/24``), dashed
    (``10.0.0.1-10.0.0.9``) or single-address notation into an inclusive
    integer pair."""
    text = text.strip()
    if "-" in text:
        lo_s, hi_s = text.split("-", 1)
        lo = int(ipaddress.IPv4Address(lo_s.strip()))
        hi = int(ipaddress.IPv4Address(hi_s.strip()))
        if hi < lo:
            raise ValueError(f"range end before start: {text!r}")
        return lo, hi
    if "/" in text:
        net = ipaddress.IPv4Network(text, strict=False)
        return int(net.network_address), int(net.broadcast_address)
    addr = int(ipaddress.IPv4Address(text))
    return addr, addr


def normalize_ranges(ranges: list[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Sort ranges and merge adjacent ones; overlap raises RangeOverlapError."""
    ordered = sorted(ranges)
    merged: list[tuple[int, int]] = []
    for lo, hi in ordered:
        if merged and lo <= merged[-1][1]:
            a = ipaddress.IPv4Address(lo)
            raise RangeOverlapError(f"address {a} declared more than once")
        if merged and lo == merged[-1][1] + 1:
            merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return tuple(merged)


@dataclass(frozen=True)
class TargetSpace:
    """The set of (address, port) pairs one scan operation sweeps."""

    ranges: tuple[tuple[int, int], ...]
    port: int
    protocol_id: str
    size: int = field(init=False)
    _offsets: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port out of range: {self.port}")
        if not self.ranges:
            raise ValueError("target space needs at least one range")
        offsets = []
        total = 0
        for lo, hi in self.ranges:
            offsets.append(total)
            total += hi - lo + 1
        object.__setattr__(self, "size", total)
        object.__setattr__(self, "_offsets", tuple(offsets))

    @classmethod
    def from_strings(cls, range_texts: list[str], port: int, protocol_id: str) -> "TargetSpace":
        parsed = [parse_range(t) for t in range_texts]
        return cls(ranges=normalize_ranges(parsed), port=port, protocol_id=protocol_id)

    def range_strings(self) -> list[str]:
        return [
            f"{ipaddress.IPv4Address(lo)}-{ipaddress.IPv4Address(hi)}"
            for lo, hi in self.ranges
        ]

    def index_to_target(self, index: int) -> tuple[str, int]:
        """Map a linear index to the (address, port) it stands for."""
        if not 0 <= index < self.size:
            raise ValueError(f"index {index} outside [0, {self.size})")
        slot = bisect_right(self._offsets, index) - 1
        lo, _hi = self.ranges[slot]
        addr = lo + (index - self._offsets[slot])
        return str(ipaddress.IPv4Address(addr)), self.port

    def target_to_index(self, ip: str) -> int:
        """Inverse of index_to_target for addresses inside the space."""
        addr = int(ipaddress.IPv4Address(ip))
        for slot, (lo, hi) in enumerate(self.ranges):
            if lo <= addr <= hi:
                return self._offsets[slot] + (addr - lo)
        raise ValueError(f"{ip} not covered by this target space")

    def contains(self, ip: str) -> bool:
        addr = int(ipaddress.IPv4Address(ip))
        return any(lo <= addr <= hi for lo, hi in self.ranges)

    def is_private_scope(self) -> bool:
        """True when every range sits wholly inside loopback or RFC1918 space."""
        blocks = [
            ipaddress.IPv4Network("127.0.0.0/8"),
            ipaddress.IPv4Network("10.0.0.0/8"),
            ipaddress.IPv4Network("172.16.0.0/12"),
            ipaddress.IPv4Network("192.168.0.0/16"),
        ]
        for lo, hi in self.ranges:
            if not any(
                int(b.network_address) <= lo and hi <= int(b.broadcast_address)
                for b in blocks
            ):
                return False
        return True
