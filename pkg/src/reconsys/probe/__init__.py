"""Probe layer: source rotation, ring-buffer validation, scan-node loop."""

from .buffer import (
    DEFAULT_CAPACITY,
    REJECT_EVICTED,
    REJECT_NEVER_PROBED,
    REJECT_WRONG_SOURCE,
    RecentProbeBuffer,
    Verdict,
)
from .engine import ConnectProbeEngine, RateLimiter, ResponseEvent
from .node import NodeConfig, NodeCounters, ScanNode
from .sources import SourcePool

__all__ = [
    "ConnectProbeEngine",
    "DEFAULT_CAPACITY",
    "NodeConfig",
    "NodeCounters",
    "REJECT_EVICTED",
    "REJECT_NEVER_PROBED",
    "REJECT_WRONG_SOURCE",
    "RateLimiter",
    "RecentProbeBuffer",
    "ResponseEvent",
    "ScanNode",
    "SourcePool",
    "Verdict",
]
