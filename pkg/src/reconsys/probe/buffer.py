"""Recent-probe ring buffer: the anti-amplification gate.

A response is only accepted when its sender matches a destination we
probed recently, on the source it was probed from.  Entries are evicted
strictly FIFO once the buffer is full; a late response to an evicted
probe is rejected (distinguishable from a never-probed sender, which is
the spoofing case).

One sender thread writes, the receiver thread validates concurrently;
the internal lock gives the required happens-before: an entry recorded
before the probe is emitted is visible to any later validation.
"""

from __future__ import annotations

import threading
import time
from collections import OrderedDict
from dataclasses import dataclass

DEFAULT_CAPACITY = 1_048_576

REJECT_NEVER_PROBED = "never_probed"
REJECT_EVICTED = "evicted"
REJECT_WRONG_SOURCE = "wrong_source"


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str | None = None
    source_id: str | None = None
    sent_at: float | None = None


class RecentProbeBuffer:
    def __init__(self, capacity: int = DEFAULT_CAPACITY):
        if capacity < 1:
            raise ValueError("capacity must be at least 1")
        self.capacity = capacity
        self._lock = threading.Lock()
        # (ip, port) -> (source_id, sent_at); insertion order is probe order
        self._live: OrderedDict[tuple[str, int], tuple[str, float]] = OrderedDict()
        # everything ever recorded, to tell `evicted` from `never_probed`
        self._ever: set[tuple[str, int]] = set()

    def __len__(self) -> int:
        with self._lock:
            return len(self._live)

    def record(self, dest_ip: str, dest_port: int, source_id: str, sent_at: float | None = None) -> None:
        """Must be called before the probe packet for this entry is emitted."""
        sent_at = time.monotonic() if sent_at is None else sent_at
        key = (dest_ip, dest_port)
        with self._lock:
            if key in self._live:
                self._live.move_to_end(key)
            self._live[key] = (source_id, sent_at)
            self._ever.add(key)
            while len(self._live) > self.capacity:
                self._live.popitem(last=False)

    def validate(self, src_ip: str, src_port: int, arrived_on_source: str) -> Verdict:
        """Accept iff (src_ip, src_port) is a live entry probed from
        arrived_on_source; otherwise reject with the precise reason."""
        key = (src_ip, src_port)
        with self._lock:
            entry = self._live.get(key)
            if entry is not None:
                source_id, sent_at = entry
                if source_id == arrived_on_source:
                    return Verdict(True, None, source_id, sent_at)
                return Verdict(False, REJECT_WRONG_SOURCE, source_id, sent_at)
            if key in self._ever:
                return Verdict(False, REJECT_EVICTED)
            return Verdict(False, REJECT_NEVER_PROBED)
