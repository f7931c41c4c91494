"""Probe engines: emit one connection attempt and report the outcome.

The connect-based engine runs unprivileged and is what every test uses
on loopback.  A raw half-open (SYN) engine would drop in behind the same
interface but needs elevated privileges; deployments that have them can
register their own engine object.
"""

from __future__ import annotations

import socket
import time
from dataclasses import dataclass


@dataclass(frozen=True)
class ResponseEvent:
    """One observed response (or its absence) for a probed target."""

    src_ip: str
    src_port: int
    arrived_on_source: str
    responded: bool
    rtt_ms: float
    kind: str  # "synack" | "refused" | "timeout" | "udp"


class ConnectProbeEngine:
    """TCP connect / UDP datagram prober."""

    def __init__(self, connect_timeout: float = 2.0):
        self.connect_timeout = connect_timeout

    def probe(
        self,
        ip: str,
        port: int,
        source_id: str,
        transport: str = "tcp",
        udp_payload: bytes = b"",
    ) -> ResponseEvent:
        if transport == "udp":
            return self._probe_udp(ip, port, source_id, udp_payload)
        return self._probe_tcp(ip, port, source_id)

    def _probe_tcp(self, ip: str, port: int, source_id: str) -> ResponseEvent:
        t0 = time.perf_counter()
        try:
            sock = socket.create_connection((ip, port), timeout=self.connect_timeout)
        except ConnectionRefusedError:
            return ResponseEvent(ip, port, source_id, False, _ms(t0), "refused")
        except OSError:
            return ResponseEvent(ip, port, source_id, False, _ms(t0), "timeout")
        try:
            return ResponseEvent(ip, port, source_id, True, _ms(t0), "synack")
        finally:
            sock.close()

    def _probe_udp(self, ip: str, port: int, source_id: str, payload: bytes) -> ResponseEvent:
        t0 = time.perf_counter()
        sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        try:
            sock.settimeout(self.connect_timeout)
            sock.sendto(payload, (ip, port))
            try:
                sock.recvfrom(65536)
            except (socket.timeout, OSError):
                return ResponseEvent(ip, port, source_id, False, _ms(t0), "timeout")
            return ResponseEvent(ip, port, source_id, True, _ms(t0), "udp")
        finally:
            sock.close()


def _ms(t0: float) -> float:
    return (time.perf_counter() - t0) * 1000.0


class RateLimiter:
    """Paces an event stream to at most max_pps events per second."""

    def __init__(self, max_pps: float | None, clock=time.monotonic, sleep=time.sleep):
        if max_pps is not None and max_pps <= 0:
            raise ValueError("max_pps must be positive")
        self.max_pps = max_pps
        self.clock = clock
        self.sleep = sleep
        self._start: float | None = None
        self._count = 0

    def wait(self) -> None:
        """Block until the next slot; n waits take at least n/max_pps seconds.

        The schedule is start + count/rate (multiplicative, no float
        accumulation drift over long sweeps)."""
        if self.max_pps is None:
            return
        if self._start is None:
            self._start = self.clock()
        self._count += 1
        due = self._start + self._count / self.max_pps
        now = self.clock()
        if now < due:
            self.sleep(due - now)
        else:
            # fell behind; rebase instead of bursting to catch up
            self._start = now - self._count / self.max_pps
