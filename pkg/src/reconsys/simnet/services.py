"""Desk-scale synthetic services bound to loopback addresses.

Every service logs each accepted connection, so tests can assert not
just what a scan found but also what it touched: decoy services sit
outside the scanned ranges and their logs must stay empty (the
anti-amplification oracle).
"""

from __future__ import annotations

import datetime
import socket
import ssl
import tempfile
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any


@dataclass(frozen=True)
class TlsSpec:
    subject_cn: str
    san: tuple[str, ...] = ()


@dataclass
class SimServiceSpec:
    ip: str
    protocol_id: str = "http"
    banner: str = ""
    port: int | None = None
    transport: str = "tcp"
    tls: TlsSpec | None = None
    latency_ms: float = 0.0
    silent: bool = False
    decoy: bool = False

    @classmethod
    def from_doc(cls, doc: dict[str, Any]) -> "SimServiceSpec":
        tls = doc.get("tls")
        return cls(
            ip=doc["ip"],
            protocol_id=doc.get("protocol_id", "http"),
            banner=doc.get("banner", ""),
            port=doc.get("port"),
            transport=doc.get("transport", "tcp"),
            tls=TlsSpec(tls["cn"], tuple(tls.get("sans", []))) if tls else None,
            latency_ms=float(doc.get("latency_ms", 0.0)),
            silent=bool(doc.get("silent", False)),
            decoy=bool(doc.get("decoy", False)),
        )


def make_self_signed_cert(cn: str, sans: tuple[str, ...]) -> tuple[bytes, bytes]:
    """Self-signed EC certificate; returns (cert_pem, key_pem)."""
    from cryptography import x509
    from cryptography.hazmat.primitives import hashes, serialization
    from cryptography.hazmat.primitives.asymmetric import ec
    from cryptography.x509.oid import NameOID

    key = ec.generate_private_key(ec.SECP256R1())
    name = x509.Name([x509.NameAttribute(NameOID.COMMON_NAME, cn)])
    now = datetime.datetime.now(datetime.timezone.utc)
    builder = (
        x509.CertificateBuilder()
        .subject_name(name)
        .issuer_name(name)
        .public_key(key.public_key())
        .serial_number(x509.random_serial_number())
        .not_valid_before(now - datetime.timedelta(days=1))
        .not_valid_after(now + datetime.timedelta(days=365))
    )
    if sans:
        builder = builder.add_extension(
            x509.SubjectAlternativeName([x509.DNSName(s) for s in sans]),
            critical=False,
        )
    cert = builder.sign(key, hashes.SHA256())
    return (
        cert.public_bytes(serialization.Encoding.PEM),
        key.private_bytes(
            serialization.Encoding.PEM,
            serialization.PrivateFormat.PKCS8,
            serialization.NoEncryption(),
        ),
    )


class SimService:
    """One synthetic TCP service on (ip, port)."""

    def __init__(self, spec: SimServiceSpec, port: int):
        self.spec = spec
        self.port = port
        self.connection_log: list[tuple[str, int, float]] = []
        self._log_lock = threading.Lock()
        self._stop = threading.Event()
        self._sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        self._sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        self._sock.bind((spec.ip, port))
        self._sock.listen(16)
        self._sock.settimeout(0.2)
        self._ssl_ctx = self._build_ssl() if spec.tls else None
        self._thread = threading.Thread(target=self._serve, daemon=True)
        self._thread.start()

    def _build_ssl(self) -> ssl.SSLContext:
        cert_pem, key_pem = make_self_signed_cert(
            self.spec.tls.subject_cn, self.spec.tls.san
        )
        ctx = ssl.SSLContext(ssl.PROTOCOL_TLS_SERVER)
        with tempfile.TemporaryDirectory() as tmp:
            cert_path = Path(tmp) / "cert.pem"
            key_path = Path(tmp) / "key.pem"
            cert_path.write_bytes(cert_pem)
            key_path.write_bytes(key_pem)
            ctx.load_cert_chain(cert_path, key_path)
        return ctx

    def _serve(self) -> None:
        while not self._stop.is_set():
            try:
                conn, peer = self._sock.accept()
            except socket.timeout:
                continue
            except OSError:
                return
            with self._log_lock:
                self.connection_log.append((peer[0], peer[1], time.monotonic()))
            threading.Thread(
                target=self._handle, args=(conn,), daemon=True
            ).start()

    def _handle(self, conn: socket.socket) -> None:
        spec = self.spec
        try:
            conn.settimeout(5.0)
            if spec.latency_ms:
                time.sleep(spec.latency_ms / 1000.0)
            if self._ssl_ctx is not None:
                try:
                    conn = self._ssl_ctx.wrap_socket(conn, server_side=True)
                except (ssl.SSLError, OSError):
                    return
            if spec.silent:
                # accept the connection, say nothing, wait for the peer
                try:
                    conn.recv(4096)
                except (socket.timeout, OSError):
                    pass
                return
            family = _family(spec.protocol_id)
            if family == "http":
                self._serve_http(conn)
            elif family == "greeting":
                self._serve_greeting(conn)
            else:  # openport: nothing to say, linger briefly
                try:
                    conn.recv(1024)
                except (socket.timeout, OSError):
                    pass
        finally:
            try:
                conn.close()
            except OSError:
                pass

    def _serve_http(self, conn: socket.socket) -> None:
        try:
            _consume_http_request(conn)
        except (socket.timeout, OSError):
            return
        body = b"<html>simnet</html>\n"
        head = [
            "HTTP/1.1 200 OK",
            f"Content-Length: {len(body)}",
            "Content-Type: text/html",
            "Connection: close",
        ]
        if self.spec.banner:
            head.insert(1, f"Server: {self.spec.banner}")
        try:
            conn.sendall("\r\n".join(head).encode("ascii") + b"\r\n\r\n" + body)
        except OSError:
            pass

    def _serve_greeting(self, conn: socket.socket) -> None:
        try:
            conn.sendall(self.spec.banner.encode("utf-8") + b"\r\n")
            conn.recv(1024)  # client ident / QUIT; content ignored
        except (socket.timeout, OSError):
            pass

    def stop(self) -> None:
        self._stop.set()
        try:
            self._sock.close()
        except OSError:
            pass

    def connections(self) -> list[tuple[str, int, float]]:
        with self._log_lock:
            return list(self.connection_log)


class SimUdpService:
    """Replies its banner to any incoming datagram."""

    def __init__(self, spec: SimServiceSpec, port: int):
        self.spec = spec
        self.port = port
        self.connection_log: list[tuple[str, int, float]] = []
        self._log_lock = threading.Lock()
        self._stop = threading.Event()
        self._sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        self._sock.bind((spec.ip, port))
        self._sock.settimeout(0.2)
        self._thread = threading.Thread(target=self._serve, daemon=True)
        self._thread.start()

    def _serve(self) -> None:
        while not self._stop.is_set():
            try:
                _data, peer = self._sock.recvfrom(65536)
            except socket.timeout:
                continue
            except OSError:
                return
            with self._log_lock:
                self.connection_log.append((peer[0], peer[1], time.monotonic()))
            if not self.spec.silent:
                if self.spec.latency_ms:
                    time.sleep(self.spec.latency_ms / 1000.0)
                try:
                    self._sock.sendto(self.spec.banner.encode("utf-8"), peer)
                except OSError:
                    pass

    def stop(self) -> None:
        self._stop.set()
        try:
            self._sock.close()
        except OSError:
            pass

    def connections(self) -> list[tuple[str, int, float]]:
        with self._log_lock:
            return list(self.connection_log)


def _family(protocol_id: str) -> str:
    if protocol_id in ("http", "https") or protocol_id.startswith("http"):
        return "http"
    if protocol_id in ("ssh", "ftp", "pop3", "imap", "telnet"):
        return "greeting"
    return "openport"


def _consume_http_request(conn: socket.socket) -> bytes:
    data = b""
    while b"\r\n\r\n" not in data and len(data) < 65536:
        chunk = conn.recv(4096)
        if not chunk:
            break
        data += chunk
    return data


@dataclass
class Manifest:
    """Ground truth: exactly what a correct scan of the scenario must find."""

    port: int
    ranges: list[str]
    protocol_id: str
    expected: list[dict[str, Any]] = field(default_factory=list)

    def expected_by_ip(self) -> dict[str, dict[str, Any]]:
        return {e["ip"]: e for e in self.expected}


class SimNetwork:
    """Launches a scenario's services and owns their lifecycle."""

    def __init__(self):
        self.services: list[SimService | SimUdpService] = []
        self.manifest: Manifest | None = None

    def launch(
        self,
        specs: list[SimServiceSpec],
        ranges: list[str],
        protocol_id: str,
        port: int | None = None,
    ) -> Manifest:
        ips = [s.ip for s in specs]
        if len(set(ips)) != len(ips):
            raise ValueError("simnet endpoints must be unique per scenario")
        port = port or _find_shared_port(ips)
        for spec in specs:
            svc: SimService | SimUdpService
            if spec.transport == "udp":
                svc = SimUdpService(spec, spec.port or port)
            else:
                svc = SimService(spec, spec.port or port)
            self.services.append(svc)
        expected = [
            {
                "ip": s.ip,
                "port": s.port or port,
                "protocol_id": protocol_id,
                "banner": "" if s.silent else s.banner if _has_banner(s, protocol_id) else "",
                "tls_names": sorted(
                    {n.lower() for n in (s.tls.san if s.tls else ())}
                    | ({s.tls.subject_cn.lower()} if s.tls else set())
                ),
                "silent": s.silent,
            }
            for s in specs
            if not s.decoy
        ]
        self.manifest = Manifest(
            port=port, ranges=ranges, protocol_id=protocol_id, expected=expected
        )
        return self.manifest

    def teardown(self) -> None:
        for svc in self.services:
            svc.stop()
        self.services = []

    def decoy_contacts(self) -> list[tuple[str, int, float]]:
        """Connections received by decoy services; must be empty always."""
        out = []
        for svc in self.services:
            if svc.spec.decoy:
                out.extend(svc.connections())
        return out

    def service_at(self, ip: str) -> SimService | SimUdpService | None:
        for svc in self.services:
            if svc.spec.ip == ip:
                return svc
        return None

    def __enter__(self) -> "SimNetwork":
        return self

    def __exit__(self, *exc) -> None:
        self.teardown()


def _has_banner(spec: SimServiceSpec, protocol_id: str) -> bool:
    """openport grabs never read, so their expected banner is empty even
    if the service would have said something."""
    return _family(protocol_id) in ("http", "greeting") or spec.transport == "udp"


def _find_shared_port(ips: list[str], attempts: int = 32) -> int:
    for _ in range(attempts):
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.bind(("127.0.0.1", 0))
        candidate = probe.getsockname()[1]
        probe.close()
        try:
            for ip in ips:
                s = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
                s.bind((ip, candidate))
                s.close()
            return candidate
        except OSError:
            continue
    raise RuntimeError("could not find a shared free port for the scenario")
