"""Protocol handlers: fixed request scripts that read identification data.

Every handler speaks just enough of its protocol to capture the service's
self-identification, sends nothing beyond its fixed script, and reads at
most READ_CAP bytes.  Handlers never raise on remote misbehavior: a
timeout yields a silent record, a protocol violation a malformed one with
the raw bytes kept for the analyst.
"""

from __future__ import annotations

import socket
import ssl
import time
from dataclasses import dataclass

from .records import (
    STATUS_MALFORMED,
    STATUS_OK,
    STATUS_SILENT,
    CertInfo,
    ServiceRecord,
)

READ_CAP = 64 * 1024
USER_AGENT = "reconsys-appscan/0.1 (inventory survey)"


@dataclass(frozen=True)
class Timeouts:
    connect: float = 5.0
    read: float = 10.0
    total: float = 20.0


def _recv_some(sock: socket.socket, deadline: float, max_bytes: int = READ_CAP) -> bytes:
    """Read until the peer closes, max_bytes arrive, or the deadline hits."""
    chunks: list[bytes] = []
    got = 0
    while got < max_bytes:
        budget = deadline - time.monotonic()
        if budget <= 0:
            break
        sock.settimeout(budget)
        try:
            chunk = sock.recv(min(4096, max_bytes - got))
        except (socket.timeout, OSError):
            break
        if not chunk:
            break
        chunks.append(chunk)
        got += len(chunk)
    return b"".join(chunks)


def _recv_line(sock: socket.socket, deadline: float, max_bytes: int = 4096) -> bytes:
    buf = bytearray()
    while len(buf) < max_bytes:
        budget = deadline - time.monotonic()
        if budget <= 0:
            break
        sock.settimeout(budget)
        try:
            b = sock.recv(1)
        except (socket.timeout, OSError):
            break
        if not b:
            break
        buf += b
        if b == b"\n":
            break
    return bytes(buf)


def _decode(data: bytes) -> str:
    return data.decode("utf-8", errors="replace")


# -- individual handlers ---------------------------------------------------


def handle_openport(sock: socket.socket, deadline: float) -> tuple[str, bytes, str]:
    return "", b"", STATUS_OK


def handle_http(sock: socket.socket, deadline: float, host: str = "") -> tuple[str, bytes, str]:
    request = (
        f"GET / HTTP/1.1\r\nHost: {host}\r\n"
        f"User-Agent: {USER_AGENT}\r\nAccept: */*\r\nConnection: close\r\n\r\n"
    )
    sock.sendall(request.encode("ascii"))
    raw = _recv_some(sock, deadline)
    if not raw:
        return "", b"", STATUS_SILENT
    head = raw.split(b"\r\n\r\n", 1)[0]
    lines = head.split(b"\r\n")
    if not lines or not lines[0].startswith(b"HTTP/"):
        return "", raw, STATUS_MALFORMED
    banner = ""
    for line in lines[1:]:
        if line.lower().startswith(b"server:"):
            banner = _decode(line.split(b":", 1)[1]).strip()
            break
    return banner, raw, STATUS_OK


def handle_ssh(sock: socket.socket, deadline: float) -> tuple[str, bytes, str]:
    raw = _recv_line(sock, deadline)
    if not raw:
        return "", b"", STATUS_SILENT
    if not raw.startswith(b"SSH-"):
        return "", raw, STATUS_MALFORMED
    try:
        sock.sendall(b"SSH-2.0-" + USER_AGENT.split("/")[0].encode() + b"\r\n")
    except OSError:
        pass
    return _decode(raw).strip(), raw, STATUS_OK


def handle_greeting(
    sock: socket.socket, deadline: float, quit_line: bytes | None = None
) -> tuple[str, bytes, str]:
    """Greeting-first protocols (ftp, pop3, imap, telnet): capture the first line."""
    raw = _recv_line(sock, deadline)
    if not raw:
        return "", b"", STATUS_SILENT
    if quit_line:
        try:
            sock.sendall(quit_line)
        except OSError:
            pass
    return _decode(_strip_telnet_iac(raw)).strip(), raw, STATUS_OK


def _strip_telnet_iac(data: bytes) -> bytes:
    """Drop telnet IAC negotiation triples so the greeting stays readable."""
    out = bytearray()
    i = 0
    while i < len(data):
        if data[i] == 255 and i + 2 < len(data):
            i += 3
        else:
            out.append(data[i])
            i += 1
    return bytes(out)


# -- dispatch ---------------------------------------------------------------

_TCP_HANDLERS = {
    "openport": lambda sock, deadline, host: handle_openport(sock, deadline),
    "http": lambda sock, deadline, host: handle_http(sock, deadline, host),
    "ssh": lambda sock, deadline, host: handle_ssh(sock, deadline),
    "ftp": lambda sock, deadline, host: handle_greeting(sock, deadline, b"QUIT\r\n"),
    "pop3": lambda sock, deadline, host: handle_greeting(sock, deadline, b"QUIT\r\n"),
    "imap": lambda sock, deadline, host: handle_greeting(sock, deadline, b"a1 LOGOUT\r\n"),
    "telnet": lambda sock, deadline, host: handle_greeting(sock, deadline),
}


def grab(
    ip: str,
    port: int,
    protocol_id: str,
    handler_name: str,
    transport: str = "tcp",
    timeouts: Timeouts | None = None,
    udp_payload: bytes = b"",
    node_id: str = "",
    site_group: str = "default",
) -> ServiceRecord:
    """Run the application-layer exchange and return a ServiceRecord.

    Always returns a record: unreachable or silent endpoints come back
    with the silent status, protocol violations with the malformed flag
    and the raw bytes retained.
    """
    timeouts = timeouts or Timeouts()
    deadline = time.monotonic() + timeouts.total
    tls: CertInfo | None = None

    if transport == "udp":
        banner, raw, status = _grab_udp(ip, port, udp_payload, timeouts)
    else:
        tls_wanted = handler_name == "https"
        base_handler = "http" if tls_wanted else handler_name
        fn = _TCP_HANDLERS.get(base_handler)
        if fn is None:
            raise KeyError(f"no handler registered under {handler_name!r}")
        banner, raw, status, tls = _grab_tcp(ip, port, fn, tls_wanted, timeouts, deadline)

    return ServiceRecord(
        ip=ip,
        port=port,
        protocol_id=protocol_id,
        transport=transport,
        banner=banner,
        raw_excerpt=raw,
        tls=tls,
        status=status,
        collected_at=time.time(),
        node_id=node_id,
        site_group=site_group,
    )


def _grab_tcp(
    ip: str,
    port: int,
    fn,
    tls_wanted: bool,
    timeouts: Timeouts,
    deadline: float,
) -> tuple[str, bytes, str, CertInfo | None]:
    try:
        sock = socket.create_connection((ip, port), timeout=timeouts.connect)
    except OSError:
        return "", b"", STATUS_SILENT, None
    tls: CertInfo | None = None
    try:
        if tls_wanted:
            ctx = ssl.SSLContext(ssl.PROTOCOL_TLS_CLIENT)
            ctx.check_hostname = False
            ctx.verify_mode = ssl.CERT_NONE
            try:
                sock = ctx.wrap_socket(sock, server_hostname=ip)
                der = sock.getpeercert(binary_form=True)
                if der:
                    tls = CertInfo.from_der(der)
            except (ssl.SSLError, OSError):
                return "", b"", STATUS_MALFORMED, None
        banner, raw, status = fn(sock, deadline, ip)
        return banner, raw, status, tls
    finally:
        try:
            sock.close()
        except OSError:
            pass


def _grab_udp(ip: str, port: int, payload: bytes, timeouts: Timeouts) -> tuple[str, bytes, str]:
    sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
    try:
        sock.settimeout(timeouts.read)
        sock.sendto(payload, (ip, port))
        try:
            data, _addr = sock.recvfrom(READ_CAP)
        except (socket.timeout, OSError):
            return "", b"", STATUS_SILENT
        return _decode(data).strip(), data, STATUS_OK
    finally:
        sock.close()
