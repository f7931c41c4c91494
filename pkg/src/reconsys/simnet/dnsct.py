"""DNS and certificate-transparency fixtures for offline tests."""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse


class StaticResolver:
    """Dict-backed stand-in for forward and reverse DNS."""

    def __init__(
        self,
        forward: dict[str, str] | None = None,
        reverse: dict[str, str] | None = None,
    ):
        self.forward = {k.lower(): v for k, v in (forward or {}).items()}
        self.reverse = dict(reverse or {})

    def resolve(self, hostname: str) -> str | None:
        return self.forward.get(hostname.lower())

    def reverse_dns(self, ip: str) -> str | None:
        return self.reverse.get(ip)


class CtFixtureServer:
    """Tiny HTTP server answering certificate-transparency searches.

    Response shape matches the public search endpoints the subdomain
    discovery client speaks: a JSON list of ``{"name_value": ...}``
    entries, newline-separated names allowed inside one entry.
    """

    def __init__(self, entries_by_domain: dict[str, list[str]]):
        self.entries_by_domain = {
            k.lower(): list(v) for k, v in entries_by_domain.items()
        }
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def do_GET(self):  # noqa: N802 (http.server API)
                params = parse_qs(urlparse(self.path).query)
                query = params.get("q", [""])[0]
                domain = query.removeprefix("%.").lower()
                names = outer.entries_by_domain.get(domain, [])
                body = json.dumps([{"name_value": n} for n in names]).encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)

            def log_message(self, *args):  # quiet
                pass

        self._server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()

    @property
    def base_url(self) -> str:
        host, port = self._server.server_address
        return f"http://{host}:{port}/"

    def stop(self) -> None:
        self._server.shutdown()
        self._server.server_close()

    def __enter__(self) -> "CtFixtureServer":
        return self

    def __exit__(self, *exc) -> None:
        self.stop()
