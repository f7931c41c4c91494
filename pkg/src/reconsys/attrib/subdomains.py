"""Subdomain discovery: transparency-log search plus wordlist guessing.

The CT source is any HTTP endpoint speaking the public search response
shape (a JSON list of ``{"name_value": ...}``); when it is unreachable
the result degrades to wordlist-only and says so.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any

import httpx

_DOMAIN_RE = re.compile(
    r"^(?=.{1,253}$)[a-z0-9]([a-z0-9-]{0,61}[a-z0-9])?"
    r"(\.[a-z0-9]([a-z0-9-]{0,61}[a-z0-9])?)+$"
)

DEFAULT_WORDLIST = ("www", "mail", "vpn", "portal", "mx", "webmail", "remote", "owa")


def valid_domain(domain: str) -> bool:
    return bool(_DOMAIN_RE.match(domain.lower()))


class CtSource:
    """Client for a crt.sh-compatible search endpoint."""

    def __init__(self, base_url: str, timeout: float = 10.0):
        self.base_url = base_url
        self.timeout = timeout

    def names_for(self, domain: str) -> list[str]:
        response = httpx.get(
            self.base_url,
            params={"q": f"%.{domain}", "output": "json"},
            timeout=self.timeout,
        )
        response.raise_for_status()
        names: set[str] = set()
        for entry in response.json():
            for name in str(entry.get("name_value", "")).splitlines():
                name = name.strip().lower().removeprefix("*.")
                if name:
                    names.add(name)
        return sorted(names)


@dataclass(frozen=True)
class DiscoveryResult:
    domain: str
    hostnames: tuple[str, ...]
    partial: bool  # CT source was unreachable; wordlist-only result


def discover_subdomains(
    domain: str,
    ct_source: CtSource | None,
    wordlist: tuple[str, ...] = DEFAULT_WORDLIST,
    resolver: Any | None = None,
) -> DiscoveryResult:
    """Union of CT-derived names and resolving wordlist candidates; every
    result equals the domain or ends with it."""
    domain = domain.strip().lower()
    if not valid_domain(domain):
        raise ValueError(f"not a valid domain: {domain!r}")
    names: set[str] = set()
    partial = False
    if ct_source is not None:
        try:
            for name in ct_source.names_for(domain):
                if name == domain or name.endswith("." + domain):
                    names.add(name)
        except (httpx.HTTPError, ValueError):
            partial = True
    if resolver is not None:
        for word in wordlist:
            candidate = f"{word}.{domain}"
            if resolver.resolve(candidate):
                names.add(candidate)
    return DiscoveryResult(domain=domain, hostnames=tuple(sorted(names)), partial=partial)
