"""Lookup indices: registry ranges, prefix-to-AS, geolocation, reverse DNS.

All three file formats are plain text so operations stay reproducible
offline:

* registry CSV: ``start_ip,end_ip,netname,description,country,source``
* prefix-to-AS: ``prefix<TAB>length<TAB>asn<TAB>as_name``
* geo CSV: ``cidr,lat,lon,city,country``
"""

from __future__ import annotations

import csv
import ipaddress
import socket
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .intervals import IntervalIndex


@dataclass(frozen=True)
class RegistryRecord:
    start_ip: str
    end_ip: str
    netname: str
    description: str
    country: str
    source: str

    def to_doc(self) -> dict:
        return {
            "start_ip": self.start_ip,
            "end_ip": self.end_ip,
            "netname": self.netname,
            "description": self.description,
            "country": self.country,
            "source": self.source,
        }


@dataclass(frozen=True)
class PrefixAsn:
    prefix: str
    length: int
    asn: int
    as_name: str
    snapshot_date: str = ""

    def to_doc(self) -> dict:
        return {
            "prefix": self.prefix,
            "length": self.length,
            "asn": self.asn,
            "as_name": self.as_name,
            "snapshot_date": self.snapshot_date,
        }


@dataclass(frozen=True)
class GeoEntry:
    cidr: str
    lat: float
    lon: float
    city: str
    country: str

    def to_doc(self) -> dict:
        return {
            "cidr": self.cidr,
            "lat": self.lat,
            "lon": self.lon,
            "city": self.city,
            "country": self.country,
        }


def _ip_int(ip: str) -> int:
    return int(ipaddress.IPv4Address(ip))


class RegistryIndex:
    """Most-specific-range-wins WHOIS/INETNUM lookup."""

    def __init__(self, records: Iterable[RegistryRecord]):
        self.records = list(records)
        self._index = IntervalIndex.build(
            (
                (_ip_int(r.start_ip), _ip_int(r.end_ip), r)
                for r in self.records
            ),
            tie_break=lambda r: r.netname,
        )

    @classmethod
    def from_csv(cls, path: str | Path) -> "RegistryIndex":
        records = []
        with open(path, newline="", encoding="utf-8") as fh:
            for row in csv.reader(fh):
                if not row or row[0].startswith("#"):
                    continue
                start, end, netname, description, country, source = row[:6]
                records.append(
                    RegistryRecord(start, end, netname, description, country, source)
                )
        return cls(records)

    def lookup(self, ip: str) -> RegistryRecord | None:
        return self._index.lookup(_ip_int(ip))


class AsnIndex:
    """Longest-prefix-match BGP prefix-to-AS lookup."""

    def __init__(self, entries: Iterable[PrefixAsn], snapshot_date: str = ""):
        self.snapshot_date = snapshot_date
        self.entries = list(entries)
        # longest prefix == smallest covering range, which is exactly the
        # interval index's specificity rule; duplicate prefixes tie-break
        # on the lowest AS number for determinism
        self._index = IntervalIndex.build(
            ((_prefix_lo(e), _prefix_hi(e), e) for e in self.entries),
            tie_break=lambda e: e.asn,
        )

    @classmethod
    def from_file(cls, path: str | Path, snapshot_date: str = "") -> "AsnIndex":
        entries = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                prefix, length, asn, as_name = line.split("\t")[:4]
                entries.append(
                    PrefixAsn(prefix, int(length), int(asn), as_name, snapshot_date)
                )
        return cls(entries, snapshot_date)

    def lookup(self, ip: str) -> PrefixAsn | None:
        return self._index.lookup(_ip_int(ip))


def _prefix_lo(e: PrefixAsn) -> int:
    net = ipaddress.IPv4Network(f"{e.prefix}/{e.length}", strict=False)
    return int(net.network_address)


def _prefix_hi(e: PrefixAsn) -> int:
    net = ipaddress.IPv4Network(f"{e.prefix}/{e.length}", strict=False)
    return int(net.broadcast_address)


class GeoIndex:
    def __init__(self, entries: Iterable[GeoEntry]):
        self.entries = list(entries)
        self._index = IntervalIndex.build(
            (
                (
                    int(ipaddress.IPv4Network(e.cidr, strict=False).network_address),
                    int(ipaddress.IPv4Network(e.cidr, strict=False).broadcast_address),
                    e,
                )
                for e in self.entries
            ),
            tie_break=lambda e: e.cidr,
        )

    @classmethod
    def from_csv(cls, path: str | Path) -> "GeoIndex":
        entries = []
        with open(path, newline="", encoding="utf-8") as fh:
            for row in csv.reader(fh):
                if not row or row[0].startswith("#"):
                    continue
                cidr, lat, lon, city, country = row[:5]
                entries.append(GeoEntry(cidr, float(lat), float(lon), city, country))
        return cls(entries)

    def lookup(self, ip: str) -> GeoEntry | None:
        return self._index.lookup(_ip_int(ip))


class SystemResolver:
    """PTR lookups via the host resolver; tests use StaticResolver instead."""

    def reverse_dns(self, ip: str) -> str | None:
        try:
            hostname, _aliases, _addrs = socket.gethostbyaddr(ip)
            return hostname
        except OSError:
            return None

    def resolve(self, hostname: str) -> str | None:
        try:
            return socket.gethostbyname(hostname)
        except OSError:
            return None
