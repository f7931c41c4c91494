"""Join lookups onto service records, producing enriched JSON documents.

Enrichment is annotation-only: the embedded service record is carried
through untouched, and serialization uses a fixed field order so that
identical inputs always produce byte-identical output lines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .indices import AsnIndex, GeoIndex, RegistryIndex

SCHEMA_VERSION = 1


@dataclass
class Indices:
    registry: RegistryIndex | None = None
    asn: AsnIndex | None = None
    geo: GeoIndex | None = None
    resolver: Any | None = None  # needs .reverse_dns(ip)
    snapshot_tag: str = ""


def lookup_registry(ip: str, index: RegistryIndex | None):
    return index.lookup(ip) if index else None


def lookup_asn(ip: str, index: AsnIndex | None):
    return index.lookup(ip) if index else None


def reverse_dns(ip: str, resolver: Any | None) -> str | None:
    return resolver.reverse_dns(ip) if resolver else None


def geo_lookup(ip: str, index: GeoIndex | None):
    return index.lookup(ip) if index else None


def enrich(record: dict[str, Any], indices: Indices, operation_id: str = "") -> dict[str, Any]:
    """Compose the four lookups around one service record document."""
    ip = record["ip"]
    registry = lookup_registry(ip, indices.registry)
    asn = lookup_asn(ip, indices.asn)
    rdns = reverse_dns(ip, indices.resolver)
    geo = geo_lookup(ip, indices.geo)
    return {
        "schema": SCHEMA_VERSION,
        "operation_id": operation_id,
        "service": record,
        "registry": registry.to_doc() if registry else None,
        "asn": asn.to_doc() if asn else None,
        "rdns": rdns,
        "geo": geo.to_doc() if geo else None,
        "snapshot_tag": indices.snapshot_tag,
    }


def to_ndjson_line(enriched: dict[str, Any]) -> str:
    return json.dumps(enriched, sort_keys=True, separators=(",", ":"))


def enrich_all(
    records: list[dict[str, Any]], indices: Indices, operation_id: str = ""
) -> list[dict[str, Any]]:
    return [enrich(r, indices, operation_id) for r in records]
