"""Aggregation and enrichment: dedup, WHOIS/ASN/rDNS/geo joins."""

from .enrich import (
    SCHEMA_VERSION,
    Indices,
    enrich,
    enrich_all,
    geo_lookup,
    lookup_asn,
    lookup_registry,
    reverse_dns,
    to_ndjson_line,
)
from .indices import (
    AsnIndex,
    GeoEntry,
    GeoIndex,
    PrefixAsn,
    RegistryIndex,
    RegistryRecord,
    SystemResolver,
)
from .intervals import IntervalIndex
from .merge import MergeResult, UnknownUnitBatchError, consistency_merge

__all__ = [
    "AsnIndex",
    "GeoEntry",
    "GeoIndex",
    "Indices",
    "IntervalIndex",
    "MergeResult",
    "PrefixAsn",
    "RegistryIndex",
    "RegistryRecord",
    "SCHEMA_VERSION",
    "SystemResolver",
    "UnknownUnitBatchError",
    "consistency_merge",
    "enrich",
    "enrich_all",
    "geo_lookup",
    "lookup_asn",
    "lookup_registry",
    "reverse_dns",
    "to_ndjson_line",
]
