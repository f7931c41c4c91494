"""Survey statistics: the headline numbers of an analysis run.

All stored values are exact quotients; the ``display`` mapping carries
the presentation strings (half-up rounding, one decimal for entity
ratios, whole percent for the bed ratio).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from ..appscan.classify import classify_banner
from ..vuln import VulnMatch, service_severity, severity_histogram
from .rounding import fmt_number, fmt_percent


def record_key(record: Mapping[str, Any]) -> str:
    return (
        f"{record.get('ip')}:{record.get('port')}:"
        f"{record.get('protocol_id')}:{record.get('site_group', 'default')}"
    )


@dataclass(frozen=True)
class StatsBundle:
    total_entities: int
    entities_with_services: int
    total_services: int
    mean_services_per_entity: float
    vulnerable_entities: int
    vulnerable_entity_ratio: float
    vulnerable_services: int
    vulnerable_service_ratio: float
    severity_histogram: dict[str, int]
    vulnerable_beds: int
    total_beds: int
    bed_ratio: float
    display: dict[str, str] = field(default_factory=dict)

    def to_doc(self) -> dict[str, Any]:
        return {
            "total_entities": self.total_entities,
            "entities_with_services": self.entities_with_services,
            "total_services": self.total_services,
            "mean_services_per_entity": self.mean_services_per_entity,
            "vulnerable_entities": self.vulnerable_entities,
            "vulnerable_entity_ratio": self.vulnerable_entity_ratio,
            "vulnerable_services": self.vulnerable_services,
            "vulnerable_service_ratio": self.vulnerable_service_ratio,
            "severity_histogram": dict(self.severity_histogram),
            "vulnerable_beds": self.vulnerable_beds,
            "total_beds": self.total_beds,
            "bed_ratio": self.bed_ratio,
            "display": dict(self.display),
        }


def compute_stats(
    entities: Sequence[Any],
    assignments: Iterable[Any],
    records: Sequence[Mapping[str, Any]],
    matches: Mapping[str, Sequence[VulnMatch]],
) -> StatsBundle:
    """entities carry .entity_id and .beds; assignments carry .record_key,
    .entity_id and an effective (accepted) status; matches map record keys
    to their CVE match lists."""
    services_per_entity: dict[str, set[str]] = {}
    for a in assignments:
        if getattr(a, "status", "accepted") in ("accepted", "auto_accepted"):
            services_per_entity.setdefault(a.entity_id, set()).add(a.record_key)

    per_service = {record_key(r): list(matches.get(record_key(r), ())) for r in records}
    hist = severity_histogram(list(per_service.values()))
    vulnerable_keys = {k for k, ms in per_service.items() if service_severity(ms)}

    vulnerable_entities = {
        eid
        for eid, keys in services_per_entity.items()
        if keys & vulnerable_keys
    }

    beds_by_entity = {e.entity_id: e.beds for e in entities}
    total_beds = sum(b for b in beds_by_entity.values() if b)
    vulnerable_beds = sum(
        beds_by_entity.get(eid) or 0 for eid in vulnerable_entities
    )

    total_entities = len(entities)
    with_services = len(services_per_entity)
    total_services = len(records)
    mean = total_services / total_entities if total_entities else 0.0
    entity_ratio = len(vulnerable_entities) / with_services if with_services else 0.0
    service_ratio = len(vulnerable_keys) / total_services if total_services else 0.0
    bed_ratio = vulnerable_beds / total_beds if total_beds else 0.0

    return StatsBundle(
        total_entities=total_entities,
        entities_with_services=with_services,
        total_services=total_services,
        mean_services_per_entity=mean,
        vulnerable_entities=len(vulnerable_entities),
        vulnerable_entity_ratio=entity_ratio,
        vulnerable_services=len(vulnerable_keys),
        vulnerable_service_ratio=service_ratio,
        severity_histogram=hist,
        vulnerable_beds=vulnerable_beds,
        total_beds=total_beds,
        bed_ratio=bed_ratio,
        display={
            "mean_services_per_entity": fmt_number(mean, 1),
            "vulnerable_entity_ratio": fmt_percent(entity_ratio, 1),
            "vulnerable_service_ratio": fmt_percent(service_ratio, 1),
            "bed_ratio": fmt_percent(bed_ratio, 0),
        },
    )


@dataclass(frozen=True)
class VersionHistogram:
    product: str
    total: int
    known: dict[str, int]
    unknown_count: int
    unknown_pct: float
    unknown_pct_display: str

    def to_doc(self) -> dict[str, Any]:
        return {
            "product": self.product,
            "total": self.total,
            "known": dict(self.known),
            "unknown_count": self.unknown_count,
            "unknown_pct": self.unknown_pct,
            "unknown_pct_display": self.unknown_pct_display,
        }


def version_distribution(
    product: str,
    records: Sequence[Mapping[str, Any]],
    parser=None,
) -> VersionHistogram:
    """Per-version counts for one product, unknown versions counted and
    reported with a two-decimal share (excluded from the chart itself)."""
    from ..vuln import parse_banner

    known: Counter[str] = Counter()
    unknown = 0
    total = 0
    for rec in records:
        pv = parse_banner(rec.get("banner", ""), parser)
        if pv is None or pv.product != product:
            continue
        total += 1
        if pv.version is None:
            unknown += 1
        else:
            known[pv.version] += 1
    pct = (unknown / total * 100.0) if total else 0.0
    return VersionHistogram(
        product=product,
        total=total,
        known=dict(sorted(known.items())),
        unknown_count=unknown,
        unknown_pct=pct,
        unknown_pct_display=f"{fmt_number(pct, 2)}%",
    )


def banner_group_distribution(
    records: Sequence[Mapping[str, Any]],
) -> list[tuple[str, int, float]]:
    """(group, count, percent) rows; percents sum to exactly 100."""
    counts: Counter[str] = Counter()
    for rec in records:
        counts[classify_banner(rec.get("banner", ""))] += 1
    total = sum(counts.values())
    return [
        (group, count, count / total * 100.0)
        for group, count in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    ]
