"""Post-scan analysis pipeline: merge, enrich, attribute, match, report.

Pure composition of the analysis modules; everything it produces lands
in the document store so the report CLI and the console API serve from
one place.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .attrib import (
    AssignmentLog,
    Entity,
    ScoringConfig,
    expand_entities,
    propose_assignments,
)
from .enrich import Indices, consistency_merge, enrich_all
from .report import (
    EntityCveCount,
    banner_group_distribution,
    cohort_average,
    compute_stats,
    geo_points,
    record_key,
    version_distribution,
)
from .store import DocumentKey, DocumentStore
from .vuln import CveIndex, VulnMatch, parse_banner, service_severity

DEFAULT_VERSION_PRODUCTS = ("apache_httpd", "iis", "nginx")
DEFAULT_COHORTS = (
    ("kritis_le_1800", True, 1800),
    ("all_le_1800", None, 1800),
    ("kritis_le_800", True, 800),
    ("all_le_800", None, 800),
)


@dataclass
class AnalysisResult:
    operation_id: str
    records: list[dict[str, Any]] = field(default_factory=list)
    enriched: list[dict[str, Any]] = field(default_factory=list)
    assignment_log: AssignmentLog | None = None
    matches: dict[str, list[VulnMatch]] = field(default_factory=dict)
    new_entities: list[Entity] = field(default_factory=list)
    stats_doc: dict[str, Any] | None = None


def run_analysis(
    master: Any,
    operation_id: str,
    store: DocumentStore,
    indices: Indices | None = None,
    entities: Sequence[Entity] = (),
    cve_index: CveIndex | None = None,
    scoring: ScoringConfig | None = None,
) -> AnalysisResult:
    indices = indices or Indices()
    op = master.operation(operation_id)
    merged = consistency_merge(
        master.submissions(operation_id), known_unit_ids=set(op.units)
    )
    enriched = enrich_all(merged.records, indices, operation_id)
    for doc in enriched:
        store.put(
            DocumentKey("enriched", operation_id, record_key(doc["service"])), doc
        )

    log = AssignmentLog(store=store, operation_id=operation_id)
    new_entities: list[Entity] = []
    all_entities = list(entities)
    if entities:
        log.add_all(propose_assignments(enriched, all_entities, scoring))
        by_key = {record_key(d["service"]): d for d in enriched}
        expansion = expand_entities(log.effective(), by_key, all_entities)
        new_entities = expansion.new_entities
        all_entities.extend(new_entities)
        for e in all_entities:
            store.put(DocumentKey("entities", operation_id, e.entity_id), e.to_doc())

    matches: dict[str, list[VulnMatch]] = {}
    if cve_index is not None:
        for rec in merged.records:
            pv = parse_banner(rec.get("banner", ""))
            found = cve_index.match(pv) if pv else []
            if found:
                key = record_key(rec)
                matches[key] = found
                store.put(
                    DocumentKey("matches", operation_id, key),
                    {"record_key": key, "matches": [m.to_doc() for m in found]},
                )

    result = AnalysisResult(
        operation_id=operation_id,
        records=merged.records,
        enriched=enriched,
        assignment_log=log,
        matches=matches,
        new_entities=new_entities,
    )
    result.stats_doc = write_reports(store, operation_id, result, all_entities)
    return result


def entity_cve_rows(
    entities: Sequence[Entity],
    assignments: Sequence[Any],
    matches: dict[str, list[VulnMatch]],
) -> list[EntityCveCount]:
    """CVE matches per entity, counted across its effectively assigned
    services; only entities with at least one assignment appear."""
    keys_by_entity: dict[str, set[str]] = {}
    for a in assignments:
        if getattr(a, "status", "accepted") in ("accepted", "auto_accepted"):
            keys_by_entity.setdefault(a.entity_id, set()).add(a.record_key)
    by_id = {e.entity_id: e for e in entities}
    rows = []
    for entity_id in sorted(keys_by_entity):
        entity = by_id.get(entity_id)
        if entity is None:
            continue
        count = sum(len(matches.get(k, ())) for k in keys_by_entity[entity_id])
        rows.append(EntityCveCount(entity=entity, cve_count=count))
    return rows


def write_reports(
    store: DocumentStore,
    operation_id: str,
    result: AnalysisResult,
    entities: Sequence[Entity],
) -> dict[str, Any]:
    assignments = result.assignment_log.effective() if result.assignment_log else []
    stats = compute_stats(entities, assignments, result.records, result.matches)
    store.put(DocumentKey("reports", operation_id, "stats"), stats.to_doc())

    groups = banner_group_distribution(result.records) if result.records else []
    store.put(
        DocumentKey("reports", operation_id, "banner_groups"),
        {"groups": [{"group": g, "count": c, "pct": p} for g, c, p in groups]},
    )

    versions = {
        product: version_distribution(product, result.records).to_doc()
        for product in DEFAULT_VERSION_PRODUCTS
    }
    store.put(DocumentKey("reports", operation_id, "versions"), {"products": versions})

    rows = entity_cve_rows(entities, assignments, result.matches)
    cohorts = {
        name: cohort_average(rows, kritis=kritis, max_beds=max_beds).to_doc()
        for name, kritis, max_beds in DEFAULT_COHORTS
    }
    store.put(DocumentKey("reports", operation_id, "cohorts"), {"cohorts": cohorts})

    vulnerable_keys = {
        k for k, ms in result.matches.items() if service_severity(ms) is not None
    }
    all_points = geo_points(result.enriched)
    vuln_points = geo_points(result.enriched, vulnerable_keys=vulnerable_keys)
    store.put(
        DocumentKey("reports", operation_id, "geo"),
        {
            "all": [[lat, lon, w] for lat, lon, w in all_points],
            "vulnerable": [[lat, lon, w] for lat, lon, w in vuln_points],
        },
    )
    return stats.to_doc()
