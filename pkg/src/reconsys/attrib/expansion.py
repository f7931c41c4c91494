"""Cross-entity expansion: certificates of accepted assets can vouch for
domains nobody in the entity set owns yet — usually a sibling facility of
the same operator.  Those spawn review-pending entities.

Rerunning on unchanged data is a no-op: ownership is re-derived from the
full entity set each time."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .assignments import AssetAssignment, EFFECTIVE_STATUSES
from .entities import PROVENANCE_CERT, Entity, slugify
from .scoring import _cert_names


def registrable_domain(hostname: str) -> str:
    """Owner domain of a hostname: the last two DNS labels.

    Multi-label public suffixes (co.uk style) are out of scope for the
    entity sets this targets; extend here if that changes."""
    labels = hostname.lower().strip(".").split(".")
    return ".".join(labels[-2:]) if len(labels) >= 2 else hostname.lower()


def _owned_domains(entities: Sequence[Entity]) -> set[str]:
    return {d for e in entities for d in e.domains}


@dataclass
class ExpansionResult:
    new_entities: list[Entity] = field(default_factory=list)
    linked_domains: list[str] = field(default_factory=list)  # already owned


def expand_entities(
    assignments: Sequence[AssetAssignment],
    records_by_key: Mapping[str, Mapping[str, Any]],
    entities: Sequence[Entity],
) -> ExpansionResult:
    """Inspect certificates of effectively assigned records; unknown
    owner domains become cert_expansion entities pending review."""
    owned = _owned_domains(entities)
    result = ExpansionResult()
    seen_new: set[str] = set()
    for assignment in sorted(assignments, key=lambda a: a.assignment_id):
        if assignment.status not in EFFECTIVE_STATUSES:
            continue
        record = records_by_key.get(assignment.record_key)
        if record is None:
            continue
        for name in _cert_names(record):
            domain = registrable_domain(name)
            if domain in owned:
                result.linked_domains.append(domain)
                continue
            if domain in seen_new:
                continue
            seen_new.add(domain)
            result.new_entities.append(
                Entity(
                    entity_id=slugify(domain),
                    name=domain,
                    domains=[domain],
                    provenance=PROVENANCE_CERT,
                    review_status="pending",
                )
            )
    result.linked_domains = sorted(set(result.linked_domains))
    return result


@dataclass(frozen=True)
class AnalysisUnit:
    """Statistics entity: one operator with all facilities it runs."""

    unit_id: str
    name: str
    entity_ids: tuple[str, ...]


def entity_grouping(
    entities: Sequence[Entity],
    assignments: Sequence[AssetAssignment] = (),
) -> list[AnalysisUnit]:
    """Entities sharing an operating company collapse into one unit."""
    groups: dict[str, list[Entity]] = {}
    for entity in entities:
        key = entity.operating_company.strip() or entity.entity_id
        groups.setdefault(key, []).append(entity)
    units = []
    for key in sorted(groups):
        members = sorted(groups[key], key=lambda e: e.entity_id)
        name = key if groups[key][0].operating_company else members[0].name
        units.append(
            AnalysisUnit(
                unit_id=slugify(key),
                name=name,
                entity_ids=tuple(e.entity_id for e in members),
            )
        )
    return units
