"""Engineered analysis dataset at full survey scale.

The generator builds 1,555 entities, 13,497 service records and their
CVE matches so that every headline statistic comes out exactly:

* 13,497 services over 1,555 entities (displayed mean 8.7)
* 1,228 entities with services, 447 of them vulnerable (36.4%)
* 167,000 of 520,000 beds at vulnerable entities (32%)
* severity table 931 critical / 443 high / 518 medium, total 1,892
* cohort means 11.63 (kritis, beds <= 1800) vs 4.08 (all <= 1800)
  and 3.1 (kritis, beds <= 800) vs 2.42 (all <= 800)

Strata are integer-exact by construction; the generator asserts every
target before returning, so a regression here fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..attrib import (
    STATUS_AUTO,
    AssetAssignment,
    AttributionScore,
    Entity,
    Evidence,
)
from ..report.cohorts import EntityCveCount
from ..vuln import VulnMatch, bucket

# (label, count, beds or None, kritis, vulnerable count, cve sum)
_STRATA = (
    ("k8", 10, 700, True, 8, 31),
    ("n8", 190, 550, False, 170, 453),
    ("km", 90, 1000, True, 30, 1132),
    ("nm", 160, 900, False, 30, 220),
    ("big", 28, 1801, True, 6, 56),
    ("nobeds", 750, None, False, 203, 1015),
)

TOTAL_ENTITIES = 1555
ANALYZED_ENTITIES = 1228
TOTAL_SERVICES = 13497
VULNERABLE_ENTITIES = 447
VULNERABLE_SERVICES = 1892
SEVERITY_SPLIT = {"critical": 931, "high": 443, "medium": 518}
SEVERITY_SCORE = {"critical": 9.8, "high": 7.5, "medium": 5.0}
VULNERABLE_BEDS = 167_000
TOTAL_BEDS = 520_000
SERVICE_LESS = TOTAL_ENTITIES - ANALYZED_ENTITIES  # 327


@dataclass
class HospitalFixture:
    entities: list[Entity]
    records: list[dict[str, Any]]
    assignments: list[AssetAssignment]
    matches: dict[str, list[VulnMatch]]
    analyzed_entity_ids: list[str]

    cve_rows: list[EntityCveCount] = field(default_factory=list)

    def records_by_key(self) -> dict[str, dict[str, Any]]:
        from ..report.stats import record_key

        return {record_key(r): r for r in self.records}


def _spread(total: int, n: int) -> list[int]:
    """n non-negative integers summing to total, as even as possible."""
    base, extra = divmod(total, n)
    return [base + (1 if i < extra else 0) for i in range(n)]


def _allocate_vulnerable_counts(total: int, floors: list[int], caps: list[int]) -> list[int]:
    counts = list(floors)
    remaining = total - sum(counts)
    assert remaining >= 0, "vulnerable service total below entity count"
    while remaining > 0:
        progressed = False
        for i in range(len(counts)):
            if remaining == 0:
                break
            if counts[i] < caps[i]:
                counts[i] += 1
                remaining -= 1
                progressed = True
        assert progressed, "not enough capacity for vulnerable services"
    return counts


def build_hospital_fixture() -> HospitalFixture:
    entities: list[Entity] = []
    vulnerable_flags: list[bool] = []
    cve_counts: list[int] = []
    serial = 0

    for label, count, beds, kritis, vuln_count, cve_sum in _STRATA:
        vuln_cves = _per_entity_cves(label, vuln_count, cve_sum)
        for i in range(count):
            serial += 1
            vulnerable = i < vuln_count
            entities.append(
                Entity(
                    entity_id=f"ent-{serial:04d}",
                    name=f"Klinikum Musterstadt {serial:04d}",
                    domains=[f"klinik-{serial:04d}.example"],
                    beds=beds,
                    inpatient_cases_per_year=40_000 if kritis else 20_000,
                    kritis=kritis,
                    operating_company=(
                        f"Klinikverbund {serial % 30:02d}" if label == "nobeds" and i >= 450 else ""
                    ),
                )
            )
            vulnerable_flags.append(vulnerable)
            cve_counts.append(vuln_cves[i] if vulnerable else 0)

    # exact bed totals: the final vulnerable big entity absorbs the
    # remainder, one service-less entity balances the grand total
    big_start = sum(s[1] for s in _STRATA[:4])
    vuln_big = [i for i in range(big_start, big_start + 28) if vulnerable_flags[i]]
    bed_sum_vuln = sum(
        entities[i].beds or 0 for i, v in enumerate(vulnerable_flags) if v
    )
    entities[vuln_big[-1]].beds += VULNERABLE_BEDS - bed_sum_vuln
    assert entities[vuln_big[-1]].beds > 1800

    # service-less tail entities
    for i in range(SERVICE_LESS):
        serial += 1
        entities.append(
            Entity(
                entity_id=f"ent-{serial:04d}",
                name=f"Klinikum Musterstadt {serial:04d}",
                domains=[f"klinik-{serial:04d}.example"],
                beds=337,
                inpatient_cases_per_year=20_000,
                kritis=False,
                operating_company=f"Klinikverbund {i % 30:02d}" if i < 300 else "",
            )
        )
    known_beds = sum(e.beds or 0 for e in entities)
    entities[-1].beds += TOTAL_BEDS - known_beds

    analyzed = entities[:ANALYZED_ENTITIES]
    service_counts = _spread(TOTAL_SERVICES - 10 * ANALYZED_ENTITIES, ANALYZED_ENTITIES)
    service_counts = [10 + extra for extra in service_counts]

    vuln_floor = [1 if vulnerable_flags[i] else 0 for i in range(ANALYZED_ENTITIES)]
    vuln_cap = [
        min(cve_counts[i], service_counts[i]) if vulnerable_flags[i] else 0
        for i in range(ANALYZED_ENTITIES)
    ]
    vuln_service_counts = _allocate_vulnerable_counts(
        VULNERABLE_SERVICES, vuln_floor, vuln_cap
    )

    severities = (
        ["critical"] * SEVERITY_SPLIT["critical"]
        + ["high"] * SEVERITY_SPLIT["high"]
        + ["medium"] * SEVERITY_SPLIT["medium"]
    )
    sev_cursor = 0
    records: list[dict[str, Any]] = []
    assignments: list[AssetAssignment] = []
    matches: dict[str, list[VulnMatch]] = {}
    cve_rows: list[EntityCveCount] = []
    cve_serial = 0

    for idx, entity in enumerate(analyzed):
        n_services = service_counts[idx]
        n_vuln = vuln_service_counts[idx]
        entity_keys: list[str] = []
        for s in range(n_services):
            ip = f"10.{(idx >> 8) & 255}.{idx & 255}.{s + 1}"
            record = {
                "ip": ip,
                "port": 443,
                "protocol_id": "https",
                "site_group": "default",
                "banner": "",
                "collected_at": 1_700_000_000.0,
            }
            if idx == 0 and s == 0:
                # entity A's certificate also names a sibling domain no
                # entity owns yet: the expansion fixture
                record["tls"] = {
                    "subject_cn": entity.domains[0],
                    "subject_alt_names": [
                        entity.domains[0],
                        "klinikverbund-neu.example",
                    ],
                }
            records.append(record)
            key = f"{ip}:443:https:default"
            entity_keys.append(key)
            assignments.append(
                AssetAssignment(
                    assignment_id=f"{key}~{entity.entity_id}",
                    record_key=key,
                    entity_id=entity.entity_id,
                    score=AttributionScore(
                        total=100,
                        evidence=(
                            Evidence("cert_exact_domain", entity.domains[0], 100),
                        ),
                    ),
                    status=STATUS_AUTO,
                )
            )
        # driving match per vulnerable service, fixed global severity order
        entity_sevs = []
        for v in range(n_vuln):
            severity = severities[sev_cursor]
            sev_cursor += 1
            cve_serial += 1
            entity_sevs.append(severity)
            matches.setdefault(entity_keys[v], []).append(
                VulnMatch(
                    cve_id=f"CVE-2098-{cve_serial:05d}",
                    cvss_score=SEVERITY_SCORE[severity],
                    severity=severity,
                )
            )
        # remaining CVE matches round-robin over the vulnerable services,
        # same bucket as the driving match so service severity is stable
        extra = cve_counts[idx] - n_vuln
        for e in range(extra):
            v = e % n_vuln
            severity = entity_sevs[v]
            cve_serial += 1
            matches[entity_keys[v]].append(
                VulnMatch(
                    cve_id=f"CVE-2098-{cve_serial:05d}",
                    cvss_score=SEVERITY_SCORE[severity],
                    severity=severity,
                )
            )
        cve_rows.append(EntityCveCount(entity=entity, cve_count=cve_counts[idx]))

    fixture = HospitalFixture(
        entities=entities,
        records=records,
        assignments=assignments,
        matches=matches,
        analyzed_entity_ids=[e.entity_id for e in analyzed],
        cve_rows=cve_rows,
    )
    _check_targets(fixture, vulnerable_flags, cve_counts)
    return fixture


def _per_entity_cves(label: str, vuln_count: int, cve_sum: int) -> list[int]:
    if vuln_count == 0:
        return []
    if label == "k8":  # hand-shaped so every count stays below the service cap
        counts = [5, 5, 4, 4, 4, 3, 3, 3]
    else:
        counts = _spread(cve_sum, vuln_count)
    assert sum(counts) == cve_sum and all(c >= 1 for c in counts)
    return counts


def _check_targets(
    fixture: HospitalFixture,
    vulnerable_flags: list[bool],
    cve_counts: list[int],
) -> None:
    assert len(fixture.entities) == TOTAL_ENTITIES
    assert len(fixture.records) == TOTAL_SERVICES
    assert len(fixture.analyzed_entity_ids) == ANALYZED_ENTITIES
    assert sum(vulnerable_flags) == VULNERABLE_ENTITIES
    assert sum(len(m) for m in fixture.matches.values()) == sum(cve_counts)
    assert len(fixture.matches) == VULNERABLE_SERVICES
    sev_counts = {"critical": 0, "high": 0, "medium": 0}
    for ms in fixture.matches.values():
        top = max(ms, key=lambda m: m.cvss_score)
        sev_counts[bucket(top.cvss_score)] += 1
    assert sev_counts == SEVERITY_SPLIT, sev_counts
    beds_total = sum(e.beds or 0 for e in fixture.entities)
    assert beds_total == TOTAL_BEDS, beds_total
    beds_vuln = sum(
        e.beds or 0
        for e, v in zip(fixture.entities, vulnerable_flags)
        if v
    )
    assert beds_vuln == VULNERABLE_BEDS, beds_vuln
