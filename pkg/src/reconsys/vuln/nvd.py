"""NVD feed ingestion, reduced to what matching needs.

Reads the JSON feed layout (CVE_Items -> configurations -> cpe_match)
and keeps only: CVE id, preferred CVSS base score (v3 over v2), and the
per-product version ranges.  Exact-version cpe entries become degenerate
[v, v] ranges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator


@dataclass(frozen=True)
class VersionRange:
    """Inclusive/exclusive bounds over dotted versions; None = unbounded."""

    start_including: str | None = None
    start_excluding: str | None = None
    end_including: str | None = None
    end_excluding: str | None = None
    exact: str | None = None


@dataclass(frozen=True)
class Affected:
    product: str
    vendor: str | None
    ranges: VersionRange


@dataclass
class CveEntry:
    cve_id: str
    cvss_score: float
    cvss_version: str
    affected: list[Affected] = field(default_factory=list)
    summary: str = ""


def _iter_cpe_matches(node: dict[str, Any]) -> Iterator[dict[str, Any]]:
    for cm in node.get("cpe_match", []):
        yield cm
    for child in node.get("children", []):
        yield from _iter_cpe_matches(child)


def _parse_cpe23(uri: str) -> tuple[str | None, str | None, str | None]:
    """cpe:2.3:part:vendor:product:version:... -> (vendor, product, version)."""
    parts = uri.split(":")
    if len(parts) < 6:
        return None, None, None
    vendor = parts[3] if parts[3] not in ("*", "-") else None
    product = parts[4] if parts[4] not in ("*", "-") else None
    version = parts[5] if parts[5] not in ("*", "-") else None
    return vendor, product, version


def parse_feed_item(item: dict[str, Any]) -> CveEntry | None:
    cve_id = item.get("cve", {}).get("CVE_data_meta", {}).get("ID")
    if not cve_id:
        return None
    impact = item.get("impact", {})
    if "baseMetricV3" in impact:
        score = float(impact["baseMetricV3"]["cvssV3"]["baseScore"])
        version_tag = "3." + str(
            impact["baseMetricV3"]["cvssV3"].get("version", "3.1")
        ).split(".")[-1]
    elif "baseMetricV2" in impact:
        score = float(impact["baseMetricV2"]["cvssV2"]["baseScore"])
        version_tag = "2.0"
    else:
        return None
    summary = ""
    for desc in item.get("cve", {}).get("description", {}).get("description_data", []):
        if desc.get("lang") == "en":
            summary = desc.get("value", "")
            break
    affected: list[Affected] = []
    for node in item.get("configurations", {}).get("nodes", []):
        for cm in _iter_cpe_matches(node):
            if not cm.get("vulnerable", False):
                continue
            vendor, product, version = _parse_cpe23(cm.get("cpe23Uri", ""))
            if product is None:
                continue
            ranges = VersionRange(
                start_including=cm.get("versionStartIncluding"),
                start_excluding=cm.get("versionStartExcluding"),
                end_including=cm.get("versionEndIncluding"),
                end_excluding=cm.get("versionEndExcluding"),
                exact=version,
            )
            affected.append(Affected(product=product, vendor=vendor, ranges=ranges))
    if not affected:
        return None
    return CveEntry(
        cve_id=cve_id,
        cvss_score=score,
        cvss_version=version_tag,
        affected=affected,
        summary=summary,
    )


def load_nvd_feed(path: str | Path) -> list[CveEntry]:
    doc = json.loads(Path(path).read_text("utf-8"))
    entries = []
    for item in doc.get("CVE_Items", []):
        entry = parse_feed_item(item)
        if entry is not None:
            entries.append(entry)
    return entries
