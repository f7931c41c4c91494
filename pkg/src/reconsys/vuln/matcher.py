"""Version-range CVE matching and CVSS severity buckets.

Every match is flagged potential, permanently: banner-derived version
identification cannot see backported patches or operator-edited
banners, so reports speak of potential known vulnerabilities.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .banners import ProductVersion, parse_version
from .nvd import CveEntry, VersionRange

SEVERITY_CRITICAL = "critical"
SEVERITY_HIGH = "high"
SEVERITY_MEDIUM = "medium"
SEVERITY_LOW = "low"

VULNERABLE_FLOOR = 4.0  # matches below this score are reported, not counted


def bucket(score: float) -> str:
    """critical [9.0,10.0], high [7.0,9.0), medium [4.0,7.0), low [0,4.0)."""
    if not 0.0 <= score <= 10.0:
        raise ValueError(f"CVSS score out of range: {score}")
    if score >= 9.0:
        return SEVERITY_CRITICAL
    if score >= 7.0:
        return SEVERITY_HIGH
    if score >= 4.0:
        return SEVERITY_MEDIUM
    return SEVERITY_LOW


_SEVERITY_ORDER = {
    SEVERITY_LOW: 0,
    SEVERITY_MEDIUM: 1,
    SEVERITY_HIGH: 2,
    SEVERITY_CRITICAL: 3,
}


@dataclass(frozen=True)
class VulnMatch:
    cve_id: str
    cvss_score: float
    severity: str
    potential: bool = True  # always: backports/banner edits are invisible
    product: str = ""
    version: str = ""

    def to_doc(self) -> dict:
        return {
            "cve_id": self.cve_id,
            "cvss_score": self.cvss_score,
            "severity": self.severity,
            "potential": self.potential,
            "product": self.product,
            "version": self.version,
        }


def _cmp(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Component-wise numeric compare with zero padding (2.2 == 2.2.0)."""
    width = max(len(a), len(b))
    pa = a + (0,) * (width - len(a))
    pb = b + (0,) * (width - len(b))
    return (pa > pb) - (pa < pb)


def version_in_range(version: tuple[int, ...], vr: VersionRange) -> bool:
    if vr.exact is not None:
        exact = parse_version(vr.exact)
        return exact is not None and _cmp(version, exact) == 0
    if vr.start_including is not None:
        lo = parse_version(vr.start_including)
        if lo is None or _cmp(version, lo) < 0:
            return False
    if vr.start_excluding is not None:
        lo = parse_version(vr.start_excluding)
        if lo is None or _cmp(version, lo) <= 0:
            return False
    if vr.end_including is not None:
        hi = parse_version(vr.end_including)
        if hi is None or _cmp(version, hi) > 0:
            return False
    if vr.end_excluding is not None:
        hi = parse_version(vr.end_excluding)
        if hi is None or _cmp(version, hi) >= 0:
            return False
    return True


class CveIndex:
    def __init__(self, entries: list[CveEntry]):
        self.entries = entries
        self._by_product: dict[str, list[tuple[CveEntry, VersionRange]]] = {}
        for entry in entries:
            for aff in entry.affected:
                self._by_product.setdefault(aff.product, []).append(
                    (entry, aff.ranges)
                )

    def match(self, pv: ProductVersion) -> list[VulnMatch]:
        """All CVEs whose ranges contain the version; unknown version -> []."""
        if pv.version is None:
            return []
        version = pv.components
        if version is None:
            return []
        seen: dict[str, VulnMatch] = {}
        for entry, vr in self._by_product.get(pv.product, []):
            if entry.cve_id in seen:
                continue
            if version_in_range(version, vr):
                seen[entry.cve_id] = VulnMatch(
                    cve_id=entry.cve_id,
                    cvss_score=entry.cvss_score,
                    severity=bucket(entry.cvss_score),
                    product=pv.product,
                    version=pv.version,
                )
        return sorted(seen.values(), key=lambda m: m.cve_id)


def match_cves(pv: ProductVersion, index: CveIndex) -> list[VulnMatch]:
    return index.match(pv)


def service_severity(matches: list[VulnMatch]) -> str | None:
    """Max severity over matches scoring at least the vulnerable floor;
    None when the service has no counting match."""
    eligible = [m for m in matches if m.cvss_score >= VULNERABLE_FLOOR]
    if not eligible:
        return None
    return max(eligible, key=lambda m: (_SEVERITY_ORDER[m.severity], m.cvss_score)).severity


def severity_histogram(per_service_matches: list[list[VulnMatch]]) -> dict[str, int]:
    """Service counts per severity bucket, plus low-only and none rows."""
    hist = {
        SEVERITY_CRITICAL: 0,
        SEVERITY_HIGH: 0,
        SEVERITY_MEDIUM: 0,
        SEVERITY_LOW: 0,
        "none": 0,
    }
    for matches in per_service_matches:
        sev = service_severity(matches)
        if sev is not None:
            hist[sev] += 1
        elif matches:
            hist[SEVERITY_LOW] += 1
        else:
            hist["none"] += 1
    return hist
