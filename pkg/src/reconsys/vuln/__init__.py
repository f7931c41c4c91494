"""Banner-driven CVE matching and CVSS severity classification."""

from .banners import (
    BannerParser,
    ProductVersion,
    load_product_table,
    parse_banner,
    parse_version,
)
from .matcher import (
    SEVERITY_CRITICAL,
    SEVERITY_HIGH,
    SEVERITY_LOW,
    SEVERITY_MEDIUM,
    VULNERABLE_FLOOR,
    CveIndex,
    VulnMatch,
    bucket,
    match_cves,
    service_severity,
    severity_histogram,
    version_in_range,
)
from .nvd import Affected, CveEntry, VersionRange, load_nvd_feed, parse_feed_item

__all__ = [
    "Affected",
    "BannerParser",
    "CveEntry",
    "CveIndex",
    "ProductVersion",
    "SEVERITY_CRITICAL",
    "SEVERITY_HIGH",
    "SEVERITY_LOW",
    "SEVERITY_MEDIUM",
    "VULNERABLE_FLOOR",
    "VersionRange",
    "VulnMatch",
    "bucket",
    "load_nvd_feed",
    "load_product_table",
    "match_cves",
    "parse_banner",
    "parse_feed_item",
    "parse_version",
    "service_severity",
    "severity_histogram",
    "version_in_range",
]
