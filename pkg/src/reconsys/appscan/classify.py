"""Banner grouping by major service application.

Ordered first-match rules, so every banner lands in exactly one group
and group counts always partition a record set.
"""

from __future__ import annotations

GROUP_EMPTY = "empty"
GROUP_OTHER = "other"

# (group label, lowercase substring the banner must contain)
_RULES: list[tuple[str, tuple[str, ...]]] = [
    ("apache", ("apache",)),
    ("iis", ("microsoft-iis", "iis")),
    ("nginx", ("nginx",)),
    ("ssh-family", ("ssh", "dropbear")),
    ("ftp-family", ("ftp",)),
]

GROUPS = (GROUP_EMPTY,) + tuple(label for label, _ in _RULES) + (GROUP_OTHER,)


def classify_banner(banner: str) -> str:
    if banner == "":
        return GROUP_EMPTY
    low = banner.lower()
    for label, needles in _RULES:
        if any(n in low for n in needles):
            return label
    return GROUP_OTHER


def classify_banner_group(record) -> str:
    """Group a ServiceRecord (or anything with a banner attribute)."""
    return classify_banner(record.banner)
