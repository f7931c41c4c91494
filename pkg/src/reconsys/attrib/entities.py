"""Target entities (hospitals/operators) and their seed-list loader.

Seed file: CSV ``name,domains(;-separated),beds,cases,operating_company``.
The critical-infrastructure flag derives from the case count: strictly
more than 30,000 in-patient cases per year qualifies.
"""

from __future__ import annotations

import csv
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

KRITIS_CASE_THRESHOLD = 30_000

PROVENANCE_SEED = "seed_list"
PROVENANCE_CERT = "cert_expansion"
PROVENANCE_MANUAL = "manual"

_GERMAN_FOLD = str.maketrans(
    {"ä": "ae", "ö": "oe", "ü": "ue", "Ä": "Ae", "Ö": "Oe", "Ü": "Ue", "ß": "ss"}
)


def fold_text(text: str) -> str:
    """Lowercase with German umlaut expansion and diacritic stripping."""
    text = text.translate(_GERMAN_FOLD)
    text = unicodedata.normalize("NFKD", text)
    text = "".join(c for c in text if not unicodedata.combining(c))
    return text.lower()


def slugify(text: str) -> str:
    folded = fold_text(text)
    slug = re.sub(r"[^a-z0-9]+", "-", folded).strip("-")
    return slug or "entity"


def kritis_from_cases(cases: int | None) -> bool:
    return cases is not None and cases > KRITIS_CASE_THRESHOLD


@dataclass
class Entity:
    entity_id: str
    name: str
    domains: list[str] = field(default_factory=list)
    beds: int | None = None
    inpatient_cases_per_year: int | None = None
    kritis: bool = False
    provenance: str = PROVENANCE_SEED
    operating_company: str = ""
    review_status: str = "confirmed"  # cert_expansion entities start pending

    def __post_init__(self) -> None:
        self.domains = sorted({d.strip().lower() for d in self.domains if d.strip()})

    @property
    def domainless(self) -> bool:
        return not self.domains

    def to_doc(self) -> dict:
        return {
            "entity_id": self.entity_id,
            "name": self.name,
            "domains": list(self.domains),
            "beds": self.beds,
            "inpatient_cases_per_year": self.inpatient_cases_per_year,
            "kritis": self.kritis,
            "provenance": self.provenance,
            "operating_company": self.operating_company,
            "review_status": self.review_status,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "Entity":
        return cls(
            entity_id=doc["entity_id"],
            name=doc["name"],
            domains=list(doc.get("domains", [])),
            beds=doc.get("beds"),
            inpatient_cases_per_year=doc.get("inpatient_cases_per_year"),
            kritis=bool(doc.get("kritis", False)),
            provenance=doc.get("provenance", PROVENANCE_SEED),
            operating_company=doc.get("operating_company", ""),
            review_status=doc.get("review_status", "confirmed"),
        )


def load_entities(path: str | Path) -> tuple[list[Entity], list[str]]:
    """Parse the seed CSV; returns (entities, warnings).

    Duplicate names merge (domains unioned); rows without domains are
    kept but flagged, since only expansion can ever attach assets."""
    warnings: list[str] = []
    by_name: dict[str, Entity] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].startswith("#"):
                continue
            name = row[0].strip()
            if not name:
                raise ValueError(f"line {lineno}: entity name must not be empty")
            domains = [d for d in (row[1] if len(row) > 1 else "").split(";") if d.strip()]
            beds = int(row[2]) if len(row) > 2 and row[2].strip() else None
            cases = int(row[3]) if len(row) > 3 and row[3].strip() else None
            company = row[4].strip() if len(row) > 4 else ""
            if name in by_name:
                existing = by_name[name]
                existing.domains = sorted(set(existing.domains) | {d.strip().lower() for d in domains})
                warnings.append(f"line {lineno}: duplicate entity {name!r} merged")
                continue
            entity = Entity(
                entity_id=slugify(name),
                name=name,
                domains=domains,
                beds=beds,
                inpatient_cases_per_year=cases,
                kritis=kritis_from_cases(cases),
                operating_company=company,
            )
            if entity.domainless:
                warnings.append(f"line {lineno}: entity {name!r} has no domains")
            by_name[name] = entity
    return list(by_name.values()), warnings
