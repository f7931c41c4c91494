"""Evidence scoring: how strongly a record belongs to an entity.

Signals are evaluated independently and summed.  The weights and both
thresholds are configuration, deliberately: they are policy, not truth,
and operators will tune them.  Generic keywords can only ever push a
candidate into the review queue, never auto-accept it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

from .entities import Entity, fold_text

SIGNAL_CERT_EXACT = "cert_exact_domain"
SIGNAL_CERT_SUB = "cert_subdomain"
SIGNAL_RDNS = "rdns_suffix"
SIGNAL_WHOIS = "whois_name_match"
SIGNAL_KEYWORD = "generic_keyword"

# legal-form and filler tokens carrying no identity
DEFAULT_LEGAL_TOKENS = (
    "ggmbh", "gmbh", "ag", "kg", "mbh", "ev", "e", "v",
    "klinikum", "klinik", "kliniken", "krankenhaus", "hospital",
    "st", "der", "die", "das", "und", "am", "im",
)

DEFAULT_KEYWORDS = ("klinik", "hospital", "krankenhaus", "clinic", "medizin")


@dataclass(frozen=True)
class ScoringConfig:
    weight_cert_exact: int = 100
    weight_cert_sub: int = 80
    weight_rdns: int = 60
    weight_whois: int = 50
    weight_keyword: int = 10
    auto_threshold: int = 100
    review_threshold: int = 50
    legal_tokens: tuple[str, ...] = DEFAULT_LEGAL_TOKENS
    keywords: tuple[str, ...] = DEFAULT_KEYWORDS


@dataclass(frozen=True)
class Evidence:
    signal: str
    matched_value: str
    weight: int

    def to_doc(self) -> dict:
        return {
            "signal": self.signal,
            "matched_value": self.matched_value,
            "weight": self.weight,
        }


@dataclass(frozen=True)
class AttributionScore:
    total: int
    evidence: tuple[Evidence, ...] = ()

    @property
    def signals(self) -> set[str]:
        return {e.signal for e in self.evidence}

    @property
    def keyword_only(self) -> bool:
        return bool(self.evidence) and self.signals == {SIGNAL_KEYWORD}

    def to_doc(self) -> dict:
        return {"total": self.total, "evidence": [e.to_doc() for e in self.evidence]}


def name_tokens(name: str, config: ScoringConfig) -> list[str]:
    """Distinctive tokens of an entity name: legal forms and single
    characters carry no identity and are dropped."""
    return [
        t
        for t in _tokenize(name)
        if t not in config.legal_tokens and len(t) >= 2
    ]


def _tokenize(text: str) -> list[str]:
    out: list[str] = []
    word = []
    for ch in fold_text(text):
        if ch.isalnum():
            word.append(ch)
        elif word:
            out.append("".join(word))
            word = []
    if word:
        out.append("".join(word))
    return out


def _cert_names(record: Mapping[str, Any]) -> list[str]:
    svc = record.get("service") or record  # enriched doc or bare service record
    tls = svc.get("tls")
    if not tls:
        return []
    names = set(tls.get("subject_alt_names", []))
    if tls.get("subject_cn"):
        names.add(tls["subject_cn"])
    return sorted(n.lower().removeprefix("*.") for n in names)


def score_candidate(
    record: Mapping[str, Any],
    entity: Entity,
    config: ScoringConfig | None = None,
) -> AttributionScore:
    """Score one enriched record against one entity; pure and deterministic."""
    config = config or ScoringConfig()
    evidence: list[Evidence] = []
    cert_names = _cert_names(record)
    rdns = (record.get("rdns") or "").lower()
    registry = record.get("registry") or {}
    description = registry.get("description", "") or ""

    for domain in entity.domains:
        suffix = "." + domain
        for name in cert_names:
            if name == domain:
                evidence.append(Evidence(SIGNAL_CERT_EXACT, name, config.weight_cert_exact))
            elif name.endswith(suffix):
                evidence.append(Evidence(SIGNAL_CERT_SUB, name, config.weight_cert_sub))
        if rdns and (rdns == domain or rdns.endswith(suffix)):
            evidence.append(Evidence(SIGNAL_RDNS, rdns, config.weight_rdns))

    tokens = name_tokens(entity.name, config)
    if tokens and description:
        desc_tokens = set(_tokenize(description))
        if all(t in desc_tokens for t in tokens):
            evidence.append(
                Evidence(SIGNAL_WHOIS, " ".join(tokens), config.weight_whois)
            )

    haystack = " ".join([description.lower(), rdns, *cert_names])
    for keyword in config.keywords:
        if keyword in fold_text(haystack):
            evidence.append(Evidence(SIGNAL_KEYWORD, keyword, config.weight_keyword))
            break  # one keyword hit is as informative as five

    ordered = tuple(sorted(evidence, key=lambda e: (-e.weight, e.signal, e.matched_value)))
    return AttributionScore(total=sum(e.weight for e in ordered), evidence=ordered)
