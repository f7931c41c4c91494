"""Entity attribution: scoring, curation queue, subdomains, expansion."""

from .assignments import (
    EFFECTIVE_STATUSES,
    STATUS_ACCEPTED,
    STATUS_AUTO,
    STATUS_PENDING,
    STATUS_REJECTED,
    AlreadyDecidedError,
    AssetAssignment,
    AssignmentLog,
    propose_assignments,
)
from .entities import (
    KRITIS_CASE_THRESHOLD,
    PROVENANCE_CERT,
    PROVENANCE_MANUAL,
    PROVENANCE_SEED,
    Entity,
    fold_text,
    kritis_from_cases,
    load_entities,
    slugify,
)
from .expansion import (
    AnalysisUnit,
    ExpansionResult,
    entity_grouping,
    expand_entities,
    registrable_domain,
)
from .scoring import (
    SIGNAL_CERT_EXACT,
    SIGNAL_CERT_SUB,
    SIGNAL_KEYWORD,
    SIGNAL_RDNS,
    SIGNAL_WHOIS,
    AttributionScore,
    Evidence,
    ScoringConfig,
    score_candidate,
)
from .subdomains import (
    DEFAULT_WORDLIST,
    CtSource,
    DiscoveryResult,
    discover_subdomains,
    valid_domain,
)

__all__ = [
    "AlreadyDecidedError",
    "AnalysisUnit",
    "AssetAssignment",
    "AssignmentLog",
    "AttributionScore",
    "CtSource",
    "DEFAULT_WORDLIST",
    "DiscoveryResult",
    "EFFECTIVE_STATUSES",
    "Entity",
    "Evidence",
    "ExpansionResult",
    "KRITIS_CASE_THRESHOLD",
    "PROVENANCE_CERT",
    "PROVENANCE_MANUAL",
    "PROVENANCE_SEED",
    "STATUS_ACCEPTED",
    "STATUS_AUTO",
    "STATUS_PENDING",
    "STATUS_REJECTED",
    "SIGNAL_CERT_EXACT",
    "SIGNAL_CERT_SUB",
    "SIGNAL_KEYWORD",
    "SIGNAL_RDNS",
    "SIGNAL_WHOIS",
    "ScoringConfig",
    "discover_subdomains",
    "entity_grouping",
    "expand_entities",
    "fold_text",
    "kritis_from_cases",
    "load_entities",
    "propose_assignments",
    "registrable_domain",
    "score_candidate",
    "slugify",
    "valid_domain",
]
