"""Observed-service records and TLS certificate summaries."""

from __future__ import annotations

import base64
import hashlib
from dataclasses import dataclass, field
from typing import Any

BANNER_CAP = 16 * 1024
RAW_EXCERPT_CAP = 1024

STATUS_OK = "ok"
STATUS_SILENT = "silent"
STATUS_MALFORMED = "malformed"


@dataclass(frozen=True)
class CertInfo:
    subject_cn: str | None
    subject_alt_names: tuple[str, ...]
    issuer: str
    not_before: str
    not_after: str
    fingerprint_sha256: str

    @classmethod
    def from_der(cls, der: bytes) -> "CertInfo":
        from cryptography import x509
        from cryptography.x509.oid import ExtensionOID, NameOID

        cert = x509.load_der_x509_certificate(der)
        cn = None
        cns = cert.subject.get_attributes_for_oid(NameOID.COMMON_NAME)
        if cns:
            cn = str(cns[0].value)
        sans: list[str] = []
        try:
            ext = cert.extensions.get_extension_for_oid(
                ExtensionOID.SUBJECT_ALTERNATIVE_NAME
            )
            sans = [str(n) for n in ext.value.get_values_for_type(x509.DNSName)]
        except x509.ExtensionNotFound:
            pass
        deduped = tuple(sorted({s.lower() for s in sans}))
        return cls(
            subject_cn=cn,
            subject_alt_names=deduped,
            issuer=cert.issuer.rfc4514_string(),
            not_before=cert.not_valid_before_utc.isoformat(),
            not_after=cert.not_valid_after_utc.isoformat(),
            fingerprint_sha256=hashlib.sha256(der).hexdigest(),
        )

    def names(self) -> tuple[str, ...]:
        """All DNS names this certificate vouches for, lowercased."""
        out = set(self.subject_alt_names)
        if self.subject_cn:
            out.add(self.subject_cn.lower())
        return tuple(sorted(out))

    def to_doc(self) -> dict[str, Any]:
        return {
            "subject_cn": self.subject_cn,
            "subject_alt_names": list(self.subject_alt_names),
            "issuer": self.issuer,
            "not_before": self.not_before,
            "not_after": self.not_after,
            "fingerprint_sha256": self.fingerprint_sha256,
        }

    @classmethod
    def from_doc(cls, doc: dict[str, Any]) -> "CertInfo":
        return cls(
            subject_cn=doc.get("subject_cn"),
            subject_alt_names=tuple(doc.get("subject_alt_names", [])),
            issuer=doc.get("issuer", ""),
            not_before=doc.get("not_before", ""),
            not_after=doc.get("not_after", ""),
            fingerprint_sha256=doc.get("fingerprint_sha256", ""),
        )


@dataclass
class ServiceRecord:
    ip: str
    port: int
    protocol_id: str
    transport: str = "tcp"
    banner: str = ""
    raw_excerpt: bytes = b""
    tls: CertInfo | None = None
    status: str = STATUS_OK
    collected_at: float = 0.0
    node_id: str = ""
    site_group: str = "default"
    rtt_ms: float | None = None

    def __post_init__(self) -> None:
        if len(self.banner) > BANNER_CAP:
            self.banner = self.banner[:BANNER_CAP]
        if len(self.raw_excerpt) > RAW_EXCERPT_CAP:
            self.raw_excerpt = self.raw_excerpt[:RAW_EXCERPT_CAP]

    @property
    def dedup_key(self) -> tuple[str, int, str, str]:
        return (self.ip, self.port, self.protocol_id, self.site_group)

    def to_doc(self) -> dict[str, Any]:
        return {
            "ip": self.ip,
            "port": self.port,
            "protocol_id": self.protocol_id,
            "transport": self.transport,
            "banner": self.banner,
            "raw_excerpt_b64": base64.b64encode(self.raw_excerpt).decode("ascii"),
            "tls": self.tls.to_doc() if self.tls else None,
            "status": self.status,
            "collected_at": self.collected_at,
            "node_id": self.node_id,
            "site_group": self.site_group,
            "rtt_ms": self.rtt_ms,
        }

    @classmethod
    def from_doc(cls, doc: dict[str, Any]) -> "ServiceRecord":
        tls = doc.get("tls")
        return cls(
            ip=doc["ip"],
            port=int(doc["port"]),
            protocol_id=doc["protocol_id"],
            transport=doc.get("transport", "tcp"),
            banner=doc.get("banner", ""),
            raw_excerpt=base64.b64decode(doc.get("raw_excerpt_b64", "")),
            tls=CertInfo.from_doc(tls) if tls else None,
            status=doc.get("status", STATUS_OK),
            collected_at=float(doc.get("collected_at", 0.0)),
            node_id=doc.get("node_id", ""),
            site_group=doc.get("site_group", "default"),
            rtt_ms=doc.get("rtt_ms"),
        )
