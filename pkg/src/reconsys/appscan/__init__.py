"""Application-layer scanning: protocol handlers and banner records."""

from .classify import GROUPS, classify_banner, classify_banner_group
from .handlers import Timeouts, grab
from .records import (
    STATUS_MALFORMED,
    STATUS_OK,
    STATUS_SILENT,
    CertInfo,
    ServiceRecord,
)
from .registry import HandlerRegistry, HandlerSpec

__all__ = [
    "CertInfo",
    "GROUPS",
    "HandlerRegistry",
    "HandlerSpec",
    "STATUS_MALFORMED",
    "STATUS_OK",
    "STATUS_SILENT",
    "ServiceRecord",
    "Timeouts",
    "classify_banner",
    "classify_banner_group",
    "grab",
]
