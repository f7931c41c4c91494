"""Scan-master service: registry, assignment, failure detection, HTTP API."""

from .catalog import load_catalog
from .client import MasterClient
from .master import (
    DeadNodeError,
    MasterConfig,
    NodeRecord,
    Operation,
    OperationStatus,
    ScanMaster,
    UnauthorizedRangeError,
    UnknownNodeError,
    UnknownOperationError,
    UnknownUnitError,
)

__all__ = [
    "DeadNodeError",
    "MasterClient",
    "MasterConfig",
    "NodeRecord",
    "Operation",
    "OperationStatus",
    "ScanMaster",
    "UnauthorizedRangeError",
    "UnknownNodeError",
    "UnknownOperationError",
    "UnknownUnitError",
    "load_catalog",
]
