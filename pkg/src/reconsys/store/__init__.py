"""Document persistence for operations, records and analysis outputs."""

from .documents import COLLECTIONS, INDEXED_FIELDS, DocumentKey, DocumentStore

__all__ = ["COLLECTIONS", "DocumentKey", "DocumentStore", "INDEXED_FIELDS"]
