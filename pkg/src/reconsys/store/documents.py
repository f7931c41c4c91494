"""Append-oriented document persistence.

One NDJSON log file per (operation, collection) under the data root:
``<data>/<operation_id>/<collection>.ndjson``.  Each line is an envelope
``{"key": ..., "ts": ..., "doc": {...}}``; the newest timestamp per key
wins.  The in-memory index is rebuilt by replaying the logs at startup,
so a crash after an acknowledged put never loses the document.
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterator

COLLECTIONS = (
    "operations",
    "records",
    "enriched",
    "entities",
    "assignments",
    "matches",
    "reports",
)

INDEXED_FIELDS = ("ip", "entity_id", "severity", "status")


@dataclass(frozen=True)
class DocumentKey:
    collection: str
    operation_id: str
    document_id: str

    def __post_init__(self) -> None:
        if self.collection not in COLLECTIONS:
            raise ValueError(f"unknown collection {self.collection!r}")


class DocumentStore:
    """Log-structured store: one writer per collection, any number of readers."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.RLock()
        # (collection, operation_id) -> {document_id: (ts, doc)}
        self._tables: dict[tuple[str, str], dict[str, tuple[float, dict]]] = {}
        self._replay()

    # -- log replay -----------------------------------------------------

    def _replay(self) -> None:
        for op_dir in sorted(self.root.iterdir()) if self.root.exists() else []:
            if not op_dir.is_dir():
                continue
            for log in sorted(op_dir.glob("*.ndjson")):
                collection = log.stem
                if collection not in COLLECTIONS:
                    continue
                table = self._tables.setdefault((collection, op_dir.name), {})
                with log.open("r", encoding="utf-8") as fh:
                    for line in fh:
                        line = line.strip()
                        if not line:
                            continue
                        env = json.loads(line)
                        ts, doc_id = env["ts"], env["key"]
                        if doc_id not in table or table[doc_id][0] <= ts:
                            table[doc_id] = (ts, env["doc"])

    def _log_path(self, collection: str, operation_id: str) -> Path:
        d = self.root / operation_id
        d.mkdir(parents=True, exist_ok=True)
        return d / f"{collection}.ndjson"

    # -- primitives -----------------------------------------------------

    def put(self, key: DocumentKey, doc: dict[str, Any], ts: float | None = None) -> None:
        """Idempotent upsert; last writer (by timestamp) wins."""
        ts = time.time() if ts is None else ts
        with self._lock:
            table = self._tables.setdefault((key.collection, key.operation_id), {})
            stored = table.get(key.document_id)
            if stored is not None and stored[0] > ts:
                return  # stale write: newer document already acknowledged
            env = {"key": key.document_id, "ts": ts, "doc": doc}
            path = self._log_path(key.collection, key.operation_id)
            with path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(env, sort_keys=True) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            table[key.document_id] = (ts, doc)

    def get(self, key: DocumentKey) -> dict[str, Any] | None:
        with self._lock:
            table = self._tables.get((key.collection, key.operation_id), {})
            stored = table.get(key.document_id)
            return None if stored is None else stored[1]

    def query(
        self,
        collection: str,
        operation_id: str,
        filters: dict[str, Any] | None = None,
        offset: int = 0,
        limit: int | None = None,
    ) -> list[dict[str, Any]]:
        """Exact-match and range filters over stored documents.

        A filter value may be a literal (equality) or a dict with any of
        ``gte``/``lte``/``gt``/``lt`` bounds.  Results are ordered by
        document id for stable pagination.
        """
        filters = filters or {}
        with self._lock:
            table = self._tables.get((collection, operation_id), {})
            rows = sorted(table.items())
        out = []
        for _doc_id, (_ts, doc) in rows:
            if all(_matches(doc.get(f), cond) for f, cond in filters.items()):
                out.append(doc)
        if limit is None:
            return out[offset:]
        return out[offset : offset + limit]

    def operation_ids(self) -> list[str]:
        with self._lock:
            return sorted({op for _c, op in self._tables})

    # -- snapshot / restore ----------------------------------------------

    def snapshot(self, operation_id: str, path: str | Path) -> int:
        """Export every live document of one operation as NDJSON lines."""
        count = 0
        with self._lock, Path(path).open("w", encoding="utf-8") as fh:
            for (collection, op), table in sorted(self._tables.items()):
                if op != operation_id:
                    continue
                for doc_id, (ts, doc) in sorted(table.items()):
                    fh.write(
                        json.dumps(
                            {
                                "collection": collection,
                                "operation_id": op,
                                "key": doc_id,
                                "ts": ts,
                                "doc": doc,
                            },
                            sort_keys=True,
                        )
                        + "\n"
                    )
                    count += 1
        return count

    def restore(self, path: str | Path) -> int:
        count = 0
        with Path(path).open("r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                env = json.loads(line)
                key = DocumentKey(env["collection"], env["operation_id"], env["key"])
                self.put(key, env["doc"], ts=env["ts"])
                count += 1
        return count

    def iter_collection(
        self, collection: str, operation_id: str
    ) -> Iterator[dict[str, Any]]:
        yield from self.query(collection, operation_id)


def _matches(value: Any, cond: Any) -> bool:
    if isinstance(cond, dict):
        if value is None:
            return False
        if "gte" in cond and not value >= cond["gte"]:
            return False
        if "lte" in cond and not value <= cond["lte"]:
            return False
        if "gt" in cond and not value > cond["gt"]:
            return False
        if "lt" in cond and not value < cond["lt"]:
            return False
        return True
    return value == cond
