"""Operation catalog: the shipped list of (protocol_id, port) sweeps."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any


def load_catalog(path: str | Path | None = None) -> list[dict[str, Any]]:
    """Load a catalog file; defaults to the packaged one (89 entries)."""
    if path is None:
        text = resources.files("reconsys.data").joinpath("catalog.json").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    entries = json.loads(text)
    if not isinstance(entries, list):
        raise ValueError("catalog must be a JSON list of {protocol_id, port}")
    for e in entries:
        if "protocol_id" not in e or "port" not in e:
            raise ValueError(f"malformed catalog entry: {e!r}")
    return entries
