"""Geo exports for heatmapping: CSV and GeoJSON point collections.

Rendering is someone else's job (the console or external tooling);
exports are plain, stably ordered files.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence


def geo_points(
    enriched_docs: Sequence[Mapping[str, Any]],
    vulnerable_keys: set[str] | None = None,
) -> list[tuple[float, float, int]]:
    """(lat, lon, weight) rows; when vulnerable_keys is given only those
    services count.  Weight is the number of services at the coordinate."""
    from .stats import record_key

    weights: dict[tuple[float, float], int] = {}
    for doc in enriched_docs:
        geo = doc.get("geo")
        if not geo:
            continue
        if vulnerable_keys is not None:
            if record_key(doc.get("service", {})) not in vulnerable_keys:
                continue
        key = (float(geo["lat"]), float(geo["lon"]))
        weights[key] = weights.get(key, 0) + 1
    return [(lat, lon, w) for (lat, lon), w in sorted(weights.items())]


def write_geo_csv(points: Iterable[tuple[float, float, int]], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["lat", "lon", "weight"])
        for lat, lon, weight in points:
            writer.writerow([lat, lon, weight])


def geo_feature_collection(
    points: Iterable[tuple[float, float, int]],
) -> dict[str, Any]:
    return {
        "type": "FeatureCollection",
        "features": [
            {
                "type": "Feature",
                "geometry": {"type": "Point", "coordinates": [lon, lat]},
                "properties": {"weight": weight},
            }
            for lat, lon, weight in points
        ],
    }


def write_geojson(points: Iterable[tuple[float, float, int]], path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(geo_feature_collection(points), sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )
