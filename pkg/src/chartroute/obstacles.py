"""Obstacle-polygon documents: the canonical planner input.

A document is a rectangular geographic extent plus a list of closed
polygon rings marking non-navigable areas. The JSON form is
``{"extent": {"min": [lon, lat], "max": [lon, lat]}, "polygons":
[[[lon, lat], ...], ...]}`` with coordinates in decimal degrees.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from chartroute.errors import InvariantViolation, SchemaError


@dataclass(frozen=True)
class GeoPoint:
    lon: float
    lat: float

    def __post_init__(self):
        if not -180.0 <= self.lon <= 180.0:
            raise InvariantViolation(f"longitude {self.lon} outside [-180, 180]")
        if not -90.0 <= self.lat <= 90.0:
            raise InvariantViolation(f"latitude {self.lat} outside [-90, 90]")


@dataclass(frozen=True)
class GeoPolygon:
    """A closed obstacle ring; the last vertex implicitly connects to the first."""

    ring: tuple[GeoPoint, ...]

    def __post_init__(self):
        if len(self.ring) < 3:
            raise InvariantViolation(f"ring needs at least 3 vertices, got {len(self.ring)}")


@dataclass(frozen=True)
class ObstacleDocument:
    extent: tuple[GeoPoint, GeoPoint]
    polygons: tuple[GeoPolygon, ...]

    def __post_init__(self):
        lo, hi = self.extent
        if not (lo.lon < hi.lon and lo.lat < hi.lat):
            raise InvariantViolation(
                f"extent min {lo} must be strictly below max {hi} componentwise"
            )
        for poly in self.polygons:
            for p in poly.ring:
                if not (lo.lon <= p.lon <= hi.lon and lo.lat <= p.lat <= hi.lat):
                    raise InvariantViolation(f"vertex {p} outside extent {lo}..{hi}")


def _point(value, what: str) -> GeoPoint:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise SchemaError(f"{what} must be a [lon, lat] number pair, got {value!r}")
    return GeoPoint(float(value[0]), float(value[1]))


def document_from_jsonable(obj) -> ObstacleDocument:
    if not isinstance(obj, dict):
        raise SchemaError(f"obstacle document must be a JSON object, got {type(obj).__name__}")
    try:
        extent_obj = obj["extent"]
        polygons_obj = obj["polygons"]
    except KeyError as missing:
        raise SchemaError(f"obstacle document missing key {missing}") from None
    if not isinstance(extent_obj, dict) or "min" not in extent_obj or "max" not in extent_obj:
        raise SchemaError("extent must be an object with 'min' and 'max'")
    extent = (_point(extent_obj["min"], "extent.min"), _point(extent_obj["max"], "extent.max"))
    if not isinstance(polygons_obj, list):
        raise SchemaError("polygons must be a list of rings")
    polygons = []
    for i, ring_obj in enumerate(polygons_obj):
        if not isinstance(ring_obj, list):
            raise SchemaError(f"polygon {i} must be a list of [lon, lat] pairs")
        ring = tuple(_point(v, f"polygon {i} vertex {j}") for j, v in enumerate(ring_obj))
        if len(ring) < 3:
            raise InvariantViolation(f"polygon {i} has {len(ring)} vertices, need at least 3")
        polygons.append(GeoPolygon(ring=ring))
    return ObstacleDocument(extent=extent, polygons=tuple(polygons))


def load_obstacle_document(text: str) -> ObstacleDocument:
    """Parse and validate an obstacle document from JSON text."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"not valid JSON: {err}") from err
    return document_from_jsonable(obj)


def document_to_jsonable(doc: ObstacleDocument) -> dict:
    lo, hi = doc.extent
    return {
        "extent": {"min": [lo.lon, lo.lat], "max": [hi.lon, hi.lat]},
        "polygons": [[[p.lon, p.lat] for p in poly.ring] for poly in doc.polygons],
    }
