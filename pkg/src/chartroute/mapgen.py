"""Deterministic pseudo-random archipelago maps.

Desk-scale stand-in for real chart cells: convex polygon islands
scattered over a rectangular extent. The same seed always produces the
same document, so generated maps can serve as frozen test fixtures.
"""

from __future__ import annotations

import math
import random

from chartroute.errors import ImpossibleMap
from chartroute.obstacles import GeoPoint, GeoPolygon, ObstacleDocument

DEFAULT_ORIGIN = GeoPoint(109.35, 18.10)
DEFAULT_CELL_SIZE = 0.005


def _convex_hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Monotone-chain convex hull, counterclockwise without the closing point."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def generate_archipelago(
    seed: int,
    cols: int,
    rows: int,
    islands: int,
    cell_size: float = DEFAULT_CELL_SIZE,
    origin: GeoPoint = DEFAULT_ORIGIN,
    min_radius_cells: float = 2.0,
    max_radius_cells: float = 6.0,
) -> ObstacleDocument:
    """Scatter convex polygon islands over a cols x rows cell extent.

    Island radii are in cell units; centers keep a one-cell margin plus
    the island radius from the extent boundary, so every vertex stays
    strictly inside the extent.
    """
    if islands < 0:
        raise ImpossibleMap(f"island count must be non-negative, got {islands}")
    if cols < 1 or rows < 1 or cell_size <= 0:
        raise ImpossibleMap(f"bad extent parameters cols={cols} rows={rows} cell={cell_size}")
    if not 0 < min_radius_cells <= max_radius_cells:
        raise ImpossibleMap(
            f"bad radius range {min_radius_cells}..{max_radius_cells} cells"
        )

    width = cols * cell_size
    height = rows * cell_size
    extent = (origin, GeoPoint(origin.lon + width, origin.lat + height))
    max_radius = max_radius_cells * cell_size
    margin = max_radius + cell_size
    if islands > 0 and (2 * margin >= width or 2 * margin >= height):
        raise ImpossibleMap(
            f"islands of radius {max_radius_cells} cells cannot fit a {cols}x{rows} extent"
        )
    if islands * math.pi * max_radius**2 > 0.5 * width * height:
        raise ImpossibleMap(f"{islands} islands would cover most of the extent")

    rng = random.Random(seed)
    polygons = []
    for _ in range(islands):
        cx = rng.uniform(origin.lon + margin, origin.lon + width - margin)
        cy = rng.uniform(origin.lat + margin, origin.lat + height - margin)
        radius = rng.uniform(min_radius_cells, max_radius_cells) * cell_size
        vertex_count = rng.randint(5, 9)
        angles = sorted(rng.uniform(0.0, 2.0 * math.pi) for _ in range(vertex_count))
        raw = [
            (
                cx + rng.uniform(0.6, 1.0) * radius * math.cos(t),
                cy + rng.uniform(0.6, 1.0) * radius * math.sin(t),
            )
            for t in angles
        ]
        hull = _convex_hull(raw)
        while len(hull) < 3:
            extra = rng.uniform(0.0, 2.0 * math.pi)
            raw.append(
                (cx + radius * math.cos(extra), cy + radius * math.sin(extra))
            )
            hull = _convex_hull(raw)
        polygons.append(GeoPolygon(ring=tuple(GeoPoint(x, y) for x, y in hull)))

    return ObstacleDocument(extent=extent, polygons=tuple(polygons))
