"""Route evaluation metrics and the algorithm comparison table.

Distances are equirectangular nautical miles (1 NM = 1/60 degree of
latitude, east-west spans scaled by cos latitude). Hazards are distinct
blocked cells within one cell of the route's traced cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from chartroute.errors import EmptyPath, MixedGrids
from chartroute.grid import GridIndex, GridSpec, OccupancyGrid
from chartroute.search import PlanResult
from chartroute.smoothing import supercover

_ROW_ORDER = (
    "grid accuracy (degrees)",
    "sailing distance (NM)",
    "route nodes",
    "nodes traversed",
    "potential hazards",
    "turn times",
)


@dataclass(frozen=True)
class RouteMetrics:
    distance_nm: float
    route_nodes: int
    expanded_nodes: int
    potential_hazards: int
    turn_count: int
    spec: GridSpec


def route_distance_nm(path: list[GridIndex], spec: GridSpec) -> float:
    """Equirectangular length of the cell-center polyline in nautical miles.

    Segment deltas come from index differences times the cell size, so a
    one-cell meridian step is exactly 60 * cell_size.
    """
    if not path:
        raise EmptyPath("cannot measure an empty path")
    cs = spec.cell_size
    olat = spec.origin.lat
    total = 0.0
    for a, b in zip(path, path[1:]):
        dlat = (b.row - a.row) * cs
        dlon = (b.col - a.col) * cs
        mean_lat = olat + 0.5 * (a.row + b.row + 1) * cs
        total += 60.0 * math.hypot(dlat, dlon * math.cos(math.radians(mean_lat)))
    return total


def _trace(path: list[GridIndex]) -> set[GridIndex]:
    cells = {path[0]}
    for a, b in zip(path, path[1:]):
        cells.update(supercover(a, b))
    return cells


def potential_hazards(path: list[GridIndex], grid: OccupancyGrid) -> int:
    """Distinct blocked cells within Chebyshev distance 1 of the route trace."""
    blocked = grid.blocked
    rows, cols = blocked.shape
    found: set[GridIndex] = set()
    for cell in _trace(path):
        for nr in range(max(cell.row - 1, 0), min(cell.row + 1, rows - 1) + 1):
            for nc in range(max(cell.col - 1, 0), min(cell.col + 1, cols - 1) + 1):
                if blocked[nr, nc]:
                    found.add(GridIndex(nc, nr))
    return len(found)


def turn_count(path: list[GridIndex]) -> int:
    """Interior nodes where the step direction's sign pattern changes."""
    if not path:
        raise EmptyPath("cannot count turns of an empty path")
    turns = 0
    prev_dir = None
    for a, b in zip(path, path[1:]):
        direction = (
            (b.col > a.col) - (b.col < a.col),
            (b.row > a.row) - (b.row < a.row),
        )
        if prev_dir is not None and direction != prev_dir:
            turns += 1
        prev_dir = direction
    return turns


def metrics_for_path(
    path: list[GridIndex], expanded_nodes: int, grid: OccupancyGrid
) -> RouteMetrics:
    """Metrics of an arbitrary route over ``grid`` (raw or smoothed)."""
    return RouteMetrics(
        distance_nm=route_distance_nm(path, grid.spec),
        route_nodes=len(path),
        expanded_nodes=expanded_nodes,
        potential_hazards=potential_hazards(path, grid),
        turn_count=turn_count(path),
        spec=grid.spec,
    )


def evaluate(result: PlanResult, grid: OccupancyGrid, spec: GridSpec) -> RouteMetrics:
    if grid.spec != spec:
        raise MixedGrids(f"grid spec {grid.spec} does not match {spec}")
    return metrics_for_path(result.path, result.expanded, grid)


def metrics_to_jsonable(m: RouteMetrics) -> dict:
    return {
        "grid_accuracy_deg": m.spec.cell_size,
        "distance_nm": m.distance_nm,
        "route_nodes": m.route_nodes,
        "expanded_nodes": m.expanded_nodes,
        "potential_hazards": m.potential_hazards,
        "turn_count": m.turn_count,
    }


def compare(entries: list[tuple[str, RouteMetrics]]) -> dict:
    """Aligned comparison of several routes over one grid.

    Rows appear in fixed order: grid accuracy, sailing distance, route
    nodes, nodes traversed, potential hazards, turn times.
    """
    if not entries:
        raise ValueError("compare needs at least one (label, metrics) entry")
    first_spec = entries[0][1].spec
    for label, m in entries:
        if m.spec != first_spec:
            raise MixedGrids(f"metrics for {label!r} come from a different grid")

    accuracy = f"{first_spec.cell_size:g}*{first_spec.cell_size:g}"
    values_by_row = {
        "grid accuracy (degrees)": [accuracy for _ in entries],
        "sailing distance (NM)": [m.distance_nm for _, m in entries],
        "route nodes": [m.route_nodes for _, m in entries],
        "nodes traversed": [m.expanded_nodes for _, m in entries],
        "potential hazards": [m.potential_hazards for _, m in entries],
        "turn times": [m.turn_count for _, m in entries],
    }
    return {
        "columns": [label for label, _ in entries],
        "rows": [{"metric": name, "values": values_by_row[name]} for name in _ROW_ORDER],
    }


def format_comparison_text(table: dict) -> str:
    """Plain-text rendering of a comparison table with aligned columns."""

    def fmt(value) -> str:
        if isinstance(value, float):
            return f"{value:.6g}"
        return str(value)

    columns = table["columns"]
    header = [""] + list(columns)
    body = [[row["metric"]] + [fmt(v) for v in row["values"]] for row in table["rows"]]
    widths = [max(len(line[i]) for line in [header] + body) for i in range(len(header))]
    lines = []
    for line in [header] + body:
        cells = [line[0].ljust(widths[0])] + [
            line[i].rjust(widths[i]) for i in range(1, len(line))
        ]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)
