"""Occupancy grid and per-cell sailing safety weights.

An obstacle document is rasterized into square cells; a cell is blocked
iff its closed rectangle touches any obstacle polygon (conservative:
thin land spits cannot be threaded through a cell corner). Each
navigable cell then gets a safety weight from the count of blocked
cells among its 8 Moore neighbors, with out-of-bounds neighbors counted
as blocked (the chart margin is unknown water).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from chartroute.errors import GridTooLarge, InvariantViolation, OutOfBounds, SchemaError
from chartroute.obstacles import GeoPoint, ObstacleDocument

DEFAULT_MAX_CELLS = 16_777_216

# Moore neighborhood in fixed emission order: N, NE, E, SE, S, SW, W, NW.
# North is +row (row 0 sits at the extent's minimum latitude).
MOORE_OFFSETS = ((0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1))


class GridIndex(NamedTuple):
    col: int
    row: int


@dataclass(frozen=True)
class GridSpec:
    """Geometry of a grid: min-corner origin, square cell size, dimensions."""

    origin: GeoPoint
    cell_size: float
    cols: int
    rows: int

    def __post_init__(self):
        if self.cell_size <= 0:
            raise InvariantViolation(f"cell_size must be positive, got {self.cell_size}")
        if self.cols < 1 or self.rows < 1:
            raise InvariantViolation(f"grid must be at least 1x1, got {self.cols}x{self.rows}")

    def in_bounds(self, idx: GridIndex) -> bool:
        return 0 <= idx.col < self.cols and 0 <= idx.row < self.rows


@dataclass(frozen=True, eq=False)
class OccupancyGrid:
    spec: GridSpec
    blocked: np.ndarray  # bool, shape (rows, cols), read-only

    def __post_init__(self):
        if self.blocked.shape != (self.spec.rows, self.spec.cols):
            raise InvariantViolation(
                f"blocked array shape {self.blocked.shape} does not match spec "
                f"{self.spec.rows}x{self.spec.cols}"
            )
        self.blocked.setflags(write=False)

    def in_bounds(self, idx: GridIndex) -> bool:
        return self.spec.in_bounds(idx)

    def blocked_at(self, idx: GridIndex) -> bool:
        return bool(self.blocked[idx.row, idx.col])

    def navigable(self, idx: GridIndex) -> bool:
        return self.in_bounds(idx) and not self.blocked_at(idx)


@dataclass(frozen=True, eq=False)
class SafetyWeightField:
    """Per-cell sailing safety weight; blocked cells carry an +inf sentinel."""

    spec: GridSpec
    w: np.ndarray  # float64, shape (rows, cols), read-only

    def __post_init__(self):
        self.w.setflags(write=False)

    def at(self, idx: GridIndex) -> float:
        return float(self.w[idx.row, idx.col])


def safety_weight(n: int) -> float:
    """Weight of a navigable cell with ``n`` blocked Moore neighbors.

    Hazard-free cells cost plain distance (w = 1); near potential risk
    the weight grows as 1 + 2^(n-2), doubling with each additional
    blocked neighbor.
    """
    if not 0 <= n <= 8:
        raise ValueError(f"blocked-neighbor count must be in 0..8, got {n}")
    if n == 0:
        return 1.0
    return 1.0 + 0.5 * 2.0 ** (n - 1)


def blocked_neighbor_count(grid: OccupancyGrid, idx: GridIndex) -> int:
    """Count blocked cells among the 8 Moore neighbors; out-of-bounds counts as blocked."""
    if not grid.in_bounds(idx):
        raise OutOfBounds(f"{idx} outside {grid.spec.cols}x{grid.spec.rows} grid")
    n = 0
    for dc, dr in MOORE_OFFSETS:
        nb = GridIndex(idx.col + dc, idx.row + dr)
        if not grid.in_bounds(nb) or grid.blocked_at(nb):
            n += 1
    return n


def compute_weight_field(grid: OccupancyGrid) -> SafetyWeightField:
    """Safety weight for every cell; blocked cells get the +inf sentinel."""
    padded = np.pad(grid.blocked, 1, constant_values=True)
    counts = np.zeros(grid.blocked.shape, dtype=np.int64)
    rows, cols = grid.blocked.shape
    for dc, dr in MOORE_OFFSETS:
        counts += padded[1 + dr : 1 + dr + rows, 1 + dc : 1 + dc + cols]
    w = np.where(counts == 0, 1.0, 1.0 + 0.5 * np.exp2(counts - 1))
    w[grid.blocked] = np.inf
    return SafetyWeightField(spec=grid.spec, w=w)


def cell_center(spec: GridSpec, idx: GridIndex) -> GeoPoint:
    if not spec.in_bounds(idx):
        raise OutOfBounds(f"{idx} outside {spec.cols}x{spec.rows} grid")
    return GeoPoint(
        lon=spec.origin.lon + (idx.col + 0.5) * spec.cell_size,
        lat=spec.origin.lat + (idx.row + 0.5) * spec.cell_size,
    )


def _axis_index(value: float, origin: float, cell_size: float, count: int) -> int:
    f = (value - origin) / cell_size
    i = math.floor(f)
    # Points on (or within float noise of) the max boundary map to the last cell.
    if i == count and f <= count * (1.0 + 1e-12) + 1e-12:
        return count - 1
    if 0 <= i < count:
        return i
    raise OutOfBounds(f"coordinate {value} outside grid coverage")


def index_of(spec: GridSpec, p: GeoPoint) -> GridIndex:
    col = _axis_index(p.lon, spec.origin.lon, spec.cell_size, spec.cols)
    row = _axis_index(p.lat, spec.origin.lat, spec.cell_size, spec.rows)
    return GridIndex(col, row)


def _cell_count(extent_span: float, cell_size: float) -> int:
    ratio = extent_span / cell_size
    return max(1, math.ceil(ratio - 1e-9))


def _axis_cells(value: float, origin: float, cell_size: float) -> list[int]:
    """Cells whose closed 1-D interval contains ``value`` (2 on a shared edge)."""
    f = (value - origin) / cell_size
    i = math.floor(f)
    cells = [i]
    if f == i:
        cells.append(i - 1)
    return cells


def _mark_vertices(blocked, ring_xy, origin, cell_size):
    rows, cols = blocked.shape
    for x, y in ring_xy:
        for c in _axis_cells(x, origin.lon, cell_size):
            if not 0 <= c < cols:
                continue
            for r in _axis_cells(y, origin.lat, cell_size):
                if 0 <= r < rows:
                    blocked[r, c] = True


def _mark_edge(blocked, p, q, origin, cell_size):
    """Mark every cell whose closed rectangle the closed segment p-q touches."""
    rows, cols = blocked.shape
    (x0, y0), (x1, y1) = (p, q) if p[0] <= q[0] else (q, p)

    fx0 = (x0 - origin.lon) / cell_size
    cmin = math.floor(fx0)
    if fx0 == cmin:
        cmin -= 1
    cmax = math.floor((x1 - origin.lon) / cell_size)

    for c in range(max(cmin, 0), min(cmax, cols - 1) + 1):
        slab_lo = origin.lon + c * cell_size
        slab_hi = slab_lo + cell_size
        xa = max(x0, slab_lo)
        xb = min(x1, slab_hi)
        if xa > xb:
            continue
        if x1 == x0:
            ya, yb = min(y0, y1), max(y0, y1)
        else:
            t_a = (xa - x0) / (x1 - x0)
            t_b = (xb - x0) / (x1 - x0)
            va = y0 + t_a * (y1 - y0)
            vb = y0 + t_b * (y1 - y0)
            ya, yb = min(va, vb), max(va, vb)
        fy = (ya - origin.lat) / cell_size
        rmin = math.floor(fy)
        if fy == rmin:
            rmin -= 1
        rmax = math.floor((yb - origin.lat) / cell_size)
        if rmin < rows and rmax >= 0:
            blocked[max(rmin, 0) : min(rmax, rows - 1) + 1, c] = True


def _mark_interior_centers(blocked, ring_xy, origin, cell_size):
    """Block cells whose center lies strictly inside the polygon (crossing number)."""
    rows, cols = blocked.shape
    xs = np.array([v[0] for v in ring_xy])
    ys = np.array([v[1] for v in ring_xy])
    cmin = max(0, math.floor((xs.min() - origin.lon) / cell_size))
    cmax = min(cols - 1, math.floor((xs.max() - origin.lon) / cell_size))
    rmin = max(0, math.floor((ys.min() - origin.lat) / cell_size))
    rmax = min(rows - 1, math.floor((ys.max() - origin.lat) / cell_size))
    if cmin > cmax or rmin > rmax:
        return
    cx = origin.lon + (np.arange(cmin, cmax + 1) + 0.5) * cell_size
    cy = origin.lat + (np.arange(rmin, rmax + 1) + 0.5) * cell_size
    px, py = np.meshgrid(cx, cy)

    inside = np.zeros(px.shape, dtype=bool)
    n = len(ring_xy)
    for i in range(n):
        x_i, y_i = ring_xy[i]
        x_j, y_j = ring_xy[(i + 1) % n]
        straddles = (y_i > py) != (y_j > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            x_cross = (x_j - x_i) * (py - y_i) / (y_j - y_i) + x_i
        inside ^= straddles & (px < x_cross)
    blocked[rmin : rmax + 1, cmin : cmax + 1] |= inside


def rasterize(
    doc: ObstacleDocument, cell_size: float, max_cells: int = DEFAULT_MAX_CELLS
) -> OccupancyGrid:
    """Rasterize obstacle polygons onto a grid covering the document extent.

    A cell is blocked iff its rectangle intersects any polygon: center
    inside the polygon, a polygon vertex inside the rectangle, or an
    edge touching the rectangle (all closed-boundary semantics).
    """
    if cell_size <= 0:
        raise InvariantViolation(f"cell_size must be positive, got {cell_size}")
    lo, hi = doc.extent
    cols = _cell_count(hi.lon - lo.lon, cell_size)
    rows = _cell_count(hi.lat - lo.lat, cell_size)
    if cols * rows > max_cells:
        raise GridTooLarge(
            f"{cols}x{rows} = {cols * rows} cells exceeds the limit of {max_cells}"
        )
    spec = GridSpec(origin=lo, cell_size=cell_size, cols=cols, rows=rows)
    blocked = np.zeros((rows, cols), dtype=bool)

    for poly in doc.polygons:
        ring_xy = [(p.lon, p.lat) for p in poly.ring]
        _mark_interior_centers(blocked, ring_xy, lo, cell_size)
        _mark_vertices(blocked, ring_xy, lo, cell_size)
        for i in range(len(ring_xy)):
            _mark_edge(blocked, ring_xy[i], ring_xy[(i + 1) % len(ring_xy)], lo, cell_size)

    return OccupancyGrid(spec=spec, blocked=blocked)


def grid_to_jsonable(grid: OccupancyGrid) -> dict:
    """Grid cache form: spec plus row-major run-length-encoded blocked flags."""
    flat = grid.blocked.reshape(-1)
    runs = []
    if flat.size:
        current = bool(flat[0])
        count = 0
        for v in flat:
            if bool(v) == current:
                count += 1
            else:
                runs.append([int(current), count])
                current = bool(v)
                count = 1
        runs.append([int(current), count])
    return {
        "spec": {
            "origin": [grid.spec.origin.lon, grid.spec.origin.lat],
            "cell_size": grid.spec.cell_size,
            "cols": grid.spec.cols,
            "rows": grid.spec.rows,
        },
        "blocked": runs,
    }


def grid_from_jsonable(obj) -> OccupancyGrid:
    if not isinstance(obj, dict) or "spec" not in obj or "blocked" not in obj:
        raise SchemaError("grid cache must be an object with 'spec' and 'blocked'")
    spec_obj = obj["spec"]
    try:
        origin = spec_obj["origin"]
        spec = GridSpec(
            origin=GeoPoint(float(origin[0]), float(origin[1])),
            cell_size=float(spec_obj["cell_size"]),
            cols=int(spec_obj["cols"]),
            rows=int(spec_obj["rows"]),
        )
    except (KeyError, TypeError, IndexError, ValueError) as err:
        raise SchemaError(f"malformed grid spec: {err}") from err

    flat = np.zeros(spec.cols * spec.rows, dtype=bool)
    at = 0
    for pair in obj["blocked"]:
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(f"run-length pair must be [value, count], got {pair!r}")
        value, count = pair
        if value not in (0, 1) or not isinstance(count, int) or count < 1:
            raise SchemaError(f"bad run-length pair {pair!r}")
        if at + count > flat.size:
            raise SchemaError("run-length data longer than cols*rows")
        if value:
            flat[at : at + count] = True
        at += count
    if at != flat.size:
        raise SchemaError(f"run-length data covers {at} of {flat.size} cells")
    return OccupancyGrid(spec=spec, blocked=flat.reshape(spec.rows, spec.cols))
