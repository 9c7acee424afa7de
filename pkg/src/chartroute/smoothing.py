"""Route smoothing by grid line of sight (string pulling).

A planned grid route zigzags cell to cell; smoothing keeps only the
waypoints needed to preserve visibility: from each kept node, the
farthest later node with a clear line of sight becomes the next
waypoint. Visibility is conservative: every cell the connecting
segment touches is checked, including cells met exactly at a corner.
"""

from __future__ import annotations

from dataclasses import dataclass

from chartroute.errors import EmptyPath, OutOfBounds
from chartroute.grid import GridIndex, OccupancyGrid, SafetyWeightField


@dataclass(frozen=True)
class SmoothingOptions:
    """strict_safety additionally treats weighted cells (w > 1) as opaque."""

    strict_safety: bool = False


def supercover(a: GridIndex, b: GridIndex) -> list[GridIndex]:
    """Every cell touched by the segment between the centers of a and b.

    When the segment passes exactly through a cell corner, all four
    cells meeting at that corner are included.
    """
    x, y = a.col, a.row
    points = [GridIndex(x, y)]
    dx = b.col - a.col
    dy = b.row - a.row
    xstep = 1 if dx >= 0 else -1
    ystep = 1 if dy >= 0 else -1
    dx = abs(dx)
    dy = abs(dy)
    ddx = 2 * dx
    ddy = 2 * dy

    if ddx >= ddy:
        errorprev = error = dx
        for _ in range(dx):
            x += xstep
            error += ddy
            if error > ddx:
                y += ystep
                error -= ddx
                if error + errorprev < ddx:
                    points.append(GridIndex(x, y - ystep))
                elif error + errorprev > ddx:
                    points.append(GridIndex(x - xstep, y))
                else:
                    points.append(GridIndex(x, y - ystep))
                    points.append(GridIndex(x - xstep, y))
            points.append(GridIndex(x, y))
            errorprev = error
    else:
        errorprev = error = dy
        for _ in range(dy):
            y += ystep
            error += ddx
            if error > ddy:
                x += xstep
                error -= ddy
                if error + errorprev < ddy:
                    points.append(GridIndex(x - xstep, y))
                elif error + errorprev > ddy:
                    points.append(GridIndex(x, y - ystep))
                else:
                    points.append(GridIndex(x - xstep, y))
                    points.append(GridIndex(x, y - ystep))
            points.append(GridIndex(x, y))
            errorprev = error
    return points


def line_of_sight(
    grid: OccupancyGrid,
    weights: SafetyWeightField,
    a: GridIndex,
    b: GridIndex,
    opts: SmoothingOptions = SmoothingOptions(),
) -> bool:
    """True iff the center-to-center segment touches no blocked cell.

    Under strict_safety, touching any cell with w > 1 also breaks the
    line of sight, so smoothing cannot drag a route back toward hazards.
    """
    if not grid.in_bounds(a) or not grid.in_bounds(b):
        raise OutOfBounds(f"line of sight endpoints {a}, {b} must be in bounds")
    if a == b:
        return True
    blocked = grid.blocked
    w = weights.w
    strict = opts.strict_safety
    for cell in supercover(a, b):
        if blocked[cell.row, cell.col]:
            return False
        if strict and w[cell.row, cell.col] > 1.0:
            return False
    return True


def smooth(
    path: list[GridIndex],
    grid: OccupancyGrid,
    weights: SafetyWeightField,
    opts: SmoothingOptions = SmoothingOptions(),
) -> list[GridIndex]:
    """Greedy farthest-visible waypoint reduction.

    Keeps the original endpoints; every output node appears in the input
    path in order. A raw step is kept as-is when no later node is
    visible (possible under strict_safety when the input route itself
    crosses weighted cells).
    """
    if not path:
        raise EmptyPath("cannot smooth an empty path")
    out = [path[0]]
    i = 0
    last = len(path) - 1
    while i < last:
        j = last
        while j > i + 1 and not line_of_sight(grid, weights, path[i], path[j], opts):
            j -= 1
        out.append(path[j])
        i = j
    return out
