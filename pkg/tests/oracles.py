"""Independent reference implementations used only to check the package.

Everything here is written from first principles (brute force, textbook
algorithms, exact rational arithmetic) so test expectations never lean
on the code under test.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction

import numpy as np

SQRT2 = math.sqrt(2.0)

_MOORE = ((0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1))


def naive_blocked_neighbor_count(blocked: np.ndarray, col: int, row: int) -> int:
    rows, cols = blocked.shape
    n = 0
    for dc in (-1, 0, 1):
        for dr in (-1, 0, 1):
            if dc == 0 and dr == 0:
                continue
            c, r = col + dc, row + dr
            if not (0 <= c < cols and 0 <= r < rows) or blocked[r, c]:
                n += 1
    return n


def naive_weight(n: int) -> float:
    return 1.0 if n == 0 else 1.0 + 0.5 * 2.0 ** (n - 1)


def naive_weight_field(blocked: np.ndarray) -> np.ndarray:
    rows, cols = blocked.shape
    w = np.empty((rows, cols), dtype=float)
    for r in range(rows):
        for c in range(cols):
            if blocked[r, c]:
                w[r, c] = math.inf
            else:
                w[r, c] = naive_weight(naive_blocked_neighbor_count(blocked, c, r))
    return w


def grid_neighbors(blocked: np.ndarray, c: int, r: int) -> list[tuple[int, int]]:
    """Navigable Moore neighbors, no corner cutting past a blocked cell."""
    rows, cols = blocked.shape
    out = []
    for dc, dr in _MOORE:
        nc, nr = c + dc, r + dr
        if not (0 <= nc < cols and 0 <= nr < rows) or blocked[nr, nc]:
            continue
        if dc != 0 and dr != 0 and (blocked[r, nc] or blocked[nr, c]):
            continue
        out.append((nc, nr))
    return out


def dijkstra_cost(
    blocked: np.ndarray,
    w: np.ndarray,
    start: tuple[int, int],
    goal: tuple[int, int],
    weighted: bool,
) -> float | None:
    """Textbook Dijkstra; cost of a step is distance times w of the entered cell.

    Totals accumulate as (orthogonal, diagonal) weight sums, evaluated as
    ortho + diag * sqrt(2), so equal true costs give identical floats.
    """
    start, goal = tuple(start), tuple(goal)
    pair = {start: (0.0, 0.0)}
    best = {start: 0.0}
    heap = [(0.0, 0, start)]
    seq = 1
    done: set[tuple[int, int]] = set()
    while heap:
        _, _, cur = heapq.heappop(heap)
        if cur in done:
            continue
        done.add(cur)
        if cur == goal:
            return best[cur]
        po, pd = pair[cur]
        for nb in grid_neighbors(blocked, *cur):
            wv = w[nb[1], nb[0]] if weighted else 1.0
            if nb[0] != cur[0] and nb[1] != cur[1]:
                cand = (po, pd + wv)
            else:
                cand = (po + wv, pd)
            value = cand[0] + cand[1] * SQRT2
            if nb not in best or value < best[nb]:
                best[nb] = value
                pair[nb] = cand
                heapq.heappush(heap, (value, seq, nb))
                seq += 1
    return None


def reverse_dijkstra_costs(
    blocked: np.ndarray, w: np.ndarray, goal: tuple[int, int], weighted: bool
) -> dict[tuple[int, int], float]:
    """Minimum cost from every cell TO the goal.

    Walking the forward path backwards from the goal, each reverse step
    pays distance times w of the cell being left, which is the forward
    step's entered cell.
    """
    goal = tuple(goal)
    pair = {goal: (0.0, 0.0)}
    best = {goal: 0.0}
    heap = [(0.0, 0, goal)]
    seq = 1
    done: set[tuple[int, int]] = set()
    while heap:
        _, _, cur = heapq.heappop(heap)
        if cur in done:
            continue
        done.add(cur)
        po, pd = pair[cur]
        wv = w[cur[1], cur[0]] if weighted else 1.0
        for nb in grid_neighbors(blocked, *cur):
            if nb[0] != cur[0] and nb[1] != cur[1]:
                cand = (po, pd + wv)
            else:
                cand = (po + wv, pd)
            value = cand[0] + cand[1] * SQRT2
            if nb not in best or value < best[nb]:
                best[nb] = value
                pair[nb] = cand
                heapq.heappush(heap, (value, seq, nb))
                seq += 1
    return best


def reachable(blocked: np.ndarray, start: tuple[int, int], goal: tuple[int, int]) -> bool:
    return dijkstra_cost(blocked, np.ones(blocked.shape), start, goal, False) is not None


def haversine_nm(lon1: float, lat1: float, lon2: float, lat2: float) -> float:
    """Great-circle distance on a sphere where 1 degree of latitude = 60 NM."""
    radius_nm = 60.0 * 180.0 / math.pi
    p1, p2 = math.radians(lat1), math.radians(lat2)
    dp = p2 - p1
    dl = math.radians(lon2 - lon1)
    a = math.sin(dp / 2) ** 2 + math.cos(p1) * math.cos(p2) * math.sin(dl / 2) ** 2
    return 2.0 * radius_nm * math.asin(math.sqrt(a))


def _on_segment(px, py, ax, ay, bx, by) -> bool:
    cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    if cross != 0:
        return False
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def point_in_polygon_closed(x: float, y: float, ring) -> bool:
    """Crossing-number containment; points on the boundary count as inside."""
    n = len(ring)
    for i in range(n):
        ax, ay = ring[i]
        bx, by = ring[(i + 1) % n]
        if _on_segment(x, y, ax, ay, bx, by):
            return True
    inside = False
    for i in range(n):
        x1, y1 = ring[i]
        x2, y2 = ring[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            x_cross = (x2 - x1) * (y - y1) / (y2 - y1) + x1
            if x < x_cross:
                inside = not inside
    return inside


def sampled_blocked_cells(rings, origin, cell_size, cols, rows, samples=10) -> set[tuple[int, int]]:
    """Cells where a (samples+1)^2 lattice over the closed cell rectangle
    hits any polygon (closed containment). Sample lattice includes the
    rectangle boundary."""
    out = set()
    for c in range(cols):
        for r in range(rows):
            x0 = origin[0] + c * cell_size
            y0 = origin[1] + r * cell_size
            hit = False
            for i in range(samples + 1):
                for j in range(samples + 1):
                    px = x0 + cell_size * i / samples
                    py = y0 + cell_size * j / samples
                    if any(point_in_polygon_closed(px, py, ring) for ring in rings):
                        hit = True
                        break
                if hit:
                    break
            if hit:
                out.add((c, r))
    return out


def segment_touches_cell(a: tuple[int, int], b: tuple[int, int], cell: tuple[int, int]) -> bool:
    """Exact: does the closed segment between cell centers of a and b
    intersect the closed unit rectangle of ``cell``? (Liang-Barsky over
    rationals.)"""
    ax, ay = Fraction(2 * a[0] + 1, 2), Fraction(2 * a[1] + 1, 2)
    bx, by = Fraction(2 * b[0] + 1, 2), Fraction(2 * b[1] + 1, 2)
    dx, dy = bx - ax, by - ay
    x0, y0 = Fraction(cell[0]), Fraction(cell[1])
    x1, y1 = x0 + 1, y0 + 1
    t0, t1 = Fraction(0), Fraction(1)
    for p, q in ((-dx, ax - x0), (dx, x1 - ax), (-dy, ay - y0), (dy, y1 - ay)):
        if p == 0:
            if q < 0:
                return False
        else:
            t = q / p
            if p < 0:
                if t > t1:
                    return False
                if t > t0:
                    t0 = t
            else:
                if t < t0:
                    return False
                if t < t1:
                    t1 = t
    return t0 <= t1


def exact_supercover(a: tuple[int, int], b: tuple[int, int]) -> set[tuple[int, int]]:
    """All cells touched by the center-to-center segment, by exhaustive
    exact rectangle tests over the bounding box."""
    cells = set()
    for c in range(min(a[0], b[0]), max(a[0], b[0]) + 1):
        for r in range(min(a[1], b[1]), max(a[1], b[1]) + 1):
            if segment_touches_cell(a, b, (c, r)):
                cells.add((c, r))
    return cells


def sampled_segment_cells(a: tuple[int, int], b: tuple[int, int], per_cell: int = 100) -> set[tuple[int, int]]:
    """Cells hit by dense point sampling along the center-to-center segment."""
    ax, ay = a[0] + 0.5, a[1] + 0.5
    bx, by = b[0] + 0.5, b[1] + 0.5
    span = max(abs(b[0] - a[0]), abs(b[1] - a[1]), 1)
    n = span * per_cell
    cells = set()
    for i in range(n + 1):
        t = i / n
        x = ax + t * (bx - ax)
        y = ay + t * (by - ay)
        cells.add((math.floor(x), math.floor(y)))
    return cells
