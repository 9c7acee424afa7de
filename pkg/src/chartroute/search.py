"""Best-first route planners over the weighted occupancy grid.

Dijkstra, plain A*, and a safety-guided A* share one search core: a
lazy-deletion binary heap ordered by f = g + h, with ties broken by
smaller h and then by enqueue order so node-expansion counts are
reproducible run to run.

Step costs are straight-line cell distances, optionally multiplied by
the destination cell's sailing safety weight. Accumulated costs are
kept as an (orthogonal, diagonal) pair of weight sums so that two
routes of equal true cost produce bit-identical totals regardless of
the order their steps were added in.
"""

from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass
from typing import Callable

from chartroute.errors import DegenerateBaseline, InvalidEndpoint, NoPath, NotAdjacent
from chartroute.grid import MOORE_OFFSETS, GridIndex, OccupancyGrid, SafetyWeightField

SQRT2 = math.sqrt(2.0)


class Algorithm(enum.Enum):
    DIJKSTRA = "dijkstra"
    ASTAR = "astar"
    IMPROVED_ASTAR = "improved"


class CostModel(enum.Enum):
    PLAIN_DISTANCE = "plain"
    SAFETY_WEIGHTED = "weighted"


@dataclass(frozen=True)
class PlanRequest:
    start: GridIndex
    goal: GridIndex
    algorithm: Algorithm
    cost_model: CostModel


@dataclass(frozen=True)
class PlanResult:
    path: list[GridIndex]
    total_cost: float
    expanded: int
    generated: int


def neighbors(grid: OccupancyGrid, idx: GridIndex) -> list[GridIndex]:
    """Navigable Moore neighbors in fixed order N, NE, E, SE, S, SW, W, NW.

    A diagonal neighbor is excluded when either of its two adjacent
    orthogonal cells is blocked: a vessel cannot pass through a land
    corner.
    """
    blocked = grid.blocked
    cols, rows = grid.spec.cols, grid.spec.rows
    c, r = idx
    out = []
    for dc, dr in MOORE_OFFSETS:
        nc, nr = c + dc, r + dr
        if not (0 <= nc < cols and 0 <= nr < rows) or blocked[nr, nc]:
            continue
        if dc != 0 and dr != 0 and (blocked[r, nc] or blocked[nr, c]):
            continue
        out.append(GridIndex(nc, nr))
    return out


def step_cost(
    frm: GridIndex, to: GridIndex, model: CostModel, weights: SafetyWeightField
) -> float:
    """Cost of one move: cell-unit distance, times w(to) under the weighted model."""
    dc = to.col - frm.col
    dr = to.row - frm.row
    if (dc == 0 and dr == 0) or abs(dc) > 1 or abs(dr) > 1:
        raise NotAdjacent(f"{frm} and {to} are not 8-neighbors")
    dist = SQRT2 if dc != 0 and dr != 0 else 1.0
    if model is CostModel.SAFETY_WEIGHTED:
        return dist * weights.at(to)
    return dist


def cross_sine(s: GridIndex, g: GridIndex, c: GridIndex) -> float:
    """sin of the angle at the goal between the start and current-node bearings.

    Computed as |（c-g) x (s-g)| / (|c-g|*|s-g|), clamped to [0, 1]; zero
    at the goal itself so the heuristic vanishes there.
    """
    if s == g:
        raise DegenerateBaseline("start and goal coincide")
    if c == g:
        return 0.0
    cross = (c.col - g.col) * (s.row - g.row) - (s.col - g.col) * (c.row - g.row)
    norm_cg = math.hypot(c.col - g.col, c.row - g.row)
    norm_sg = math.hypot(s.col - g.col, s.row - g.row)
    return min(1.0, abs(cross) / (norm_cg * norm_sg))


def pilot_quantity(sin_theta: float) -> float:
    """Guidance factor 3 / (4 - sin θ), mapping [0, 1] onto [0.75, 1]."""
    return 3.0 / (4.0 - sin_theta)


def heuristic_plain(i: GridIndex, g: GridIndex) -> float:
    """Euclidean cell-unit distance to the goal."""
    return math.hypot(i.col - g.col, i.row - g.row)


def heuristic_improved(i: GridIndex, s: GridIndex, g: GridIndex) -> float:
    """Distance to goal scaled by the pilot quantity.

    The factor never exceeds 1, so the estimate stays at or below the
    straight-line distance and therefore below the cheapest remaining
    sailing cost; routes near the start-goal line get smaller estimates
    and are explored first.
    """
    return heuristic_plain(i, g) * pilot_quantity(cross_sine(s, g, i))


def _canonical_cost(ortho_sum: float, diag_sum: float) -> float:
    # Both sums are exact multiples of 0.5, so this depends only on the
    # (orthogonal, diagonal) weight totals, not on step order.
    return ortho_sum + diag_sum * SQRT2


def plan(grid: OccupancyGrid, weights: SafetyWeightField, req: PlanRequest) -> PlanResult:
    """Run the requested planner and return the minimum-cost path.

    Deterministic: identical inputs give identical results, including
    expanded/generated counts. Stale heap entries are skipped on pop;
    a node is re-expanded if a cheaper route to it is found later (the
    guided heuristic is admissible but not consistent).
    """
    for name, idx in (("start", req.start), ("goal", req.goal)):
        if not grid.in_bounds(idx):
            raise InvalidEndpoint(f"{name} {idx} is out of bounds")
        if grid.blocked_at(idx):
            raise InvalidEndpoint(f"{name} {idx} is blocked")

    start, goal = req.start, req.goal
    if start == goal:
        return PlanResult(path=[start], total_cost=0.0, expanded=1, generated=1)

    if req.algorithm is Algorithm.DIJKSTRA:
        def h(idx: GridIndex) -> float:
            return 0.0
    elif req.algorithm is Algorithm.ASTAR:
        def h(idx: GridIndex) -> float:
            return heuristic_plain(idx, goal)
    else:
        def h(idx: GridIndex) -> float:
            return heuristic_improved(idx, start, goal)

    weighted = req.cost_model is CostModel.SAFETY_WEIGHTED
    w = weights.w

    g_pair: dict[GridIndex, tuple[float, float]] = {start: (0.0, 0.0)}
    g_val: dict[GridIndex, float] = {start: 0.0}
    parent: dict[GridIndex, GridIndex | None] = {start: None}
    h_start = h(start)
    heap: list[tuple[float, float, int, float, GridIndex]] = [(h_start, h_start, 0, 0.0, start)]
    seq = 1
    expanded = 0

    while heap:
        _, _, _, g_here, cur = heapq.heappop(heap)
        if g_here > g_val[cur]:
            continue  # superseded by a cheaper route found later
        expanded += 1
        if cur == goal:
            break
        ortho, diag = g_pair[cur]
        for nb in neighbors(grid, cur):
            wv = w[nb.row, nb.col] if weighted else 1.0
            if nb.col != cur.col and nb.row != cur.row:
                cand = (ortho, diag + wv)
            else:
                cand = (ortho + wv, diag)
            cand_g = _canonical_cost(*cand)
            known = g_val.get(nb)
            if known is None or cand_g < known:
                g_val[nb] = cand_g
                g_pair[nb] = cand
                parent[nb] = cur
                hn = h(nb)
                heapq.heappush(heap, (cand_g + hn, hn, seq, cand_g, nb))
                seq += 1
    else:
        raise NoPath(f"no route from {start} to {goal}")

    path = [goal]
    while (prev := parent[path[-1]]) is not None:
        path.append(prev)
    path.reverse()
    return PlanResult(
        path=path,
        total_cost=_canonical_cost(*g_pair[goal]),
        expanded=expanded,
        generated=len(g_val),
    )
