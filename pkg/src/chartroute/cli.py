"""Command-line harness tying ingestion, rasterization, planning,
smoothing, and metrics into reproducible file-based runs.

Exit codes: 0 success, 2 input/validation error, 3 no path.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from chartroute import __version__
from chartroute.errors import ChartRouteError, NoGeometry, NoPath, SchemaError
from chartroute.grid import (
    DEFAULT_MAX_CELLS,
    OccupancyGrid,
    SafetyWeightField,
    cell_center,
    compute_weight_field,
    grid_from_jsonable,
    grid_to_jsonable,
    index_of,
    rasterize,
)
from chartroute.iso8211 import DEFAULT_COMF, parse_file, s57_to_obstacles
from chartroute.jsonio import write_atomic, write_json
from chartroute.mapgen import DEFAULT_CELL_SIZE, DEFAULT_ORIGIN, generate_archipelago
from chartroute.metrics import (
    compare,
    format_comparison_text,
    metrics_for_path,
    metrics_to_jsonable,
)
from chartroute.obstacles import GeoPoint, document_from_jsonable, document_to_jsonable
from chartroute.search import Algorithm, CostModel, PlanRequest, plan
from chartroute.smoothing import SmoothingOptions, smooth, supercover

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_PATH = 3

# Experiment-region preset: 109.35-109.85 E, 18.10-18.40 N at 0.005 degree cells.
PRESETS = {
    "scs": {"origin": DEFAULT_ORIGIN, "cell_size": DEFAULT_CELL_SIZE, "cols": 100, "rows": 60}
}

_ALGORITHMS = {a.value: a for a in Algorithm}
_COSTS = {c.value: c for c in CostModel}


def _lonlat(text: str) -> GeoPoint:
    try:
        lon, lat = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LON,LAT got {text!r}") from None
    return GeoPoint(lon, lat)


def _algo_list(text: str) -> list[Algorithm]:
    names = [n.strip() for n in text.split(",") if n.strip()]
    unknown = [n for n in names if n not in _ALGORITHMS]
    if unknown or not names:
        raise argparse.ArgumentTypeError(
            f"unknown algorithm(s) {unknown}; choose from {sorted(_ALGORITHMS)}"
        )
    return [_ALGORITHMS[n] for n in names]


def _max_cells(args) -> int:
    if args.max_cells is not None:
        return args.max_cells
    env = os.environ.get("CHARTROUTE_MAX_CELLS")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SchemaError(f"CHARTROUTE_MAX_CELLS must be an integer, got {env!r}") from None
    return DEFAULT_MAX_CELLS


def _effective_cell_size(args) -> float | None:
    if args.cell_size is not None:
        return args.cell_size
    if args.preset is not None:
        return PRESETS[args.preset]["cell_size"]
    return None


def _load_grid(args) -> OccupancyGrid:
    """Load a grid cache, or rasterize an obstacle document on the fly."""
    text = Path(args.input).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"{args.input} is not valid JSON: {err}") from err
    if isinstance(obj, dict) and "blocked" in obj:
        return grid_from_jsonable(obj)
    if isinstance(obj, dict) and "polygons" in obj:
        cell_size = _effective_cell_size(args)
        if cell_size is None:
            raise SchemaError(
                "planning from an obstacle document needs --cell-size (or --preset)"
            )
        return rasterize(document_from_jsonable(obj), cell_size, max_cells=_max_cells(args))
    raise SchemaError(f"{args.input} is neither a grid cache nor an obstacle document")


def _default_cost(algorithm: Algorithm) -> CostModel:
    # Baselines run on plain distance unless forced; the safety-guided
    # planner runs on weighted cost.
    if algorithm is Algorithm.IMPROVED_ASTAR:
        return CostModel.SAFETY_WEIGHTED
    return CostModel.PLAIN_DISTANCE


def _run_route(
    grid: OccupancyGrid,
    weights: SafetyWeightField,
    algorithm: Algorithm,
    cost: CostModel,
    start,
    goal,
    do_smooth: bool,
    strict_safety: bool,
) -> dict:
    result = plan(grid, weights, PlanRequest(start, goal, algorithm, cost))
    entry = {
        "result": result,
        "raw_metrics": metrics_for_path(result.path, result.expanded, grid),
        "smoothed_path": None,
        "smoothed_metrics": None,
    }
    if do_smooth:
        opts = SmoothingOptions(strict_safety=strict_safety)
        smoothed = smooth(result.path, grid, weights, opts)
        entry["smoothed_path"] = smoothed
        entry["smoothed_metrics"] = metrics_for_path(smoothed, result.expanded, grid)
    return entry


def _path_coords(path, spec) -> list[list[float]]:
    return [[c.lon, c.lat] for c in (cell_center(spec, idx) for idx in path)]


def _render_pgm(grid, weights, raw_path, smoothed_path) -> bytes:
    """P5 graymap: blocked 0, free 255, weighted 180, raw route 100, smoothed 30."""
    img = np.full(grid.blocked.shape, 255, dtype=np.uint8)
    img[weights.w > 1.0] = 180
    img[grid.blocked] = 0
    for path, shade in ((raw_path, 100), (smoothed_path, 30)):
        if not path:
            continue
        cells = {path[0]}
        for a, b in zip(path, path[1:]):
            cells.update(supercover(a, b))
        for cell in cells:
            img[cell.row, cell.col] = shade
    header = f"P5\n{grid.spec.cols} {grid.spec.rows}\n255\n".encode()
    return header + img[::-1, :].tobytes()  # north at the top


def cmd_parse_s57(args) -> int:
    data = Path(args.input).read_bytes()
    records = parse_file(data)
    try:
        doc = s57_to_obstacles(records, comf=args.comf)
    except NoGeometry as err:
        print(f"records: {len(records)}")
        print(f"warning: {err}; no output written", file=sys.stderr)
        return EXIT_OK
    write_json(args.output, document_to_jsonable(doc))
    print(f"records: {len(records)}")
    print(f"polygons: {len(doc.polygons)}")
    return EXIT_OK


def cmd_rasterize(args) -> int:
    cell_size = _effective_cell_size(args)
    if cell_size is None:
        raise SchemaError("rasterize needs --cell-size (or --preset)")
    doc = document_from_jsonable(json.loads(Path(args.input).read_text()))
    grid = rasterize(doc, cell_size, max_cells=_max_cells(args))
    write_json(args.output, grid_to_jsonable(grid))
    pct = 100.0 * float(grid.blocked.mean()) if grid.blocked.size else 0.0
    print(f"{grid.spec.cols}x{grid.spec.rows} grid, {pct:.2f}% blocked")
    return EXIT_OK


def _route_config(args, algorithm, cost, grid) -> dict:
    return {
        "input": str(args.input),
        "algorithm": algorithm.value if algorithm else [a.value for a in args.algos],
        "cost_model": cost.value if cost else args.cost,
        "start": [args.start.lon, args.start.lat],
        "goal": [args.goal.lon, args.goal.lat],
        "origin": [grid.spec.origin.lon, grid.spec.origin.lat],
        "cell_size": grid.spec.cell_size,
        "cols": grid.spec.cols,
        "rows": grid.spec.rows,
        "smooth": args.smooth,
        "strict_safety": args.strict_safety,
    }


def cmd_plan(args) -> int:
    grid = _load_grid(args)
    weights = compute_weight_field(grid)
    start = index_of(grid.spec, args.start)
    goal = index_of(grid.spec, args.goal)
    algorithm = _ALGORITHMS[args.algo]
    cost = _COSTS[args.cost] if args.cost else _default_cost(algorithm)

    entry = _run_route(
        grid, weights, algorithm, cost, start, goal, args.smooth, args.strict_safety
    )
    result = entry["result"]
    output = {
        "config": _route_config(args, algorithm, cost, grid),
        "raw_path": _path_coords(result.path, grid.spec),
        "smoothed_path": (
            _path_coords(entry["smoothed_path"], grid.spec)
            if entry["smoothed_path"] is not None
            else None
        ),
        "metrics": {
            "raw": metrics_to_jsonable(entry["raw_metrics"]),
            "smoothed": (
                metrics_to_jsonable(entry["smoothed_metrics"])
                if entry["smoothed_metrics"] is not None
                else None
            ),
        },
        "version": __version__,
    }
    write_json(args.output, output)
    if args.render:
        write_atomic(
            args.render,
            _render_pgm(grid, weights, result.path, entry["smoothed_path"]),
        )
    print(
        f"{algorithm.value}: {len(result.path)} nodes, cost {result.total_cost:.6g}, "
        f"expanded {result.expanded}"
    )
    if entry["smoothed_path"] is not None:
        print(f"smoothed: {len(entry['smoothed_path'])} nodes")
    return EXIT_OK


def cmd_compare(args) -> int:
    grid = _load_grid(args)
    weights = compute_weight_field(grid)
    start = index_of(grid.spec, args.start)
    goal = index_of(grid.spec, args.goal)

    def run(algorithm: Algorithm) -> dict:
        cost = _COSTS[args.cost] if args.cost else _default_cost(algorithm)
        entry = _run_route(
            grid, weights, algorithm, cost, start, goal, args.smooth, args.strict_safety
        )
        entry["cost_model"] = cost
        return entry

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            entries = list(pool.map(run, args.algos))
    else:
        entries = [run(a) for a in args.algos]

    table_entries = []
    per_algo = {}
    for algorithm, entry in zip(args.algos, entries):
        final = entry["smoothed_metrics"] if args.smooth else entry["raw_metrics"]
        table_entries.append((algorithm.value, final))
        per_algo[algorithm.value] = {
            "cost_model": entry["cost_model"].value,
            "raw": metrics_to_jsonable(entry["raw_metrics"]),
            "smoothed": (
                metrics_to_jsonable(entry["smoothed_metrics"])
                if entry["smoothed_metrics"] is not None
                else None
            ),
        }
    table = compare(table_entries)
    output = {
        "config": _route_config(args, None, None, grid),
        "table": table,
        "metrics": per_algo,
        "version": __version__,
    }
    write_json(args.output, output)
    print(format_comparison_text(table))
    return EXIT_OK


def cmd_genmap(args) -> int:
    preset = PRESETS[args.preset] if args.preset else None
    origin = args.origin if args.origin else (preset["origin"] if preset else DEFAULT_ORIGIN)
    cell_size = args.cell_size if args.cell_size else (
        preset["cell_size"] if preset else DEFAULT_CELL_SIZE
    )
    doc = generate_archipelago(
        seed=args.seed,
        cols=args.cols,
        rows=args.rows,
        islands=args.islands,
        cell_size=cell_size,
        origin=origin,
        min_radius_cells=args.min_radius,
        max_radius_cells=args.max_radius,
    )
    write_json(args.output, document_to_jsonable(doc))
    print(f"{len(doc.polygons)} islands over {args.cols}x{args.rows} cells")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chartroute",
        description="Marine grid route planning from electronic chart obstacle data",
    )
    parser.add_argument("--version", action="version", version=f"chartroute {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse-s57", help="extract obstacle polygons from an ISO 8211 chart")
    p.add_argument("input", help="ISO 8211 chart file")
    p.add_argument("--comf", type=float, default=DEFAULT_COMF, help="coordinate divisor")
    p.add_argument("-o", "--output", required=True, help="obstacle JSON to write")
    p.set_defaults(func=cmd_parse_s57)

    p = sub.add_parser("rasterize", help="build an occupancy grid cache from obstacles")
    p.add_argument("input", help="obstacle document JSON")
    p.add_argument("--cell-size", type=float, help="cell edge in degrees")
    p.add_argument("--preset", choices=sorted(PRESETS), help="named region preset")
    p.add_argument("--max-cells", type=int, help="grid size limit override")
    p.add_argument("-o", "--output", required=True, help="grid cache JSON to write")
    p.set_defaults(func=cmd_rasterize)

    for name in ("plan", "compare"):
        p = sub.add_parser(name, help=f"{name} routes over a grid or obstacle document")
        p.add_argument("input", help="grid cache or obstacle document JSON")
        if name == "plan":
            p.add_argument("--algo", choices=sorted(_ALGORITHMS), required=True)
        else:
            p.add_argument(
                "--algos",
                type=_algo_list,
                required=True,
                help="comma-separated algorithm list",
            )
            p.add_argument("--threads", type=int, default=1, help="parallel plan threads")
        p.add_argument(
            "--cost",
            choices=sorted(_COSTS),
            default=None,
            help="cost model (default: weighted for improved, plain otherwise)",
        )
        p.add_argument("--start", type=_lonlat, required=True, metavar="LON,LAT")
        p.add_argument("--goal", type=_lonlat, required=True, metavar="LON,LAT")
        p.add_argument("--cell-size", type=float, help="cell edge when input is a document")
        p.add_argument("--preset", choices=sorted(PRESETS), help="named region preset")
        p.add_argument("--max-cells", type=int, help="grid size limit override")
        p.add_argument("--smooth", action="store_true", help="string-pull the route")
        p.add_argument(
            "--strict-safety",
            action="store_true",
            help="smoothing also avoids weighted (w > 1) cells",
        )
        if name == "plan":
            p.add_argument("--render", help="write a P5 graymap of the run")
        p.add_argument("-o", "--output", required=True, help="route/comparison JSON to write")
        p.set_defaults(func=cmd_plan if name == "plan" else cmd_compare)

    p = sub.add_parser("genmap", help="generate a deterministic archipelago map")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cols", type=int, default=100)
    p.add_argument("--rows", type=int, default=60)
    p.add_argument("--islands", type=int, default=8)
    p.add_argument("--cell-size", type=float, default=None)
    p.add_argument("--origin", type=_lonlat, default=None, metavar="LON,LAT")
    p.add_argument("--preset", choices=sorted(PRESETS), help="named region preset")
    p.add_argument("--min-radius", type=float, default=2.0, help="island radius in cells")
    p.add_argument("--max-radius", type=float, default=6.0, help="island radius in cells")
    p.add_argument("-o", "--output", required=True, help="obstacle JSON to write")
    p.set_defaults(func=cmd_genmap)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoPath as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NO_PATH
    except (ChartRouteError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
