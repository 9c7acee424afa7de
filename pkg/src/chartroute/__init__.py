"""Grid-based marine route planning from electronic chart obstacle data."""

__version__ = "0.1.0"

from chartroute.errors import ChartRouteError
from chartroute.obstacles import GeoPoint, GeoPolygon, ObstacleDocument
from chartroute.grid import GridIndex, GridSpec, OccupancyGrid, SafetyWeightField
from chartroute.search import Algorithm, CostModel, PlanRequest, PlanResult, plan
from chartroute.smoothing import SmoothingOptions, smooth
from chartroute.metrics import RouteMetrics, evaluate

__all__ = [
    "Algorithm",
    "ChartRouteError",
    "CostModel",
    "GeoPoint",
    "GeoPolygon",
    "GridIndex",
    "GridSpec",
    "ObstacleDocument",
    "OccupancyGrid",
    "PlanRequest",
    "PlanResult",
    "RouteMetrics",
    "SafetyWeightField",
    "SmoothingOptions",
    "evaluate",
    "plan",
    "smooth",
]
