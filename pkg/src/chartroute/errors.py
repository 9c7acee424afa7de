"""Exception types shared across the toolkit."""

from __future__ import annotations


class ChartRouteError(Exception):
    """Base class for all toolkit errors."""


class ChartFormatError(ChartRouteError):
    """A chart file violates the ISO 8211 container structure.

    ``offset`` is the byte offset of the record (or leader position) at
    which parsing failed, so chart defects are reported loudly instead of
    silently shrinking the obstacle set.
    """

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)


class TruncatedLeader(ChartFormatError):
    """Fewer than 24 bytes available for a record leader."""


class NonDigit(ChartFormatError):
    """A numeric leader position holds a non-digit character."""


class MisalignedDirectory(ChartFormatError):
    """Directory byte length is not a multiple of the entry width."""


class MissingTerminator(ChartFormatError):
    """Directory does not end with the 0x1E field terminator."""


class FieldOutOfBounds(ChartFormatError):
    """A directory entry points outside the record's field area."""


class OddByteCount(ChartFormatError):
    """An SG2D payload is not a whole number of (Y, X) int32 pairs."""


class NoGeometry(ChartRouteError):
    """No record yielded a usable obstacle ring."""


class SchemaError(ChartRouteError):
    """An obstacle/grid JSON document is missing or mistypes a key."""


class InvariantViolation(ChartRouteError):
    """A decoded value violates a documented structural invariant."""


class GridTooLarge(ChartRouteError):
    """Requested rasterization exceeds the configured cell limit."""


class OutOfBounds(ChartRouteError):
    """A grid index or point lies outside the grid."""


class NotAdjacent(ChartRouteError):
    """step_cost was asked about two cells that are not 8-neighbors."""


class DegenerateBaseline(ChartRouteError):
    """Start and goal coincide, so the guidance baseline is undefined."""


class InvalidEndpoint(ChartRouteError):
    """Plan start or goal is blocked or out of bounds."""


class NoPath(ChartRouteError):
    """Search space exhausted without reaching the goal."""


class EmptyPath(ChartRouteError):
    """An operation requiring a non-empty path received none."""


class MixedGrids(ChartRouteError):
    """Metrics from different grids were mixed in one comparison."""


class ImpossibleMap(ChartRouteError):
    """Map generator parameters cannot produce a navigable map."""
