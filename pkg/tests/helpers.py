"""Shared fixture builders: ISO 8211 records, random grids, strait maps."""

from __future__ import annotations

import random
import struct

import numpy as np

from chartroute.grid import GridIndex, GridSpec, OccupancyGrid
from chartroute.iso8211 import FIELD_TERMINATOR, LogicalRecord
from chartroute.obstacles import GeoPoint

TERM = bytes([FIELD_TERMINATOR])


def leader_bytes(
    record_length: int,
    base_address: int,
    entry_map: tuple[int, int, int, int] = (3, 4, 0, 4),
    interchange_level: str = " ",
    leader_identifier: str = "D",
    field_control: str = "  ",
) -> bytes:
    """24-byte leader with canonical blanks at the unparsed positions."""
    sol, sop, res, sot = entry_map
    text = (
        f"{record_length:05d}"
        + interchange_level
        + leader_identifier
        + "   "
        + field_control
        + f"{base_address:05d}"
        + "   "
        + f"{sol}{sop}{res}{sot}"
    )
    assert len(text) == 24
    return text.encode("ascii")


def build_record(
    fields: list[tuple[str, bytes]],
    entry_map: tuple[int, int, int, int] = (3, 4, 0, 4),
    terminate_fields: bool = True,
) -> bytes:
    """Assemble a full record; each field payload gets its own 0x1E."""
    sol, sop, res, sot = entry_map
    blobs = []
    for tag, payload in fields:
        assert len(tag) == sot, f"tag {tag!r} must be {sot} chars"
        blobs.append((tag, payload + (TERM if terminate_fields else b"")))

    directory = b""
    position = 0
    for tag, blob in blobs:
        directory += (
            tag.encode("ascii")
            + str(len(blob)).zfill(sol).encode("ascii")
            + str(position).zfill(sop).encode("ascii")
        )
        position += len(blob)
    directory += TERM

    base_address = 24 + len(directory)
    field_area = b"".join(blob for _, blob in blobs)
    record_length = base_address + len(field_area)
    return leader_bytes(record_length, base_address, entry_map) + directory + field_area


def minimal_record() -> bytes:
    """The smallest legal record: a bare 24-byte leader, nothing else."""
    return leader_bytes(24, 24)


def sg2d_payload(pairs: list[tuple[int, int]]) -> bytes:
    """(y_scaled, x_scaled) int32-LE pairs, as stored in an SG2D field."""
    return b"".join(struct.pack("<ii", y, x) for y, x in pairs)


def rebuild_record(record: LogicalRecord) -> bytes:
    """Re-serialize a parsed record; inverts build_record's canonical filler."""
    lead = record.leader
    em = lead.entry_map
    field_control = "  " if lead.field_control_length == 0 else f"{lead.field_control_length:02d}"
    leader = leader_bytes(
        lead.record_length,
        lead.base_address,
        (em.size_of_length, em.size_of_position, em.reserved, em.size_of_tag),
        lead.interchange_level,
        lead.leader_identifier,
        field_control,
    )
    directory = b"".join(
        (
            entry.tag.encode("ascii")
            + str(entry.field_length).zfill(em.size_of_length).encode("ascii")
            + str(entry.field_position).zfill(em.size_of_position).encode("ascii")
        )
        for entry in record.directory
    )
    if lead.base_address > 24:
        directory += TERM

    area = bytearray(lead.record_length - lead.base_address)
    for entry, (_, blob) in zip(record.directory, record.fields):
        area[entry.field_position : entry.field_position + entry.field_length] = blob
    return leader + directory + bytes(area)


def make_grid(blocked: np.ndarray, cell_size: float = 1.0, origin=GeoPoint(0.0, 0.0)) -> OccupancyGrid:
    rows, cols = blocked.shape
    spec = GridSpec(origin=origin, cell_size=cell_size, cols=cols, rows=rows)
    return OccupancyGrid(spec=spec, blocked=np.asarray(blocked, dtype=bool))


def empty_grid(cols: int, rows: int, cell_size: float = 1.0) -> OccupancyGrid:
    return make_grid(np.zeros((rows, cols), dtype=bool), cell_size)


def random_grid(rng: random.Random, max_side: int = 32, density: float | None = None) -> OccupancyGrid:
    cols = rng.randint(8, max_side)
    rows = rng.randint(8, max_side)
    if density is None:
        density = rng.uniform(0.10, 0.35)
    blocked = np.zeros((rows, cols), dtype=bool)
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                blocked[r, c] = True
    return make_grid(blocked)


def random_navigable_pair(rng: random.Random, grid: OccupancyGrid) -> tuple[GridIndex, GridIndex] | None:
    free = [
        GridIndex(c, r)
        for r in range(grid.spec.rows)
        for c in range(grid.spec.cols)
        if not grid.blocked[r, c]
    ]
    if len(free) < 2:
        return None
    a = rng.choice(free)
    b = rng.choice(free)
    for _ in range(20):
        if b != a:
            break
        b = rng.choice(free)
    if a == b:
        return None
    return a, b


def strait_map(seed: int) -> tuple[OccupancyGrid, GridIndex, GridIndex]:
    """A two-cell-thick wall with a one-cell strait on the start-goal line
    and a wide (7-row) safe gap several rows off it.

    The strait is the shortest way through, so plain A* threads it; the
    weighted surcharge of the strait exceeds the detour through the gap,
    so the safety-weighted planner goes around.
    """
    rng = random.Random(seed)
    cols, rows = 40, 30
    wall_col = rng.randint(14, 24)
    strait_row = rng.randint(12, 18)
    offset = rng.randint(6, 9)
    if rng.random() < 0.5:
        gap_center = strait_row - offset
    else:
        gap_center = strait_row + offset
    gap_center = min(max(gap_center, 4), rows - 5)

    blocked = np.zeros((rows, cols), dtype=bool)
    blocked[:, wall_col] = True
    blocked[:, wall_col + 1] = True
    blocked[strait_row, wall_col] = False
    blocked[strait_row, wall_col + 1] = False
    for r in range(gap_center - 3, gap_center + 4):
        blocked[r, wall_col] = False
        blocked[r, wall_col + 1] = False

    start = GridIndex(rng.randint(3, 5), strait_row)
    goal = GridIndex(cols - 1 - rng.randint(3, 5), strait_row)
    return make_grid(blocked), start, goal
