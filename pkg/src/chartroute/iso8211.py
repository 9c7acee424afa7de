"""Structural ISO/IEC 8211 record parsing and 2-D coordinate extraction.

Parses the generic leader/directory/field container used to package
electronic navigational charts. Only the structural level is handled:
records are split into tagged raw-byte fields, and SG2D coordinate
fields are decoded into geographic points. Feature semantics, attribute
decoding, and update records are out of scope.

Malformed input fails loudly with byte offsets; a chart error must not
silently shrink the obstacle set.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from chartroute.errors import (
    FieldOutOfBounds,
    InvariantViolation,
    MisalignedDirectory,
    MissingTerminator,
    NoGeometry,
    NonDigit,
    OddByteCount,
    TruncatedLeader,
)
from chartroute.obstacles import GeoPoint, GeoPolygon, ObstacleDocument

FIELD_TERMINATOR = 0x1E
LEADER_LENGTH = 24

# Default coordinate multiplication factor when no DSPM record is decoded.
DEFAULT_COMF = 10_000_000


@dataclass(frozen=True)
class EntryMap:
    """Widths of the directory entry parts, from leader bytes 20-23."""

    size_of_length: int
    size_of_position: int
    reserved: int
    size_of_tag: int

    @property
    def entry_width(self) -> int:
        return self.size_of_tag + self.size_of_length + self.size_of_position


@dataclass(frozen=True)
class RecordLeader:
    record_length: int
    interchange_level: str
    leader_identifier: str
    field_control_length: int
    base_address: int
    entry_map: EntryMap


@dataclass(frozen=True)
class DirectoryEntry:
    tag: str
    field_length: int
    field_position: int


@dataclass(frozen=True)
class LogicalRecord:
    leader: RecordLeader
    directory: tuple[DirectoryEntry, ...]
    fields: tuple[tuple[str, bytes], ...]


def _ascii_int(data: bytes, lo: int, hi: int, what: str, offset: int) -> int:
    span = data[lo:hi]
    if not span.isdigit():
        raise NonDigit(
            f"{what} bytes {lo}-{hi - 1} are not ASCII digits: {span!r}", offset
        )
    return int(span)


def parse_leader(data: bytes, *, offset: int = 0) -> RecordLeader:
    """Decode a 24-byte record leader.

    Numeric fields sit at fixed ASCII-digit positions: record length at
    0-4, base address at 12-16, entry map at 20-23. The field control
    length at 10-11 is blank in many chart data records and decodes as 0.
    """
    if len(data) < LEADER_LENGTH:
        raise TruncatedLeader(
            f"leader needs {LEADER_LENGTH} bytes, got {len(data)}", offset
        )
    data = data[:LEADER_LENGTH]

    record_length = _ascii_int(data, 0, 5, "record length", offset)
    interchange_level = chr(data[5])
    leader_identifier = chr(data[6])
    fcl_span = data[10:12]
    if fcl_span.isdigit():
        field_control_length = int(fcl_span)
    elif fcl_span == b"  ":
        field_control_length = 0
    else:
        raise NonDigit(f"field control length is not digits or blank: {fcl_span!r}", offset)
    base_address = _ascii_int(data, 12, 17, "base address", offset)

    map_span = data[20:24]
    if not map_span.isdigit():
        raise NonDigit(f"entry map bytes 20-23 are not ASCII digits: {map_span!r}", offset)
    entry_map = EntryMap(*(int(chr(b)) for b in map_span))
    for name in ("size_of_length", "size_of_position", "size_of_tag"):
        if not 1 <= getattr(entry_map, name) <= 9:
            raise InvariantViolation(f"entry map {name} must be in 1..9, got entry map {map_span!r}")

    if record_length < LEADER_LENGTH:
        raise InvariantViolation(f"record length {record_length} < {LEADER_LENGTH}")
    if base_address < LEADER_LENGTH:
        raise InvariantViolation(f"base address {base_address} < {LEADER_LENGTH}")
    if base_address > record_length:
        raise InvariantViolation(
            f"base address {base_address} exceeds record length {record_length}"
        )

    return RecordLeader(
        record_length=record_length,
        interchange_level=interchange_level,
        leader_identifier=leader_identifier,
        field_control_length=field_control_length,
        base_address=base_address,
        entry_map=entry_map,
    )


def parse_directory(data: bytes, entry_map: EntryMap, *, offset: int = 0) -> list[DirectoryEntry]:
    """Decode directory entries (tag, length, position) up to the 0x1E terminator."""
    if not data or data[-1] != FIELD_TERMINATOR:
        raise MissingTerminator("directory does not end with 0x1E", offset)
    body = data[:-1]
    width = entry_map.entry_width
    if len(body) % width != 0:
        raise MisalignedDirectory(
            f"directory body of {len(body)} bytes is not a multiple of entry width {width}",
            offset,
        )

    entries = []
    for at in range(0, len(body), width):
        entry = body[at : at + width]
        tag_end = entry_map.size_of_tag
        length_end = tag_end + entry_map.size_of_length
        tag = entry[:tag_end].decode("ascii", errors="replace")
        field_length = _ascii_int(entry, tag_end, length_end, f"field length of {tag!r}", offset)
        field_position = _ascii_int(
            entry, length_end, width, f"field position of {tag!r}", offset
        )
        entries.append(DirectoryEntry(tag, field_length, field_position))
    return entries


def parse_record(data: bytes, *, offset: int = 0) -> LogicalRecord:
    """Parse one logical record; consumes exactly ``record_length`` bytes.

    ``data`` may extend past the record; callers slice files record by
    record. ``offset`` only annotates errors with the file position.
    """
    leader = parse_leader(data, offset=offset)
    if len(data) < leader.record_length:
        raise FieldOutOfBounds(
            f"record claims {leader.record_length} bytes but only {len(data)} remain",
            offset,
        )

    directory = tuple(
        parse_directory(data[LEADER_LENGTH : leader.base_address], leader.entry_map, offset=offset)
    )
    field_area = data[leader.base_address : leader.record_length]

    fields = []
    for entry in directory:
        end = entry.field_position + entry.field_length
        if end > len(field_area):
            raise FieldOutOfBounds(
                f"field {entry.tag!r} spans {entry.field_position}..{end} "
                f"but field area has {len(field_area)} bytes",
                offset,
            )
        fields.append((entry.tag, field_area[entry.field_position : end]))

    return LogicalRecord(leader=leader, directory=directory, fields=tuple(fields))


def parse_file(data: bytes) -> list[LogicalRecord]:
    """Parse back-to-back records until the input is exhausted.

    Every byte is consumed or an error is raised carrying the offset of
    the failing record; nothing is skipped.
    """
    records = []
    pos = 0
    while pos < len(data):
        record = parse_record(data[pos:], offset=pos)
        records.append(record)
        pos += record.leader.record_length
    return records


def extract_coordinates(record: LogicalRecord, comf: float = DEFAULT_COMF) -> list[GeoPoint]:
    """Decode (Y, X) int32-LE pairs from the record's SG2D fields.

    Pairs are concatenated across SG2D fields in record order; each pair
    becomes ``GeoPoint(lon=X/comf, lat=Y/comf)``. A trailing 0x1E field
    terminator is stripped before pair decoding.
    """
    if comf <= 0:
        raise ValueError(f"comf must be positive, got {comf}")
    points = []
    for tag, raw in record.fields:
        if tag != "SG2D":
            continue
        payload = raw
        if payload and payload[-1] == FIELD_TERMINATOR:
            payload = payload[:-1]
        if len(payload) % 8 != 0:
            raise OddByteCount(
                f"SG2D payload of {len(payload)} bytes is not whole (Y, X) int32 pairs"
            )
        values = struct.unpack(f"<{len(payload) // 4}i", payload)
        for y, x in zip(values[0::2], values[1::2]):
            points.append(GeoPoint(lon=x / comf, lat=y / comf))
    return points


def s57_to_obstacles(records: list[LogicalRecord], comf: float = DEFAULT_COMF) -> ObstacleDocument:
    """Build an obstacle document from every record carrying a closed ring.

    Feature/spatial pointer chains are deliberately not resolved: each
    vector record yielding at least 3 SG2D points is treated as one
    closed obstacle ring, and the extent is the bounding box of all ring
    vertices.
    """
    polygons = []
    for record in records:
        points = extract_coordinates(record, comf)
        if len(points) >= 3:
            polygons.append(GeoPolygon(ring=tuple(points)))
    if not polygons:
        raise NoGeometry("no record yields a ring of 3 or more coordinates")

    lons = [p.lon for poly in polygons for p in poly.ring]
    lats = [p.lat for poly in polygons for p in poly.ring]
    extent = (GeoPoint(min(lons), min(lats)), GeoPoint(max(lons), max(lats)))
    return ObstacleDocument(extent=extent, polygons=tuple(polygons))
