import json

import pytest
from hypothesis import given, strategies as st

from chartroute.errors import InvariantViolation, SchemaError
from chartroute.jsonio import dumps_canonical, quantize_floats
from chartroute.obstacles import (
    GeoPoint,
    GeoPolygon,
    ObstacleDocument,
    document_to_jsonable,
    load_obstacle_document,
)

TRIANGLE_DOC = {
    "extent": {"min": [0.0, 0.0], "max": [10.0, 10.0]},
    "polygons": [[[1.0, 1.0], [4.0, 1.0], [2.5, 3.0]]],
}


class TestValidation:
    def test_valid_triangle(self):
        doc = load_obstacle_document(json.dumps(TRIANGLE_DOC))
        assert len(doc.polygons) == 1
        assert doc.extent[1].lon == 10.0

    def test_two_point_ring_rejected(self):
        bad = dict(TRIANGLE_DOC, polygons=[[[1.0, 1.0], [2.0, 2.0]]])
        with pytest.raises(InvariantViolation):
            load_obstacle_document(json.dumps(bad))

    def test_vertex_outside_extent_rejected(self):
        bad = dict(TRIANGLE_DOC, polygons=[[[1.0, 1.0], [11.0, 1.0], [2.5, 3.0]]])
        with pytest.raises(InvariantViolation):
            load_obstacle_document(json.dumps(bad))

    def test_missing_key(self):
        with pytest.raises(SchemaError):
            load_obstacle_document(json.dumps({"polygons": []}))

    def test_non_numeric_coordinate(self):
        bad = dict(TRIANGLE_DOC, polygons=[[[1.0, "x"], [4.0, 1.0], [2.5, 3.0]]])
        with pytest.raises(SchemaError):
            load_obstacle_document(json.dumps(bad))

    def test_not_json(self):
        with pytest.raises(SchemaError):
            load_obstacle_document("{not json")

    def test_degenerate_extent(self):
        bad = dict(TRIANGLE_DOC, extent={"min": [0.0, 0.0], "max": [0.0, 10.0]})
        with pytest.raises(InvariantViolation):
            load_obstacle_document(json.dumps(bad))

    def test_geopoint_range(self):
        with pytest.raises(InvariantViolation):
            GeoPoint(200.0, 0.0)
        with pytest.raises(InvariantViolation):
            GeoPoint(0.0, -91.0)

    def test_ring_needs_three_vertices(self):
        with pytest.raises(InvariantViolation):
            GeoPolygon(ring=(GeoPoint(0, 0), GeoPoint(1, 1)))


_coord = st.floats(min_value=-80.0, max_value=80.0, allow_nan=False).map(
    lambda v: float(f"{v:.9g}")
)


@st.composite
def quantized_documents(draw):
    """Documents whose coordinates are already 9-significant-digit values,
    i.e. anything this toolkit's writer could itself have produced."""
    xs = draw(st.lists(_coord, min_size=4, max_size=8, unique=True))
    ys = draw(st.lists(_coord, min_size=4, max_size=8, unique=True))
    lo = GeoPoint(min(xs), min(ys))
    hi = GeoPoint(max(xs), max(ys))
    mid = sorted(xs)[1:-1], sorted(ys)[1:-1]
    ring = (
        GeoPoint(lo.lon, lo.lat),
        GeoPoint(hi.lon, lo.lat),
        GeoPoint(mid[0][0], hi.lat),
    )
    return ObstacleDocument(extent=(lo, hi), polygons=(GeoPolygon(ring=ring),))


class TestRoundTrip:
    @given(quantized_documents())
    def test_emit_then_load_is_identity(self, doc):
        text = dumps_canonical(document_to_jsonable(doc))
        assert load_obstacle_document(text) == doc

    @given(quantized_documents())
    def test_emit_is_idempotent(self, doc):
        once = dumps_canonical(document_to_jsonable(doc))
        twice = dumps_canonical(document_to_jsonable(load_obstacle_document(once)))
        assert once == twice

    def test_quantizer_rounds_to_nine_significant_digits(self):
        assert quantize_floats(0.123456789123) == 0.123456789
        assert quantize_floats({"a": [1.0000000001, True]}) == {"a": [1.0, True]}
