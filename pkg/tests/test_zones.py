"""Zone engine: loading, containment, violations, effort-shift report."""

from __future__ import annotations

import json
import math
import random
from datetime import date, datetime, timedelta, timezone

import pytest

from fwatch.effort import FishingSegment
from fwatch.tracks import TrackPoint
from fwatch.zones import (
    AntimeridianSpan,
    EmptyWindow,
    NoFeatures,
    NotGeoJson,
    Zone,
    contains,
    detect_violations,
    effort_shift_report,
    load_zones,
    segment_is_inside,
)

UTC = timezone.utc

UNIT_SQUARE = Zone(
    "sq", "unit square",
    outer=((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)),
)


def feature(coords, props=None, gtype="Polygon"):
    return {
        "type": "Feature",
        "properties": props or {"id": "z1", "name": "zone one"},
        "geometry": {"type": gtype, "coordinates": coords},
    }


def collection(*features):
    return {"type": "FeatureCollection", "features": list(features)}


def write(tmp_path, doc):
    path = tmp_path / "zones.geojson"
    path.write_text(json.dumps(doc))
    return path


RING = [[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]]


class TestLoadZones:
    def test_single_polygon(self, tmp_path):
        report = load_zones(write(tmp_path, collection(feature([RING]))))
        assert len(report.zones) == 1
        assert report.zones[0].zone_id == "z1"
        assert report.auto_closed_rings == 0

    def test_unclosed_ring_auto_closed(self, tmp_path):
        report = load_zones(write(tmp_path, collection(feature([RING[:-1]]))))
        assert len(report.zones) == 1
        assert report.auto_closed_rings == 1
        assert report.zones[0].outer[0] == report.zones[0].outer[-1]

    def test_linestring_rejected(self, tmp_path):
        doc = collection(feature([RING]), feature(RING, gtype="LineString"))
        report = load_zones(write(tmp_path, doc))
        assert len(report.zones) == 1
        assert report.rejected_features == 1

    def test_closure_date_parsed(self, tmp_path):
        props = {"id": "mz-9", "name": "x", "closure_start": "2015-01-01"}
        report = load_zones(write(tmp_path, collection(feature([RING], props))))
        assert report.zones[0].closure_start == date(2015, 1, 1)
        assert report.zones[0].closure_instant == datetime(2015, 1, 1, tzinfo=UTC)

    def test_not_geojson(self, tmp_path):
        path = tmp_path / "zones.geojson"
        path.write_text("[1, 2, 3]")
        with pytest.raises(NotGeoJson):
            load_zones(path)

    def test_no_features(self, tmp_path):
        with pytest.raises(NoFeatures):
            load_zones(write(tmp_path, {"type": "FeatureCollection", "features": []}))

    def test_antimeridian_span_rejected(self, tmp_path):
        wide = [[-170, 0], [170, 0], [170, 1], [-170, 1], [-170, 0]]
        with pytest.raises(AntimeridianSpan):
            load_zones(write(tmp_path, collection(feature([wide]))))


class TestContains:
    def test_interior(self):
        assert contains(UNIT_SQUARE, 0.5, 0.5) is True

    def test_exterior(self):
        assert contains(UNIT_SQUARE, 0.5, 1.5) is False

    def test_boundary_counts_inside(self):
        assert contains(UNIT_SQUARE, 0.0, 0.5) is True
        assert contains(UNIT_SQUARE, 1.0, 1.0) is True  # vertex

    def test_hole_excluded_but_hole_boundary_inside(self):
        zone = Zone(
            "donut", "zone with hole",
            outer=((0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0), (0.0, 0.0)),
            holes=(((1.0, 1.0), (3.0, 1.0), (3.0, 3.0), (1.0, 3.0), (1.0, 1.0)),),
        )
        assert contains(zone, 0.5, 0.5) is True
        assert contains(zone, 2.0, 2.0) is False  # inside the hole
        assert contains(zone, 1.0, 2.0) is True  # hole edge
        assert contains(zone, 5.0, 5.0) is False

    @staticmethod
    def winding_oracle(x, y, ring):
        """Winding-number containment, written independently of src."""
        wn = 0
        for (x1, y1), (x2, y2) in zip(ring, ring[1:]):
            is_left = (x2 - x1) * (y - y1) - (x - x1) * (y2 - y1)
            if y1 <= y:
                if y2 > y and is_left > 0:
                    wn += 1
            elif y2 <= y and is_left < 0:
                wn -= 1
        return wn != 0

    @staticmethod
    def random_simple_polygon(rng, n_vertices):
        """Star polygon with every angular gap < pi, hence guaranteed simple.

        (Sorted free angles are not enough: a gap wider than pi lets the
        closing edge sweep across other wedges and self-intersect.)
        """
        cx, cy = rng.uniform(-50, 50), rng.uniform(-30, 30)
        gaps = [rng.uniform(0.5, 1.0) for _ in range(n_vertices)]
        total = sum(gaps)
        ring = []
        angle = 0.0
        for gap in gaps:
            angle += 2 * math.pi * gap / total
            radius = rng.uniform(1, 10)
            ring.append((cx + radius * math.cos(angle), cy + radius * math.sin(angle)))
        ring.append(ring[0])
        return ring

    def test_agreement_with_winding_oracle(self):
        rng = random.Random(2024)
        for _ in range(10):
            ring = self.random_simple_polygon(rng, rng.randrange(5, 12))
            zone = Zone("r", "random", outer=tuple(ring))
            for _ in range(300):
                x = rng.uniform(-65, 65)
                y = rng.uniform(-45, 45)
                if _near_any_edge(x, y, ring):
                    continue
                assert contains(zone, y, x) == self.winding_oracle(x, y, ring)


def _near_any_edge(x, y, ring, eps=1e-9):
    for (x1, y1), (x2, y2) in zip(ring, ring[1:]):
        px, py = x2 - x1, y2 - y1
        norm = px * px + py * py
        t = max(0.0, min(1.0, ((x - x1) * px + (y - y1) * py) / norm)) if norm else 0.0
        dx, dy = x - (x1 + t * px), y - (y1 + t * py)
        if math.hypot(dx, dy) < eps:
            return True
    return False


def fishing_segment(mmsi, t0_s, points_spec, hours=None):
    """points_spec: list of (offset_minutes, lat, lon)."""
    t0 = datetime.fromisoformat(t0_s).replace(tzinfo=UTC)
    points = tuple(
        TrackPoint(mmsi, t0 + timedelta(minutes=m), lat, lon, 3.0)
        for m, lat, lon in points_spec
    )
    t_end = points[-1].t
    span_h = (t_end - t0) / timedelta(hours=1)
    n = len(points)
    return FishingSegment(
        mmsi, t0, t_end, hours if hours is not None else span_h,
        sum(p.latitude for p in points) / n, sum(p.longitude for p in points) / n,
        n, points,
    )


CLOSED_SQUARE = Zone(
    "pz", "closed square",
    outer=((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)),
    closure_start=date(2015, 1, 1),
)


class TestDetectViolations:
    def test_fishing_inside_after_closure_alerts(self):
        seg = fishing_segment(
            530000001, "2015-01-02T06:00:00",
            [(0, 0.5, 0.5), (30, 0.55, 0.5), (60, 0.5, 0.55)],
        )
        (alert,) = detect_violations([seg], [CLOSED_SQUARE])
        assert alert.mmsi == 530000001
        assert alert.zone_id == "pz"
        assert alert.latitude == 0.5 and alert.longitude == 0.5
        assert alert.hours_inside == pytest.approx(seg.hours)

    def test_before_closure_no_alert(self):
        seg = fishing_segment(
            530000001, "2014-12-30T06:00:00",
            [(0, 0.5, 0.5), (30, 0.55, 0.5), (60, 0.5, 0.55)],
        )
        assert detect_violations([seg], [CLOSED_SQUARE]) == []

    def test_zone_without_closure_never_alerts(self):
        seg = fishing_segment(
            530000001, "2015-01-02T06:00:00", [(0, 0.5, 0.5), (60, 0.5, 0.55)]
        )
        assert detect_violations([seg], [UNIT_SQUARE]) == []

    def test_fishing_outside_no_alert(self):
        seg = fishing_segment(
            530000001, "2015-01-02T06:00:00", [(0, 5.0, 5.0), (60, 5.1, 5.0)]
        )
        assert detect_violations([seg], [CLOSED_SQUARE]) == []

    def test_partial_overlap_scales_hours(self):
        seg = fishing_segment(
            530000001, "2015-01-02T06:00:00",
            [(0, 0.5, 0.5), (30, 0.5, 0.51), (60, 5.0, 5.0), (90, 5.0, 5.1)],
        )
        (alert,) = detect_violations([seg], [CLOSED_SQUARE])
        assert alert.hours_inside == pytest.approx(seg.hours / 2)
        assert alert.hours_inside <= seg.hours

    def test_alert_never_ends_before_closure(self):
        segs = [
            fishing_segment(530000001, "2014-12-31T06:00:00",
                            [(0, 0.5, 0.5), (60, 0.5, 0.51)]),
            fishing_segment(530000002, "2015-01-02T06:00:00",
                            [(0, 0.5, 0.5), (60, 0.5, 0.51)]),
        ]
        alerts = detect_violations(segs, [CLOSED_SQUARE])
        closure = CLOSED_SQUARE.closure_instant
        assert all(a.t_end >= closure for a in alerts)
        assert len(alerts) == 1


class TestEffortShiftReport:
    def seg_at(self, mmsi, day_s, inside):
        lat, lon = (0.5, 0.5) if inside else (5.0, 5.0)
        return fishing_segment(
            mmsi, f"{day_s}T06:00:00",
            [(0, lat, lon), (60, lat + 0.01, lon), (120, lat, lon + 0.01)],
        )

    def test_compliant_shift(self):
        segs = [
            self.seg_at(1, "2014-12-10", True),
            self.seg_at(1, "2014-12-20", True),
            self.seg_at(1, "2015-01-10", False),
            self.seg_at(2, "2015-02-10", False),
        ]
        rows = effort_shift_report(segs, CLOSED_SQUARE, (date(2014, 12, 1), date(2015, 2, 28)))
        assert [r.month for r in rows] == ["2014-12", "2015-01", "2015-02"]
        assert rows[0].inside_hours == pytest.approx(4.0)
        assert rows[0].outside_hours == 0.0
        assert rows[1].inside_hours == 0.0 and rows[1].outside_hours == pytest.approx(2.0)

    def test_violator_hours_isolated(self):
        segs = [
            self.seg_at(1, "2015-01-10", False),
            self.seg_at(99, "2015-01-12", True),
        ]
        rows = effort_shift_report(segs, CLOSED_SQUARE, (date(2015, 1, 1), date(2015, 1, 31)))
        assert rows[0].inside_hours == pytest.approx(2.0)

    def test_months_with_no_data_emit_zero_rows(self):
        rows = effort_shift_report([], CLOSED_SQUARE, (date(2015, 1, 1), date(2015, 3, 31)))
        assert [(r.month, r.inside_hours, r.outside_hours) for r in rows] == [
            ("2015-01", 0.0, 0.0), ("2015-02", 0.0, 0.0), ("2015-03", 0.0, 0.0)
        ]

    def test_additivity(self):
        segs = [self.seg_at(i, f"2015-01-{10 + i}", i % 2 == 0) for i in range(1, 8)]
        rows = effort_shift_report(segs, CLOSED_SQUARE, (date(2015, 1, 1), date(2015, 1, 31)))
        total = sum(s.hours for s in segs)
        assert rows[0].inside_hours + rows[0].outside_hours == pytest.approx(total, rel=1e-12)

    def test_tie_counts_inside(self):
        seg = fishing_segment(
            7, "2015-01-10T06:00:00", [(0, 0.5, 0.5), (60, 5.0, 5.0)]
        )
        assert segment_is_inside(seg, CLOSED_SQUARE) is True

    def test_empty_window(self):
        with pytest.raises(EmptyWindow):
            effort_shift_report([], CLOSED_SQUARE, (date(2015, 2, 1), date(2015, 1, 1)))
