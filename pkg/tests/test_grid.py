"""Effort grid: binning, conservation, bbox queries."""

from __future__ import annotations

import random
from datetime import date, datetime, timedelta, timezone

import pytest

from fwatch.effort import FishingSegment
from fwatch.grid import EffortGrid, GridSpec, InvalidBbox, bin_effort, query_bbox
from fwatch.tracks import TrackPoint

UTC = timezone.utc


def segment(mmsi, t0, hours, lat, lon, n_points=4, drift=0.0):
    start = t0
    end = t0 + timedelta(hours=hours)
    step = (end - start) / (n_points - 1)
    points = tuple(
        TrackPoint(mmsi, start + i * step, lat + i * drift, lon, 3.0)
        for i in range(n_points)
    )
    cl = sum(p.latitude for p in points) / n_points
    return FishingSegment(mmsi, start, end, hours, cl, lon, n_points, points)


class TestGridSpec:
    def test_default_divides_globe(self):
        spec = GridSpec()
        assert spec.n_lat == 1800 and spec.n_lon == 3600

    def test_bad_resolution_rejected(self):
        with pytest.raises(ValueError):
            GridSpec(resolution_deg=0.07)
        with pytest.raises(ValueError):
            GridSpec(resolution_deg=-1.0)

    def test_indices_and_origin(self):
        spec = GridSpec(0.1)
        la = spec.lat_index(-2.95)
        lo = spec.lon_index(-171.52)
        lat0, lon0 = spec.cell_origin(la, lo)
        assert lat0 <= -2.95 < lat0 + 0.1
        assert lon0 <= -171.52 < lon0 + 0.1

    def test_pole_clamped(self):
        spec = GridSpec(0.1)
        assert spec.lat_index(90.0) == spec.n_lat - 1
        assert spec.lon_index(180.0) == spec.n_lon - 1


class TestBinEffort:
    def test_single_cell_holds_all_hours(self):
        t0 = datetime(2015, 1, 10, 6, 0, tzinfo=UTC)
        grid = bin_effort([segment(1, t0, 2.0, -2.95, -171.52)], GridSpec(0.1))
        (cell,) = grid.cells()
        assert cell.hours == pytest.approx(2.0)
        assert cell.utc_date == date(2015, 1, 10)

    def test_midnight_segment_splits_dates(self):
        t0 = datetime(2015, 1, 10, 23, 0, tzinfo=UTC)
        grid = bin_effort([segment(1, t0, 2.0, 3.0, 4.0)], GridSpec(0.1))
        cells = list(grid.cells())
        assert [c.utc_date.day for c in cells] == [10, 11]
        assert sum(c.hours for c in cells) == pytest.approx(2.0)

    def test_empty_input(self):
        grid = bin_effort([], GridSpec(0.1))
        assert len(grid) == 0 and grid.total_hours() == 0.0

    def random_segments(self, rng, n):
        segs = []
        for i in range(n):
            t0 = datetime(2015, 1, 1, tzinfo=UTC) + timedelta(
                hours=rng.uniform(0, 24 * 40)
            )
            segs.append(
                segment(
                    500000000 + i, t0, rng.uniform(0.3, 30.0),
                    rng.uniform(-60, 60), rng.uniform(-170, 170),
                    n_points=rng.randrange(2, 9), drift=rng.uniform(0, 0.01),
                )
            )
        return segs

    def test_conservation_random_fleet(self):
        rng = random.Random(17)
        segs = self.random_segments(rng, 150)
        grid = bin_effort(segs, GridSpec(0.1))
        assert grid.total_hours() == pytest.approx(
            sum(s.hours for s in segs), rel=1e-9
        )

    def test_conservation_across_resolutions(self):
        rng = random.Random(23)
        segs = self.random_segments(rng, 60)
        totals = {
            res: bin_effort(segs, GridSpec(res)).total_hours()
            for res in (0.05, 0.1, 0.5, 1.0)
        }
        want = sum(s.hours for s in segs)
        for total in totals.values():
            assert total == pytest.approx(want, rel=1e-9)

    def test_order_invariant(self):
        rng = random.Random(29)
        segs = self.random_segments(rng, 40)
        a = bin_effort(segs, GridSpec(0.1))
        b = bin_effort(list(reversed(segs)), GridSpec(0.1))
        assert list(a.cells()) == list(b.cells())


class TestQueryBbox:
    def build(self):
        t0 = datetime(2015, 1, 10, 6, 0, tzinfo=UTC)
        segs = [
            segment(1, t0, 2.0, -2.95, -171.52),
            segment(2, t0 + timedelta(days=2), 3.0, 10.05, 20.05),
        ]
        return bin_effort(segs, GridSpec(0.1))

    def test_whole_world_returns_everything(self):
        grid = self.build()
        cells = query_bbox(grid, (-180, -90, 180, 90))
        assert cells == list(grid.cells())
        assert sum(c.hours for c in cells) == pytest.approx(grid.total_hours())

    def test_disjoint_bbox_empty(self):
        assert query_bbox(self.build(), (100.0, 50.0, 110.0, 60.0)) == []

    def test_touching_edge_included(self):
        grid = self.build()
        (cell, _) = list(grid.cells())
        lat0, lon0 = grid.spec.cell_origin(cell.lat_index, cell.lon_index)
        # bbox whose max corner exactly touches the cell's min corner
        cells = query_bbox(grid, (lon0 - 1.0, lat0 - 1.0, lon0, lat0))
        assert cell in cells

    def test_date_filter(self):
        grid = self.build()
        cells = query_bbox(
            grid, (-180, -90, 180, 90),
            date_from=date(2015, 1, 11), date_to=date(2015, 1, 12)
        )
        assert all(c.utc_date == date(2015, 1, 12) for c in cells)

    def test_invalid_bbox(self):
        with pytest.raises(InvalidBbox):
            query_bbox(self.build(), (10.0, 0.0, -10.0, 5.0))

    def test_stable_ordering(self):
        grid = self.build()
        cells = query_bbox(grid, (-180, -90, 180, 90))
        keys = [(c.utc_date, c.lat_index, c.lon_index) for c in cells]
        assert keys == sorted(keys)
