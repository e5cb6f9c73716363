"""Gridded fishing effort: hours per lat/lon cell per UTC day.

Each segment's per-date prorated hours land in the single cell containing
the centroid of that date's member points, so total gridded hours always
equal total segment hours no matter the resolution. Storage is sparse;
zero cells never exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date, timedelta, timezone, datetime, time
from pathlib import Path
from typing import Iterable, Iterator

from .effort import FishingSegment, prorate_hours_by_date


class InvalidBbox(ValueError):
    pass


@dataclass(slots=True, frozen=True)
class GridSpec:
    resolution_deg: float = 0.1

    def __post_init__(self):
        if self.resolution_deg <= 0:
            raise ValueError(f"resolution {self.resolution_deg}")
        for span in (180.0, 360.0):
            n = span / self.resolution_deg
            if abs(n - round(n)) > 1e-9:
                raise ValueError(
                    f"resolution {self.resolution_deg} does not divide {span} evenly"
                )

    @property
    def n_lat(self) -> int:
        return round(180.0 / self.resolution_deg)

    @property
    def n_lon(self) -> int:
        return round(360.0 / self.resolution_deg)

    def lat_index(self, latitude: float) -> int:
        return min(int(math.floor((latitude + 90.0) / self.resolution_deg)), self.n_lat - 1)

    def lon_index(self, longitude: float) -> int:
        return min(int(math.floor((longitude + 180.0) / self.resolution_deg)), self.n_lon - 1)

    def cell_origin(self, lat_index: int, lon_index: int) -> tuple[float, float]:
        return (
            lat_index * self.resolution_deg - 90.0,
            lon_index * self.resolution_deg - 180.0,
        )


@dataclass(slots=True, frozen=True)
class GridCell:
    utc_date: date
    lat_index: int
    lon_index: int
    hours: float


class EffortGrid:
    def __init__(self, spec: GridSpec):
        self.spec = spec
        self._cells: dict[tuple[date, int, int], float] = {}

    def add(self, day: date, lat_index: int, lon_index: int, hours: float) -> None:
        if hours <= 0:
            return
        key = (day, lat_index, lon_index)
        self._cells[key] = self._cells.get(key, 0.0) + hours

    def merge(self, other: "EffortGrid") -> None:
        for (day, la, lo), hours in other._cells.items():
            self.add(day, la, lo, hours)

    def total_hours(self) -> float:
        return sum(self._cells.values())

    def __len__(self) -> int:
        return len(self._cells)

    def cells(self) -> Iterator[GridCell]:
        for key in sorted(self._cells):
            day, la, lo = key
            yield GridCell(day, la, lo, self._cells[key])

    def date_range(self) -> tuple[date, date] | None:
        if not self._cells:
            return None
        days = [k[0] for k in self._cells]
        return min(days), max(days)


def _date_centroid(segment: FishingSegment, day: date) -> tuple[float, float]:
    """Centroid of the member points stamped on `day`; all points if none."""
    day_start = datetime.combine(day, time(0), tzinfo=timezone.utc)
    day_end = day_start + timedelta(days=1)
    members = [p for p in segment.points if day_start <= p.t < day_end]
    if not members:
        members = list(segment.points)
    n = len(members)
    return (
        sum(p.latitude for p in members) / n,
        sum(p.longitude for p in members) / n,
    )


def bin_effort(segments: Iterable[FishingSegment], spec: GridSpec) -> EffortGrid:
    grid = EffortGrid(spec)
    for seg in segments:
        for day, hours in prorate_hours_by_date(seg.t_start, seg.t_end).items():
            lat, lon = _date_centroid(seg, day)
            grid.add(day, spec.lat_index(lat), spec.lon_index(lon), hours)
    return grid


def query_bbox(
    grid: EffortGrid,
    bbox: tuple[float, float, float, float],  # min_lon, min_lat, max_lon, max_lat
    date_from: date | None = None,
    date_to: date | None = None,
) -> list[GridCell]:
    """Nonzero cells whose closed cell rectangle intersects the closed bbox.

    Antimeridian-crossing boxes must be split by the caller (min < max is
    enforced on both axes).
    """
    min_lon, min_lat, max_lon, max_lat = bbox
    if not (min_lon < max_lon and min_lat < max_lat):
        raise InvalidBbox(f"bbox {bbox}: min must be < max on both axes")
    res = grid.spec.resolution_deg
    out = []
    for cell in grid.cells():
        if date_from is not None and cell.utc_date < date_from:
            continue
        if date_to is not None and cell.utc_date > date_to:
            continue
        lat0, lon0 = grid.spec.cell_origin(cell.lat_index, cell.lon_index)
        if lat0 <= max_lat and lat0 + res >= min_lat and (
            lon0 <= max_lon and lon0 + res >= min_lon
        ):
            out.append(cell)
    return out


def write_grid_csv(grid: EffortGrid, path: str | Path) -> int:
    lines = ["date,lat_index,lon_index,lat_min,lon_min,hours"]
    for cell in grid.cells():
        lat0, lon0 = grid.spec.cell_origin(cell.lat_index, cell.lon_index)
        lines.append(
            f"{cell.utc_date.isoformat()},{cell.lat_index},{cell.lon_index},"
            f"{lat0:.6f},{lon0:.6f},{cell.hours!r}"
        )
    Path(path).write_text("\n".join(lines) + "\n")
    return len(lines) - 1
