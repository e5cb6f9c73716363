"""Managed zones: geofencing, closure violations, effort-shift reporting.

Point-in-polygon runs even-odd ray casting in plain lat/lon coordinates
(plate carree), which is fine for desk-scale zones away from the poles.
Rings spanning more than 180 degrees of longitude are rejected at load
time instead of silently wrapping; split such zones at the antimeridian
in the source data. Points exactly on a boundary edge count as inside --
conservative for enforcement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date, datetime, time, timezone
from pathlib import Path
from typing import Iterable, Sequence

from .effort import FishingSegment, prorate_hours_by_date

LonLat = tuple[float, float]
_EDGE_EPS = 1e-12


class NotGeoJson(ValueError):
    pass


class NoFeatures(ValueError):
    pass


class AntimeridianSpan(ValueError):
    pass


class EmptyWindow(ValueError):
    pass


@dataclass(slots=True, frozen=True)
class Zone:
    zone_id: str
    name: str
    outer: tuple[LonLat, ...]  # closed ring, first == last, >= 4 vertices
    holes: tuple[tuple[LonLat, ...], ...] = ()
    closure_start: date | None = None

    @property
    def closure_instant(self) -> datetime | None:
        if self.closure_start is None:
            return None
        return datetime.combine(self.closure_start, time(0), tzinfo=timezone.utc)


@dataclass(slots=True)
class ZoneLoadReport:
    zones: list[Zone] = field(default_factory=list)
    auto_closed_rings: int = 0
    rejected_features: int = 0


@dataclass(slots=True, frozen=True)
class ViolationAlert:
    mmsi: int
    zone_id: str
    t_start: datetime
    t_end: datetime
    latitude: float  # first position inside the zone after closure
    longitude: float
    hours_inside: float


def _close_ring(coords: Sequence[Sequence[float]], report: ZoneLoadReport) -> tuple[LonLat, ...]:
    ring = [(float(lon), float(lat)) for lon, lat in coords]
    if ring and ring[0] != ring[-1]:
        ring.append(ring[0])
        report.auto_closed_rings += 1
    if len(ring) < 4:
        raise ValueError(f"ring has {len(ring)} vertices after closing")
    for lon, lat in ring:
        if not (-180.0 <= lon <= 180.0 and -90.0 <= lat <= 90.0):
            raise ValueError(f"vertex ({lat}, {lon}) out of range")
    lons = [lon for lon, _ in ring]
    if max(lons) - min(lons) > 180.0:
        raise AntimeridianSpan(
            "ring spans more than 180 degrees of longitude; "
            "split the zone at the antimeridian"
        )
    return tuple(ring)


def load_zones(path: str | Path) -> ZoneLoadReport:
    """Read a GeoJSON FeatureCollection of Polygon features.

    Feature properties: id, name, optional closure_start (ISO date).
    Unclosed rings are auto-closed with a warning count; non-polygon and
    otherwise invalid features are rejected with a count. A ring spanning
    more than half the globe aborts the load with a clear error.
    """
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise NotGeoJson(f"{path}: {exc}") from None
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise NotGeoJson(f"{path}: not a FeatureCollection")
    features = doc.get("features")
    if not features:
        raise NoFeatures(f"{path}: no features")

    report = ZoneLoadReport()
    for i, feature in enumerate(features):
        geom = feature.get("geometry") or {}
        props = feature.get("properties") or {}
        if geom.get("type") != "Polygon":
            report.rejected_features += 1
            continue
        rings = geom.get("coordinates") or []
        try:
            outer = _close_ring(rings[0], report)
            holes = tuple(_close_ring(r, report) for r in rings[1:])
            closure_s = props.get("closure_start")
            closure = date.fromisoformat(closure_s) if closure_s else None
        except AntimeridianSpan:
            raise
        except (ValueError, IndexError, TypeError):
            report.rejected_features += 1
            continue
        report.zones.append(
            Zone(
                zone_id=str(props.get("id", f"zone-{i}")),
                name=str(props.get("name", "")),
                outer=outer,
                holes=holes,
                closure_start=closure,
            )
        )
    return report


def _on_ring_edge(x: float, y: float, ring: Sequence[LonLat]) -> bool:
    for (x1, y1), (x2, y2) in zip(ring, ring[1:]):
        if min(x1, x2) - _EDGE_EPS <= x <= max(x1, x2) + _EDGE_EPS and (
            min(y1, y2) - _EDGE_EPS <= y <= max(y1, y2) + _EDGE_EPS
        ):
            cross = (x2 - x1) * (y - y1) - (x - x1) * (y2 - y1)
            scale = max(1.0, abs(x2 - x1), abs(y2 - y1))
            if abs(cross) <= _EDGE_EPS * scale:
                return True
    return False


def _in_ring(x: float, y: float, ring: Sequence[LonLat]) -> bool:
    inside = False
    for (x1, y1), (x2, y2) in zip(ring, ring[1:]):
        if (y1 > y) != (y2 > y):
            x_cross = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < x_cross:
                inside = not inside
    return inside


def contains(zone: Zone, latitude: float, longitude: float) -> bool:
    """Even-odd containment; boundary points (outer or hole) count inside."""
    x, y = longitude, latitude
    if _on_ring_edge(x, y, zone.outer):
        return True
    for hole in zone.holes:
        if _on_ring_edge(x, y, hole):
            return True
    if not _in_ring(x, y, zone.outer):
        return False
    return not any(_in_ring(x, y, hole) for hole in zone.holes)


def detect_violations(
    segments: Iterable[FishingSegment], zones: Iterable[Zone]
) -> list[ViolationAlert]:
    """One alert per (mmsi, zone, segment) with fishing inside after closure.

    Hours inside are the segment's hours scaled by the share of member
    points that sit inside the zone at or after the closure instant.
    """
    closed = [z for z in zones if z.closure_instant is not None]
    alerts = []
    for seg in segments:
        for zone in closed:
            closure_t = zone.closure_instant
            inside = [
                p
                for p in seg.points
                if p.t >= closure_t and contains(zone, p.latitude, p.longitude)
            ]
            if not inside:
                continue
            first = min(inside, key=lambda p: p.t)
            alerts.append(
                ViolationAlert(
                    mmsi=seg.mmsi,
                    zone_id=zone.zone_id,
                    t_start=seg.t_start,
                    t_end=seg.t_end,
                    latitude=first.latitude,
                    longitude=first.longitude,
                    hours_inside=seg.hours * len(inside) / seg.point_count,
                )
            )
    alerts.sort(key=lambda a: (a.t_start, a.mmsi, a.zone_id))
    return alerts


@dataclass(slots=True, frozen=True)
class MonthRow:
    month: str  # YYYY-MM
    inside_hours: float
    outside_hours: float


def _months_between(start: date, end: date) -> list[str]:
    months = []
    y, m = start.year, start.month
    while (y, m) <= (end.year, end.month):
        months.append(f"{y:04d}-{m:02d}")
        m += 1
        if m > 12:
            y, m = y + 1, 1
    return months


def segment_is_inside(segment: FishingSegment, zone: Zone) -> bool:
    """Majority vote over member points; ties count as inside."""
    votes = sum(1 for p in segment.points if contains(zone, p.latitude, p.longitude))
    return 2 * votes >= segment.point_count


def effort_shift_report(
    segments: Iterable[FishingSegment],
    zone: Zone,
    window: tuple[date, date],
) -> list[MonthRow]:
    """Monthly inside/outside fishing hours for a zone over [start, end].

    Each segment lands wholly inside or outside by member-point majority;
    its hours are prorated per date, and dates outside the window are
    dropped, so the table sums to the fleet's fishing hours in-window.
    Months without data still emit a (zero, zero) row.
    """
    start, end = window
    if end < start:
        raise EmptyWindow(f"window {start}..{end}")
    months = _months_between(start, end)
    inside = dict.fromkeys(months, 0.0)
    outside = dict.fromkeys(months, 0.0)
    for seg in segments:
        bucket = inside if segment_is_inside(seg, zone) else outside
        for day, hours in prorate_hours_by_date(seg.t_start, seg.t_end).items():
            if start <= day <= end:
                bucket[f"{day.year:04d}-{day.month:02d}"] += hours
    return [MonthRow(m, inside[m], outside[m]) for m in months]
