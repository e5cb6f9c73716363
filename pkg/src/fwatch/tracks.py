"""Per-vessel track storage: t-ordered, deduplicated, spike-filtered.

Points arrive in any order and are kept sorted per MMSI. Exact (mmsi, t)
duplicates keep the first arrival; points implying an impossible jump from
their in-order predecessor are rejected as position spikes. Persistence is
a diff-able columnar text file sorted by (mmsi, t).
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from datetime import datetime, timedelta
from enum import Enum
from pathlib import Path
from typing import Iterable

from .ais.messages import PositionReport
from .ais.stream import parse_iso_utc

EARTH_RADIUS_KM = 6371.0
KM_PER_H_PER_KNOT = 1.852
DEFAULT_SPIKE_LIMIT_KN = 50.0
DEFAULT_GAP_THRESHOLD = timedelta(hours=12)

TRACKS_HEADER = "fwatch-tracks v1"


class InvalidCoordinate(ValueError):
    pass


class ZeroTimeDelta(ValueError):
    pass


class CorruptHeader(ValueError):
    pass


class Disposition(Enum):
    ACCEPTED = "accepted"
    DUPLICATE_TIMESTAMP = "duplicate_timestamp"
    SPEED_SPIKE = "speed_spike"


@dataclass(slots=True)
class TrackPoint:
    mmsi: int
    t: datetime
    latitude: float
    longitude: float
    sog_reported: float | None
    speed_implied: float | None = None


@dataclass(slots=True, frozen=True)
class VoyageSegment:
    mmsi: int
    points: tuple[TrackPoint, ...]
    start: datetime
    end: datetime


def haversine_km(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    """Great-circle distance on a sphere of radius 6371 km."""
    phi1, phi2 = math.radians(lat1), math.radians(lat2)
    dphi = phi2 - phi1
    dlam = math.radians(lon2 - lon1)
    a = math.sin(dphi / 2) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2) ** 2
    return 2 * EARTH_RADIUS_KM * math.asin(math.sqrt(a))


def derive_implied_speed(p1: TrackPoint, p2: TrackPoint) -> float:
    """Great-circle speed between two points, in knots."""
    dt_s = (p2.t - p1.t).total_seconds()
    if dt_s <= 0:
        raise ZeroTimeDelta(f"dt = {dt_s}s")
    km = haversine_km(p1.latitude, p1.longitude, p2.latitude, p2.longitude)
    return km / (dt_s / 3600.0) / KM_PER_H_PER_KNOT


class TrackStore:
    """Sorted per-MMSI point lists.

    Concurrency contract: one writer per MMSI (writers for different MMSIs
    are independent); readers take snapshots via track()/vessels() between
    ingest batches.
    """

    def __init__(self, spike_limit_kn: float = DEFAULT_SPIKE_LIMIT_KN):
        self.spike_limit_kn = spike_limit_kn
        self._tracks: dict[int, list[TrackPoint]] = {}

    def __len__(self) -> int:
        return sum(len(pts) for pts in self._tracks.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, TrackStore) and self._tracks == other._tracks

    def vessels(self) -> list[int]:
        return sorted(self._tracks)

    def track(self, mmsi: int) -> tuple[TrackPoint, ...]:
        return tuple(self._tracks.get(mmsi, ()))

    def ingest_point(self, report: PositionReport, received_at: datetime) -> Disposition:
        if report.latitude is None or report.longitude is None:
            raise InvalidCoordinate(f"mmsi {report.mmsi}: position unavailable")
        if not (-90.0 <= report.latitude <= 90.0 and -180.0 <= report.longitude <= 180.0):
            raise InvalidCoordinate(
                f"mmsi {report.mmsi}: ({report.latitude}, {report.longitude})"
            )
        point = TrackPoint(
            mmsi=report.mmsi,
            t=received_at,
            latitude=report.latitude,
            longitude=report.longitude,
            sog_reported=report.sog,
        )
        return self._insert(point)

    def _insert(self, point: TrackPoint) -> Disposition:
        track = self._tracks.setdefault(point.mmsi, [])
        idx = bisect_left(track, point.t, key=lambda p: p.t)
        if idx < len(track) and track[idx].t == point.t:
            return Disposition.DUPLICATE_TIMESTAMP
        prev = track[idx - 1] if idx > 0 else None
        if prev is not None:
            implied = derive_implied_speed(prev, point)
            if implied > self.spike_limit_kn:
                return Disposition.SPEED_SPIKE
            point.speed_implied = implied
        track.insert(idx, point)
        nxt = track[idx + 1] if idx + 1 < len(track) else None
        if nxt is not None:
            nxt.speed_implied = derive_implied_speed(point, nxt)
        return Disposition.ACCEPTED


def segment_by_gap(
    track: Iterable[TrackPoint],
    gap_threshold: timedelta = DEFAULT_GAP_THRESHOLD,
) -> list[VoyageSegment]:
    """Partition a sorted track at every inter-point gap >= gap_threshold."""
    points = list(track)
    if not points:
        return []
    segments = []
    run = [points[0]]
    for prev, cur in zip(points, points[1:]):
        if cur.t - prev.t >= gap_threshold:
            segments.append(run)
            run = [cur]
        else:
            run.append(cur)
    segments.append(run)
    return [
        VoyageSegment(mmsi=r[0].mmsi, points=tuple(r), start=r[0].t, end=r[-1].t)
        for r in segments
    ]


def _fmt_ts(t: datetime) -> str:
    return t.isoformat().replace("+00:00", "Z")


def _fmt_opt(v: float | None) -> str:
    return "" if v is None else repr(v)


def save_tracks(store: TrackStore, path: str | Path) -> None:
    lines = [TRACKS_HEADER]
    for mmsi in store.vessels():
        for p in store.track(mmsi):
            lines.append(
                f"{p.mmsi:09d},{_fmt_ts(p.t)},{p.latitude!r},{p.longitude!r},"
                f"{_fmt_opt(p.sog_reported)},{_fmt_opt(p.speed_implied)}"
            )
    Path(path).write_text("\n".join(lines) + "\n")


def load_tracks(
    path: str | Path, spike_limit_kn: float = DEFAULT_SPIKE_LIMIT_KN
) -> tuple[TrackStore, int]:
    """Load a tracks file; returns (store, count of truncated/corrupt rows).

    Rows are trusted as saved (already deduplicated and in order), so they
    are loaded directly rather than re-filtered.
    """
    text = Path(path).read_text()
    lines = text.splitlines()
    if not lines or lines[0] != TRACKS_HEADER:
        raise CorruptHeader(f"expected {TRACKS_HEADER!r} header in {path}")
    store = TrackStore(spike_limit_kn=spike_limit_kn)
    truncated = 0
    for line in lines[1:]:
        if not line:
            continue
        parts = line.split(",")
        try:
            if len(parts) != 6:
                raise ValueError(f"{len(parts)} fields")
            point = TrackPoint(
                mmsi=int(parts[0]),
                t=parse_iso_utc(parts[1]),
                latitude=float(parts[2]),
                longitude=float(parts[3]),
                sog_reported=float(parts[4]) if parts[4] else None,
                speed_implied=float(parts[5]) if parts[5] else None,
            )
        except ValueError:
            truncated += 1
            continue
        store._tracks.setdefault(point.mmsi, []).append(point)
    return store, truncated
