"""Apparent-fishing detection via a transparent speed-window heuristic.

A point is a fishing candidate when its effective speed (reported SOG,
falling back to track-implied speed) sits inside [v_min, v_max]. Candidate
runs sustained for at least min_duration become fishing segments; brief
non-candidate interruptions shorter than bridge_tolerance do not split a
run. The scoring interface is a single function so a different classifier
can be swapped in without touching extraction or bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date, datetime, time, timedelta, timezone
from typing import Iterable, Sequence

from .tracks import TrackPoint

HOUR = timedelta(hours=1)


@dataclass(slots=True, frozen=True)
class EffortParams:
    v_min_kn: float = 0.5
    v_max_kn: float = 5.5
    min_duration_min: float = 15.0
    bridge_tolerance_min: float = 5.0


@dataclass(slots=True, frozen=True)
class EffortPoint:
    point: TrackPoint
    effective_speed: float | None  # reported SOG, else implied; None = no source
    fishing_candidate: bool
    no_speed: bool


@dataclass(slots=True, frozen=True)
class FishingSegment:
    mmsi: int
    t_start: datetime
    t_end: datetime
    hours: float
    centroid_lat: float
    centroid_lon: float
    point_count: int
    points: tuple[TrackPoint, ...]

    @property
    def segment_id(self) -> str:
        return f"{self.mmsi:09d}:{self.t_start.isoformat()}"


@dataclass(slots=True)
class EffortRecord:
    mmsi: int
    utc_date: date
    hours: float
    segment_ids: list[str] = field(default_factory=list)


def score_point(point: TrackPoint, params: EffortParams = EffortParams()) -> EffortPoint:
    """Classify one point; independent of its neighbours by design."""
    speed = point.sog_reported
    if speed is None:
        speed = point.speed_implied
    if speed is None:
        return EffortPoint(point, None, False, no_speed=True)
    candidate = params.v_min_kn <= speed <= params.v_max_kn
    return EffortPoint(point, speed, candidate, no_speed=False)


def score_track(
    points: Iterable[TrackPoint], params: EffortParams = EffortParams()
) -> list[EffortPoint]:
    return [score_point(p, params) for p in points]


def extract_segments(
    points: Sequence[EffortPoint], params: EffortParams = EffortParams()
) -> list[FishingSegment]:
    """Turn a t-sorted single-voyage point list into fishing segments.

    Run semantics: consecutive candidate points always extend a run. A
    non-candidate interruption splits the run unless the next candidate
    arrives within bridge_tolerance of the first non-candidate point.
    Runs shorter than min_duration are discarded; members are the
    candidate points only.
    """
    bridge = timedelta(minutes=params.bridge_tolerance_min)
    min_duration = timedelta(minutes=params.min_duration_min)
    runs: list[list[TrackPoint]] = []
    run: list[TrackPoint] = []
    interrupted_at: datetime | None = None
    for ep in points:
        if ep.fishing_candidate:
            if run and interrupted_at is not None and ep.point.t - interrupted_at >= bridge:
                runs.append(run)
                run = []
            run.append(ep.point)
            interrupted_at = None
        elif run and interrupted_at is None:
            interrupted_at = ep.point.t
    if run:
        runs.append(run)

    segments = []
    for members in runs:
        t_start, t_end = members[0].t, members[-1].t
        if t_end - t_start < min_duration:
            continue
        n = len(members)
        segments.append(
            FishingSegment(
                mmsi=members[0].mmsi,
                t_start=t_start,
                t_end=t_end,
                hours=(t_end - t_start) / HOUR,
                centroid_lat=sum(p.latitude for p in members) / n,
                centroid_lon=sum(p.longitude for p in members) / n,
                point_count=n,
                points=tuple(members),
            )
        )
    return segments


def prorate_hours_by_date(t_start: datetime, t_end: datetime) -> dict[date, float]:
    """Split the [t_start, t_end) interval linearly over the UTC dates it overlaps."""
    out: dict[date, float] = {}
    cur = t_start
    while cur < t_end:
        day = cur.date()
        midnight = datetime.combine(day + timedelta(days=1), time(0), tzinfo=timezone.utc)
        chunk_end = min(midnight, t_end)
        out[day] = out.get(day, 0.0) + (chunk_end - cur) / HOUR
        cur = chunk_end
    return out


def effort_records(segments: Iterable[FishingSegment]) -> list[EffortRecord]:
    """Aggregate per (mmsi, utc_date); record hours sum exactly to segment hours."""
    by_key: dict[tuple[int, date], EffortRecord] = {}
    for seg in segments:
        for day, hours in prorate_hours_by_date(seg.t_start, seg.t_end).items():
            rec = by_key.get((seg.mmsi, day))
            if rec is None:
                rec = by_key[(seg.mmsi, day)] = EffortRecord(seg.mmsi, day, 0.0)
            rec.hours += hours
            rec.segment_ids.append(seg.segment_id)
    return [by_key[k] for k in sorted(by_key)]
