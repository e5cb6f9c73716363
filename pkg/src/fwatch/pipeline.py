"""Batch pipeline: raw AIS log in, monitoring artifacts out.

Stages run decode -> ingest -> classify -> effort -> zone checks -> grid,
then write the artifact set (tracks file, effort CSV, alerts JSONL,
closure report CSV, grid CSV, run summary, figures). Everything is
deterministic for identical inputs: artifact bytes carry no wall-clock
values and the snapshot id is a content hash of the inputs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from pathlib import Path

from .ais.messages import PositionReport, StaticReport
from .ais.stream import DecodeStats, decode_log
from .config import PipelineConfig
from .effort import (
    EffortRecord,
    FishingSegment,
    effort_records,
    extract_segments,
    score_track,
)
from .grid import EffortGrid, bin_effort, write_grid_csv
from .identity import ProfileStore, RegistryIndex, load_registry
from .tracks import (
    Disposition,
    InvalidCoordinate,
    TrackStore,
    save_tracks,
    segment_by_gap,
)
from .zones import (
    MonthRow,
    ViolationAlert,
    Zone,
    detect_violations,
    effort_shift_report,
    load_zones,
)


class StageError(RuntimeError):
    """Fatal pipeline failure, tagged with the stage that raised it."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


@dataclass(slots=True)
class IngestStats:
    accepted: int = 0
    duplicate_timestamp: int = 0
    speed_spike: int = 0
    invalid_coordinate: int = 0
    static_reports: int = 0


@dataclass(slots=True)
class ApiSnapshot:
    snapshot_id: str
    built_at: datetime
    config: PipelineConfig
    store: TrackStore
    profiles: ProfileStore
    registry: RegistryIndex
    zones: list[Zone]
    fishing_segments: list[FishingSegment]
    effort: list[EffortRecord]
    grid: EffortGrid
    alerts: list[ViolationAlert]
    report_zone_id: str | None
    report_rows: list[MonthRow]
    decode_stats: DecodeStats
    ingest_stats: IngestStats
    data_range: tuple[date, date] | None
    fishing_point_ts: dict[int, set[datetime]] = field(default_factory=dict)


def _snapshot_id(paths: list[Path | None], config: PipelineConfig) -> str:
    h = hashlib.sha256()
    for p in paths:
        if p is not None:
            h.update(Path(p).read_bytes())
        h.update(b"\x00")
    h.update(repr(config).encode())
    return h.hexdigest()[:16]


def build_snapshot(
    input_path: str | Path,
    registry_path: str | Path | None,
    zones_path: str | Path | None,
    config: PipelineConfig,
) -> ApiSnapshot:
    input_path = Path(input_path)
    if not input_path.is_file():
        raise StageError("decode", f"cannot read input log {input_path}")

    registry = RegistryIndex()
    if registry_path is not None:
        if not Path(registry_path).is_file():
            raise StageError("registry", f"cannot read registry {registry_path}")
        try:
            registry = load_registry(registry_path)
        except ValueError as exc:
            raise StageError("registry", str(exc)) from None

    zones: list[Zone] = []
    if zones_path is not None:
        if not Path(zones_path).is_file():
            raise StageError("zones", f"cannot read zones {zones_path}")
        try:
            zones = load_zones(zones_path).zones
        except ValueError as exc:
            raise StageError("zones", str(exc)) from None

    # decode + ingest in one pass; static reports feed identity directly
    store = TrackStore(spike_limit_kn=config.spike_limit_kn)
    profiles = ProfileStore(
        suspected_day_threshold=config.suspected_day_threshold,
        min_day_hours=config.suspected_min_day_hours,
    )
    decode_stats = DecodeStats()
    ingest = IngestStats()
    with open(input_path, encoding="utf-8", errors="replace") as f:
        for received_at, message in decode_log(
            f, decode_stats, fragment_timeout_s=config.fragment_timeout_s
        ):
            if isinstance(message, StaticReport):
                profiles.apply_static(message)
                ingest.static_reports += 1
                continue
            assert isinstance(message, PositionReport)
            if message.latitude is None or message.longitude is None:
                ingest.invalid_coordinate += 1
                continue
            try:
                disposition = store.ingest_point(message, received_at)
            except InvalidCoordinate:
                ingest.invalid_coordinate += 1
                continue
            if disposition is Disposition.ACCEPTED:
                ingest.accepted += 1
            elif disposition is Disposition.DUPLICATE_TIMESTAMP:
                ingest.duplicate_timestamp += 1
            else:
                ingest.speed_spike += 1

    profiles.apply_registry(registry)

    # effort detection per vessel, per voyage segment
    params = config.effort_params()
    segments: list[FishingSegment] = []
    fishing_point_ts: dict[int, set[datetime]] = {}
    for mmsi in store.vessels():
        profiles.get_or_create(mmsi)
        for voyage in segment_by_gap(store.track(mmsi), config.gap_threshold):
            for seg in extract_segments(score_track(voyage.points, params), params):
                segments.append(seg)
                profiles.apply_effort(seg)
                fishing_point_ts.setdefault(mmsi, set()).update(
                    p.t for p in seg.points
                )

    effort = effort_records(segments)
    grid = bin_effort(segments, config.grid_spec())
    alerts = detect_violations(segments, zones)

    data_range = None
    if effort:
        days = [r.utc_date for r in effort]
        data_range = (min(days), max(days))
    elif store.vessels():
        ts = [p.t for m in store.vessels() for p in store.track(m)]
        data_range = (min(ts).date(), max(ts).date())

    report_zone_id = None
    report_rows: list[MonthRow] = []
    if zones and data_range is not None:
        closed = sorted(
            (z for z in zones if z.closure_start is not None), key=lambda z: z.zone_id
        )
        report_zone = closed[0] if closed else sorted(zones, key=lambda z: z.zone_id)[0]
        report_zone_id = report_zone.zone_id
        report_rows = effort_shift_report(segments, report_zone, data_range)

    return ApiSnapshot(
        snapshot_id=_snapshot_id(
            [input_path, Path(registry_path) if registry_path else None,
             Path(zones_path) if zones_path else None],
            config,
        ),
        built_at=datetime.now(timezone.utc),
        config=config,
        store=store,
        profiles=profiles,
        registry=registry,
        zones=zones,
        fishing_segments=segments,
        effort=effort,
        grid=grid,
        alerts=alerts,
        report_zone_id=report_zone_id,
        report_rows=report_rows,
        decode_stats=decode_stats,
        ingest_stats=ingest,
        data_range=data_range,
        fishing_point_ts=fishing_point_ts,
    )


def _iso(t: datetime) -> str:
    return t.isoformat().replace("+00:00", "Z")


def write_effort_csv(effort: list[EffortRecord], path: Path) -> None:
    lines = ["mmsi,utc_date,hours"]
    for rec in effort:
        lines.append(f"{rec.mmsi:09d},{rec.utc_date.isoformat()},{rec.hours!r}")
    path.write_text("\n".join(lines) + "\n")


def write_alerts_jsonl(alerts: list[ViolationAlert], path: Path) -> None:
    lines = []
    for a in alerts:
        lines.append(
            json.dumps(
                {
                    "mmsi": f"{a.mmsi:09d}",
                    "zone_id": a.zone_id,
                    "t_start": _iso(a.t_start),
                    "t_end": _iso(a.t_end),
                    "lat": a.latitude,
                    "lon": a.longitude,
                    "hours_inside": a.hours_inside,
                },
                separators=(",", ":"),
            )
        )
    path.write_text("\n".join(lines) + ("\n" if lines else ""))


def write_report_csv(rows: list[MonthRow], path: Path) -> None:
    lines = ["month,inside_hours,outside_hours"]
    for row in rows:
        lines.append(f"{row.month},{row.inside_hours!r},{row.outside_hours!r}")
    path.write_text("\n".join(lines) + "\n")


def build_summary(snapshot: ApiSnapshot) -> dict:
    totals = {
        "segment_hours": sum(s.hours for s in snapshot.fishing_segments),
        "effort_hours": sum(r.hours for r in snapshot.effort),
        "grid_hours": snapshot.grid.total_hours(),
    }
    return {
        "snapshot_id": snapshot.snapshot_id,
        "decode": snapshot.decode_stats.as_dict(),
        "ingest": {
            "accepted": snapshot.ingest_stats.accepted,
            "duplicate_timestamp": snapshot.ingest_stats.duplicate_timestamp,
            "speed_spike": snapshot.ingest_stats.speed_spike,
            "invalid_coordinate": snapshot.ingest_stats.invalid_coordinate,
            "static_reports": snapshot.ingest_stats.static_reports,
        },
        "vessels": len(snapshot.store.vessels()),
        "tiers": snapshot.profiles.tier_counts(),
        "registry_entries": len(snapshot.registry),
        "registry_malformed_rows": snapshot.registry.malformed_rows,
        "fishing_segments": len(snapshot.fishing_segments),
        "effort_records": len(snapshot.effort),
        "grid_cells": len(snapshot.grid),
        "zones": len(snapshot.zones),
        "alerts": len(snapshot.alerts),
        "report_zone_id": snapshot.report_zone_id,
        "data_range": (
            [d.isoformat() for d in snapshot.data_range]
            if snapshot.data_range
            else None
        ),
        "hours": totals,
    }


def run_pipeline(
    input_path: str | Path,
    registry_path: str | Path | None,
    zones_path: str | Path | None,
    config: PipelineConfig,
    out_dir: str | Path,
    figures: bool = True,
) -> ApiSnapshot:
    """Build the snapshot and write every artifact under out_dir."""
    snapshot = build_snapshot(input_path, registry_path, zones_path, config)
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        save_tracks(snapshot.store, out / "tracks.csv")
        write_effort_csv(snapshot.effort, out / "effort.csv")
        write_alerts_jsonl(snapshot.alerts, out / "alerts.jsonl")
        write_report_csv(snapshot.report_rows, out / "report.csv")
        write_grid_csv(snapshot.grid, out / "grid.csv")
        summary = build_summary(snapshot)
        (out / "summary.json").write_text(
            json.dumps(summary, indent=2, sort_keys=True) + "\n"
        )
        if figures:
            from .report import render_effort_map, render_effort_shift

            render_effort_map(snapshot.grid, snapshot.zones, out / "effort_map.png")
            closure = None
            for z in snapshot.zones:
                if z.zone_id == snapshot.report_zone_id:
                    closure = z.closure_start
            render_effort_shift(snapshot.report_rows, closure, out / "effort_shift.png")
    except OSError as exc:
        raise StageError("write", str(exc)) from None
    return snapshot
