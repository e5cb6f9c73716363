"""Read-only HTTP/JSON API over one immutable pipeline snapshot.

Every endpoint body is produced by a module-level serializer over the
snapshot and rendered through one canonical JSON encoder, so the service
layer never recomputes anything: a handler is route parsing + a
serializer call. Malformed parameters return 400 with a field-level
message; unknown vessels return 404. All responses carry snapshot_id.
"""

from __future__ import annotations

import json
from datetime import date, datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from .ais.stream import parse_iso_utc
from .grid import InvalidBbox, query_bbox
from .identity import Tier, VesselProfile
from .pipeline import ApiSnapshot, build_summary

DEFAULT_TIERS = (Tier.KNOWN, Tier.LIKELY, Tier.SUSPECTED)


class ApiError(Exception):
    def __init__(self, status: int, field: str, message: str):
        super().__init__(message)
        self.status = status
        self.field = field
        self.message = message


def canonical_json(payload) -> bytes:
    return json.dumps(payload, separators=(",", ":"), allow_nan=False).encode()


def _iso(t: datetime) -> str:
    return t.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


# ---------------------------------------------------------------- serializers


def vessel_json(snapshot: ApiSnapshot, profile: VesselProfile) -> dict:
    track = snapshot.store.track(profile.mmsi)
    last = track[-1] if track else None
    return {
        "mmsi": f"{profile.mmsi:09d}",
        "tier": profile.tier().value,
        "name": profile.latest_name or (
            profile.registry_matches[0].name if profile.registry_matches else ""
        ),
        "callsign": profile.latest_callsign,
        "self_id_fishing": profile.self_id_fishing,
        "registry": [
            {
                "imo": e.imo_number,
                "callsign": e.callsign,
                "name": e.name,
                "gear_type": e.gear_type,
                "source_list": e.source_list,
            }
            for e in profile.registry_matches
        ],
        "fishing_days": len(profile.fishing_days_observed),
        "fishing_hours": profile.total_fishing_hours,
        "point_count": len(track),
        "last_position": (
            {"t": _iso(last.t), "lat": last.latitude, "lon": last.longitude}
            if last
            else None
        ),
    }


def vessels_json(snapshot: ApiSnapshot, tiers: tuple[Tier, ...]) -> dict:
    wanted = set(tiers)
    return {
        "snapshot_id": snapshot.snapshot_id,
        "vessels": [
            vessel_json(snapshot, p)
            for p in snapshot.profiles.profiles()
            if p.tier() in wanted
        ],
    }


def vessel_detail_json(snapshot: ApiSnapshot, mmsi: int) -> dict:
    profile = snapshot.profiles.get(mmsi)
    if profile is None:
        raise ApiError(404, "mmsi", f"unknown vessel {mmsi:09d}")
    out = {"snapshot_id": snapshot.snapshot_id}
    out.update(vessel_json(snapshot, profile))
    return out


def track_json(
    snapshot: ApiSnapshot,
    mmsi: int,
    t_from: datetime | None = None,
    t_to: datetime | None = None,
) -> dict:
    profile = snapshot.profiles.get(mmsi)
    if profile is None:
        raise ApiError(404, "mmsi", f"unknown vessel {mmsi:09d}")
    fishing_ts = snapshot.fishing_point_ts.get(mmsi, set())
    points = []
    for p in snapshot.store.track(mmsi):
        if t_from is not None and p.t < t_from:
            continue
        if t_to is not None and p.t > t_to:
            continue
        points.append(
            {
                "t": _iso(p.t),
                "lat": p.latitude,
                "lon": p.longitude,
                "sog_kn": p.sog_reported,
                "implied_kn": p.speed_implied,
                "fishing": p.t in fishing_ts,
            }
        )
    return {
        "snapshot_id": snapshot.snapshot_id,
        "mmsi": f"{mmsi:09d}",
        "points": points,
    }


def grid_json(
    snapshot: ApiSnapshot,
    bbox: tuple[float, float, float, float],
    date_from: date | None = None,
    date_to: date | None = None,
) -> dict:
    try:
        cells = query_bbox(snapshot.grid, bbox, date_from, date_to)
    except InvalidBbox as exc:
        raise ApiError(400, "bbox", str(exc)) from None
    spec = snapshot.grid.spec
    return {
        "snapshot_id": snapshot.snapshot_id,
        "resolution_deg": spec.resolution_deg,
        "cells": [
            {
                "date": c.utc_date.isoformat(),
                "lat_index": c.lat_index,
                "lon_index": c.lon_index,
                "lat_min": spec.cell_origin(c.lat_index, c.lon_index)[0],
                "lon_min": spec.cell_origin(c.lat_index, c.lon_index)[1],
                "hours": c.hours,
            }
            for c in cells
        ],
    }


def zones_json(snapshot: ApiSnapshot) -> dict:
    return {
        "snapshot_id": snapshot.snapshot_id,
        "zones": [
            {
                "id": z.zone_id,
                "name": z.name,
                "closure_start": (
                    z.closure_start.isoformat() if z.closure_start else None
                ),
                "outer": [[lon, lat] for lon, lat in z.outer],
                "holes": [[[lon, lat] for lon, lat in h] for h in z.holes],
            }
            for z in sorted(snapshot.zones, key=lambda z: z.zone_id)
        ],
    }


def alerts_json(snapshot: ApiSnapshot) -> dict:
    return {
        "snapshot_id": snapshot.snapshot_id,
        "alerts": [
            {
                "mmsi": f"{a.mmsi:09d}",
                "zone_id": a.zone_id,
                "t_start": _iso(a.t_start),
                "t_end": _iso(a.t_end),
                "lat": a.latitude,
                "lon": a.longitude,
                "hours_inside": a.hours_inside,
            }
            for a in snapshot.alerts
        ],
    }


def summary_json(snapshot: ApiSnapshot) -> dict:
    out = build_summary(snapshot)
    out["built_at"] = _iso(snapshot.built_at)
    out["report"] = [
        {"month": r.month, "inside_hours": r.inside_hours, "outside_hours": r.outside_hours}
        for r in snapshot.report_rows
    ]
    return out


# ------------------------------------------------------------- param parsing


def _parse_mmsi(raw: str) -> int:
    if not raw.isdigit() or len(raw) > 9:
        raise ApiError(400, "mmsi", f"mmsi must be up to 9 digits, got {raw!r}")
    return int(raw)


def _parse_tiers(raw: str | None) -> tuple[Tier, ...]:
    if raw is None or not raw.strip():
        return DEFAULT_TIERS
    if raw.strip().lower() == "all":
        return tuple(Tier)
    tiers = []
    for part in raw.split(","):
        try:
            tiers.append(Tier(part.strip().lower()))
        except ValueError:
            valid = ",".join(t.value for t in Tier)
            raise ApiError(400, "tier", f"unknown tier {part!r} (expected {valid} or all)")
    return tuple(tiers)


def _parse_instant(raw: str | None, field: str) -> datetime | None:
    if raw is None or not raw.strip():
        return None
    try:
        if len(raw) == 10:  # bare date
            return datetime.combine(date.fromisoformat(raw), datetime.min.time(),
                                    tzinfo=timezone.utc)
        return parse_iso_utc(raw)
    except ValueError:
        raise ApiError(400, field, f"not an ISO-8601 instant: {raw!r}") from None


def _parse_date(raw: str | None, field: str) -> date | None:
    if raw is None or not raw.strip():
        return None
    try:
        return date.fromisoformat(raw[:10])
    except ValueError:
        raise ApiError(400, field, f"not an ISO date: {raw!r}") from None


def _parse_bbox(raw: str | None) -> tuple[float, float, float, float]:
    if raw is None or not raw.strip():
        return (-180.0, -90.0, 180.0, 90.0)
    parts = raw.split(",")
    if len(parts) != 4:
        raise ApiError(400, "bbox", "bbox must be min_lon,min_lat,max_lon,max_lat")
    try:
        min_lon, min_lat, max_lon, max_lat = (float(p) for p in parts)
    except ValueError:
        raise ApiError(400, "bbox", f"bbox has non-numeric members: {raw!r}") from None
    return (min_lon, min_lat, max_lon, max_lat)


def _parse_res(raw: str | None, snapshot: ApiSnapshot) -> None:
    if raw is None or not raw.strip():
        return
    try:
        res = float(raw)
    except ValueError:
        raise ApiError(400, "res", f"not a number: {raw!r}") from None
    have = snapshot.grid.spec.resolution_deg
    if abs(res - have) > 1e-12:
        raise ApiError(
            400, "res", f"snapshot is binned at {have} deg; res={res} is not available"
        )


# -------------------------------------------------------------------- routes


def create_app(
    snapshot: ApiSnapshot,
    cors_origin: str | None = "*",
    ui_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="fwatch", docs_url=None, redoc_url=None, openapi_url=None)
    if cors_origin:
        app.add_middleware(
            CORSMiddleware, allow_origins=[cors_origin], allow_methods=["GET"],
            allow_headers=["*"],
        )

    def reply(payload) -> Response:
        return Response(content=canonical_json(payload), media_type="application/json")

    def error(exc: ApiError) -> Response:
        return Response(
            content=canonical_json(
                {
                    "snapshot_id": snapshot.snapshot_id,
                    "error": {"field": exc.field, "message": exc.message},
                }
            ),
            status_code=exc.status,
            media_type="application/json",
        )

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return error(exc)

    @app.get("/v1/vessels")
    def vessels(request: Request):
        tiers = _parse_tiers(request.query_params.get("tier"))
        return reply(vessels_json(snapshot, tiers))

    @app.get("/v1/vessels/{mmsi}")
    def vessel(mmsi: str):
        return reply(vessel_detail_json(snapshot, _parse_mmsi(mmsi)))

    @app.get("/v1/vessels/{mmsi}/track")
    def track(mmsi: str, request: Request):
        qp = request.query_params
        return reply(
            track_json(
                snapshot,
                _parse_mmsi(mmsi),
                _parse_instant(qp.get("from"), "from"),
                _parse_instant(qp.get("to"), "to"),
            )
        )

    @app.get("/v1/effort/grid")
    def grid(request: Request):
        qp = request.query_params
        _parse_res(qp.get("res"), snapshot)
        return reply(
            grid_json(
                snapshot,
                _parse_bbox(qp.get("bbox")),
                _parse_date(qp.get("from"), "from"),
                _parse_date(qp.get("to"), "to"),
            )
        )

    @app.get("/v1/zones")
    def zones():
        return reply(zones_json(snapshot))

    @app.get("/v1/alerts")
    def alerts():
        return reply(alerts_json(snapshot))

    @app.get("/v1/summary")
    def summary():
        return reply(summary_json(snapshot))

    if ui_dir is not None:
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    return app


def serve(
    snapshot: ApiSnapshot,
    bind: str = "127.0.0.1:8040",
    cors_origin: str | None = "*",
    ui_dir: str | Path | None = None,
) -> None:
    """Run the service until interrupted (used by `fwatch serve`)."""
    import uvicorn

    host, _, port_s = bind.rpartition(":")
    app = create_app(snapshot, cors_origin=cors_origin, ui_dir=ui_dir)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port_s), log_level="info")
