"""Command line entry points: fwatch decode | effort | run | serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .ais.messages import PositionReport
from .ais.stream import DecodeStats, decode_log
from .config import BadConfig, load_config
from .effort import effort_records, extract_segments, score_track
from .pipeline import StageError, build_snapshot, run_pipeline, write_effort_csv
from .tracks import InvalidCoordinate, TrackStore, segment_by_gap


def _iso(t) -> str:
    return t.isoformat().replace("+00:00", "Z")


def _open_out(path: str | None):
    if path in (None, "-"):
        return sys.stdout
    return open(path, "w", encoding="utf-8")


def message_record(received_at, message) -> dict:
    """One stable JSON object per decoded message, Unavailable as null."""
    record = {
        "type": message.message_type,
        "mmsi": f"{message.mmsi:09d}",
        "lat": None,
        "lon": None,
        "sog_kn": None,
        "cog_deg": None,
        "heading_deg": None,
        "name": None,
        "callsign": None,
        "ship_type": None,
        "received_at": _iso(received_at),
    }
    if isinstance(message, PositionReport):
        record.update(
            lat=message.latitude,
            lon=message.longitude,
            sog_kn=message.sog,
            cog_deg=message.cog,
            heading_deg=message.true_heading,
        )
    else:
        record.update(
            name=message.vessel_name or None,
            callsign=message.callsign or None,
            ship_type=message.ship_type_code,
        )
    return record


def cmd_decode(args) -> int:
    config = load_config(args.config)
    stats = DecodeStats()
    out = _open_out(args.out)
    try:
        with open(args.input, encoding="utf-8", errors="replace") as f:
            for received_at, message in decode_log(
                f, stats, fragment_timeout_s=config.fragment_timeout_s
            ):
                print(
                    json.dumps(message_record(received_at, message),
                               separators=(",", ":")),
                    file=out,
                )
    finally:
        if out is not sys.stdout:
            out.close()
    print(
        f"decode: {stats.accepted} lines accepted, "
        f"{stats.errors_total()} errored, {stats.pending_fragments} pending "
        f"of {stats.lines_read}",
        file=sys.stderr,
    )
    return 0


def cmd_effort(args) -> int:
    config = load_config(args.config)
    stats = DecodeStats()
    store = TrackStore(spike_limit_kn=config.spike_limit_kn)
    with open(args.input, encoding="utf-8", errors="replace") as f:
        for received_at, message in decode_log(
            f, stats, fragment_timeout_s=config.fragment_timeout_s
        ):
            if not isinstance(message, PositionReport):
                continue
            if message.latitude is None or message.longitude is None:
                continue
            try:
                store.ingest_point(message, received_at)
            except InvalidCoordinate:
                continue
    params = config.effort_params()
    segments = []
    for mmsi in store.vessels():
        for voyage in segment_by_gap(store.track(mmsi), config.gap_threshold):
            segments.extend(extract_segments(score_track(voyage.points, params), params))
    records = effort_records(segments)
    if args.out in (None, "-"):
        sys.stdout.write("mmsi,utc_date,hours\n")
        for rec in records:
            sys.stdout.write(f"{rec.mmsi:09d},{rec.utc_date.isoformat()},{rec.hours!r}\n")
    else:
        write_effort_csv(records, Path(args.out))
    print(
        f"effort: {len(records)} records, {sum(r.hours for r in records):.3f} hours "
        f"from {len(segments)} segments",
        file=sys.stderr,
    )
    return 0


def cmd_run(args) -> int:
    config = load_config(args.config)
    snapshot = run_pipeline(
        args.input, args.registry, args.zones, config, args.out,
        figures=not args.no_figures,
    )
    summary_path = Path(args.out) / "summary.json"
    print(f"run: snapshot {snapshot.snapshot_id}; artifacts in {args.out}", file=sys.stderr)
    print(summary_path.read_text(), end="")
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    config = load_config(args.config)
    snapshot = build_snapshot(args.input, args.registry, args.zones, config)
    print(
        f"serve: snapshot {snapshot.snapshot_id} "
        f"({len(snapshot.store.vessels())} vessels, {len(snapshot.alerts)} alerts) "
        f"on http://{args.bind}",
        file=sys.stderr,
    )
    serve(snapshot, bind=args.bind, cors_origin=config.cors_origin, ui_dir=args.ui)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fwatch",
        description="AIS decoding, fishing-effort detection, and closure monitoring",
    )
    parser.add_argument("--version", action="version", version=f"fwatch {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, registry_zones=False):
        p.add_argument("--input", required=True, help="timestamped AIVDM log")
        p.add_argument("--config", help="key = value config file")
        if registry_zones:
            p.add_argument("--registry", help="vessel registry CSV")
            p.add_argument("--zones", help="managed zones GeoJSON")

    p = sub.add_parser("decode", help="decode a log to JSON lines")
    common(p)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("effort", help="emit apparent-fishing hours as CSV")
    common(p)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_effort)

    p = sub.add_parser("run", help="run the full pipeline and write artifacts")
    common(p, registry_zones=True)
    p.add_argument("--out", required=True, help="artifact directory")
    p.add_argument("--no-figures", action="store_true", help="skip PNG rendering")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("serve", help="build a snapshot and serve the JSON API")
    common(p, registry_zones=True)
    p.add_argument("--bind", default="127.0.0.1:8040", help="host:port")
    p.add_argument("--ui", help="static map UI directory to serve at /")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StageError as exc:
        print(f"fwatch: {exc}", file=sys.stderr)
        return 2
    except BadConfig as exc:
        print(f"fwatch: config: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"fwatch: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
