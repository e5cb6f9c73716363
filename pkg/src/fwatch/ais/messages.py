"""Typed decoding of position and static reports.

Supported types: 1/2/3 (Class A position), 18/19 (Class B position),
5/24 (static). Unavailable fields decode to None. The ship-type table
ships as packaged data (data/ship_types.csv); a vessel self-identifies
as fishing iff its ship type code is flagged there.

The layout tables in layouts.py stay the single source of truth; at
import they are compiled into flat extraction tuples so the per-message
work is plain integer arithmetic.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib.resources import files

from .errors import MmsiOutOfRange, TruncatedPayload, UnsupportedType
from .layouts import (
    POSITION_LAYOUTS,
    POSITION_MIN_BITS,
    STATIC_TYPE5_IMO,
    STATIC_TYPE5_MIN_BITS,
    STATIC_TYPE5_SHIP_TYPE,
    STATIC_TYPE5_TEXT,
    STATIC_TYPE24_PART,
    STATIC_TYPE24A_MIN_BITS,
    STATIC_TYPE24A_NAME,
    STATIC_TYPE24B_CALLSIGN,
    STATIC_TYPE24B_MIN_BITS,
    STATIC_TYPE24B_SHIP_TYPE,
    TYPE_FIELD,
)
from .sixbit import BitField


def _load_ship_types() -> tuple[dict[int, str], frozenset[int]]:
    labels: dict[int, str] = {}
    fishing = set()
    with (files("fwatch.data") / "ship_types.csv").open(newline="") as f:
        for row in csv.DictReader(f):
            code = int(row["code"])
            labels[code] = row["label"]
            if row["fishing"] == "1":
                fishing.add(code)
    return labels, frozenset(fishing)


SHIP_TYPE_LABELS, FISHING_TYPE_CODES = _load_ship_types()


@dataclass(slots=True)
class PositionReport:
    message_type: int
    mmsi: int
    latitude: float | None
    longitude: float | None
    sog: float | None
    cog: float | None
    true_heading: int | None
    utc_second: int | None


@dataclass(slots=True)
class StaticReport:
    message_type: int
    mmsi: int
    vessel_name: str
    callsign: str
    imo_number: int | None
    ship_type_code: int
    self_id_fishing: bool


DecodedMessage = PositionReport | StaticReport

_EXPECTED_ORDER = ("sog", "longitude", "latitude", "cog", "true_heading", "utc_second")


def _compile(layout) -> tuple:
    """Flatten FieldSpecs into (end, mask, sign_bit, span, scale, sentinel, lo, hi).

    Range bounds are converted to raw-integer units so validity checks
    never hinge on float rounding of the scaled value.
    """
    assert tuple(s.name for s in layout) == _EXPECTED_ORDER
    return tuple(
        (
            s.offset + s.width,
            (1 << s.width) - 1,
            (1 << (s.width - 1)) if s.signed else 0,
            1 << s.width,
            s.scale,
            s.sentinel,
            round(s.lo / s.scale),
            round(s.hi / s.scale),
        )
        for s in layout
    )


_COMPILED = {t: _compile(layout) for t, layout in POSITION_LAYOUTS.items()}


def _field_value(bits: BitField, spec) -> float | int | None:
    """Reference single-field extraction; the stream path uses _COMPILED."""
    raw = bits.sint(spec.offset, spec.width) if spec.signed else bits.uint(
        spec.offset, spec.width
    )
    if raw == spec.sentinel:
        return None
    if raw < round(spec.lo / spec.scale) or raw > round(spec.hi / spec.scale):
        return None
    return raw * spec.scale if spec.scale != 1 else raw


def _read_mmsi(value: int, length: int) -> int:
    mmsi = (value >> (length - 38)) & 0x3FFFFFFF
    if mmsi == 0 or mmsi > 999999999:
        raise MmsiOutOfRange(f"mmsi {mmsi}")
    return mmsi


def _decode_position(bits: BitField, msg_type: int) -> PositionReport:
    min_bits = POSITION_MIN_BITS[msg_type]
    length = bits.length
    if length < min_bits:
        raise TruncatedPayload(
            f"type {msg_type} needs {min_bits} bits, got {length}"
        )
    value = bits.value
    mmsi = _read_mmsi(value, length)
    out = []
    for end, mask, sign_bit, span, scale, sentinel, raw_lo, raw_hi in _COMPILED[msg_type]:
        raw = (value >> (length - end)) & mask
        if raw == sentinel:
            out.append(None)
            continue
        if raw & sign_bit:
            raw -= span
        if raw < raw_lo or raw > raw_hi:
            out.append(None)
        else:
            out.append(raw * scale if scale != 1 else raw)
    sog, lon, lat, cog, heading, second = out
    return PositionReport(msg_type, mmsi, lat, lon, sog, cog, heading, second)


def decode_position_report(bits: BitField) -> PositionReport:
    msg_type = bits.uint(*TYPE_FIELD)
    if msg_type not in POSITION_LAYOUTS:
        raise UnsupportedType(f"type {msg_type} is not a position report")
    return _decode_position(bits, msg_type)


def _decode_static(bits: BitField, msg_type: int) -> StaticReport:
    if msg_type == 5:
        if bits.length < STATIC_TYPE5_MIN_BITS:
            raise TruncatedPayload(f"type 5 needs {STATIC_TYPE5_MIN_BITS} bits")
        mmsi = _read_mmsi(bits.value, bits.length)
        texts = {t.name: bits.text(t.offset, t.width) for t in STATIC_TYPE5_TEXT}
        imo = _field_value(bits, STATIC_TYPE5_IMO)
        ship_type = bits.uint(STATIC_TYPE5_SHIP_TYPE.offset, STATIC_TYPE5_SHIP_TYPE.width)
    elif msg_type == 24:
        if bits.length < 40:
            raise TruncatedPayload("type 24 shorter than its part-number field")
        part = bits.uint(*STATIC_TYPE24_PART)
        if part == 0:
            if bits.length < STATIC_TYPE24A_MIN_BITS:
                raise TruncatedPayload(f"type 24A needs {STATIC_TYPE24A_MIN_BITS} bits")
            mmsi = _read_mmsi(bits.value, bits.length)
            name_spec = STATIC_TYPE24A_NAME
            texts = {
                "vessel_name": bits.text(name_spec.offset, name_spec.width),
                "callsign": "",
            }
            imo = None
            ship_type = 0
        elif part == 1:
            if bits.length < STATIC_TYPE24B_MIN_BITS:
                raise TruncatedPayload(f"type 24B needs {STATIC_TYPE24B_MIN_BITS} bits")
            mmsi = _read_mmsi(bits.value, bits.length)
            cs = STATIC_TYPE24B_CALLSIGN
            texts = {"vessel_name": "", "callsign": bits.text(cs.offset, cs.width)}
            imo = None
            st = STATIC_TYPE24B_SHIP_TYPE
            ship_type = bits.uint(st.offset, st.width)
        else:
            raise UnsupportedType(f"type 24 part {part} is reserved")
    else:
        raise UnsupportedType(f"type {msg_type} is not a static report")
    # codes above 99 are reserved; fold them to 0 ("not available")
    if ship_type > 99:
        ship_type = 0
    return StaticReport(
        message_type=msg_type,
        mmsi=mmsi,
        vessel_name=texts["vessel_name"],
        callsign=texts["callsign"],
        imo_number=imo,
        ship_type_code=ship_type,
        self_id_fishing=ship_type in FISHING_TYPE_CODES,
    )


def decode_static_report(bits: BitField) -> StaticReport:
    msg_type = bits.uint(*TYPE_FIELD)
    if msg_type not in (5, 24):
        raise UnsupportedType(f"type {msg_type} is not a static report")
    return _decode_static(bits, msg_type)


def decode_message(bits: BitField) -> DecodedMessage:
    """Dispatch on the 6-bit type field; everything unsupported raises."""
    length = bits.length
    if length < 38:
        raise TruncatedPayload(f"payload of {length} bits has no header")
    msg_type = bits.value >> (length - 6)
    if msg_type in POSITION_LAYOUTS:
        return _decode_position(bits, msg_type)
    if msg_type == 5 or msg_type == 24:
        return _decode_static(bits, msg_type)
    raise UnsupportedType(f"message type {msg_type}")
