"""Bit layout tables for the supported message types.

Transcribed field tables (offset, width, signedness, scale, sentinel,
valid range) instead of per-field code, so the layouts can be audited in
one place and reused across types. Offsets are absolute bit positions in
the unarmored payload, MSB-first. ``min_bits`` is the highest bit any
listed field touches, not the nominal on-air message length; shorter
payloads raise TruncatedPayload.

Sentinel raw values (lat 91 deg, lon 181 deg, sog 1023, cog 3600, heading
511, utc_second 60+) decode to Unavailable (None), as does anything that
scales outside the field's valid range.
"""

from __future__ import annotations

from typing import NamedTuple


class FieldSpec(NamedTuple):
    name: str
    offset: int
    width: int
    signed: bool
    scale: float  # applied multiplicatively; 1 keeps the raw integer
    sentinel: int | None  # raw value meaning Unavailable
    lo: float  # inclusive lower bound after scaling
    hi: float  # inclusive upper bound after scaling


_ARCMIN_1E4 = 1.0 / 600000.0  # 1/10000 arcminute, in degrees

# Class A position reports (types 1, 2, 3), 168 bits on air.
_CLASS_A_POSITION = (
    FieldSpec("sog", 50, 10, False, 0.1, 1023, 0.0, 102.2),
    FieldSpec("longitude", 61, 28, True, _ARCMIN_1E4, 0x6791AC0, -180.0, 180.0),
    FieldSpec("latitude", 89, 27, True, _ARCMIN_1E4, 0x3412140, -90.0, 90.0),
    FieldSpec("cog", 116, 12, False, 0.1, 3600, 0.0, 359.9),
    FieldSpec("true_heading", 128, 9, False, 1, 511, 0, 359),
    FieldSpec("utc_second", 137, 6, False, 1, 60, 0, 59),
)

# Class B position reports: type 18 (168 bits) and the shared prefix of
# type 19 (312 bits); the fields below sit at identical offsets in both.
_CLASS_B_POSITION = (
    FieldSpec("sog", 46, 10, False, 0.1, 1023, 0.0, 102.2),
    FieldSpec("longitude", 57, 28, True, _ARCMIN_1E4, 0x6791AC0, -180.0, 180.0),
    FieldSpec("latitude", 85, 27, True, _ARCMIN_1E4, 0x3412140, -90.0, 90.0),
    FieldSpec("cog", 112, 12, False, 0.1, 3600, 0.0, 359.9),
    FieldSpec("true_heading", 124, 9, False, 1, 511, 0, 359),
    FieldSpec("utc_second", 133, 6, False, 1, 60, 0, 59),
)

POSITION_LAYOUTS: dict[int, tuple[FieldSpec, ...]] = {
    1: _CLASS_A_POSITION,
    2: _CLASS_A_POSITION,
    3: _CLASS_A_POSITION,
    18: _CLASS_B_POSITION,
    19: _CLASS_B_POSITION,
}

POSITION_MIN_BITS = {1: 143, 2: 143, 3: 143, 18: 139, 19: 139}


class TextSpec(NamedTuple):
    name: str
    offset: int
    width: int  # multiple of 6


# Static reports. Type 5 is 424 bits on air; we stop reading after
# ship_type at bit 239. Type 24 splits into part A (names) and part B
# (ship type and callsign), selected by the 2-bit part number at bit 38.
STATIC_TYPE5_TEXT = (
    TextSpec("callsign", 70, 42),
    TextSpec("vessel_name", 112, 120),
)
STATIC_TYPE5_IMO = FieldSpec("imo_number", 40, 30, False, 1, 0, 1, 1073741823)
STATIC_TYPE5_SHIP_TYPE = FieldSpec("ship_type_code", 232, 8, False, 1, None, 0, 99)
STATIC_TYPE5_MIN_BITS = 240

STATIC_TYPE24_PART = (38, 2)
STATIC_TYPE24A_NAME = TextSpec("vessel_name", 40, 120)
STATIC_TYPE24A_MIN_BITS = 160
STATIC_TYPE24B_SHIP_TYPE = FieldSpec("ship_type_code", 40, 8, False, 1, None, 0, 99)
STATIC_TYPE24B_CALLSIGN = TextSpec("callsign", 90, 42)
STATIC_TYPE24B_MIN_BITS = 132

# Common header, all types: message type then MMSI.
TYPE_FIELD = (0, 6)
MMSI_FIELD = (8, 30)

POSITION_TYPES = frozenset(POSITION_LAYOUTS)
STATIC_TYPES = frozenset({5, 24})
SUPPORTED_TYPES = POSITION_TYPES | STATIC_TYPES
