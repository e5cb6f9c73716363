"""AIVDM decoding: framing, fragment assembly, six-bit payloads, messages."""

from .errors import (
    ChecksumMismatch,
    DecodeError,
    FieldCountMismatch,
    FillBitsOutOfRange,
    InvalidArmorChar,
    MalformedSentence,
    MmsiOutOfRange,
    NonNumericFragmentField,
    TruncatedPayload,
    UnsupportedType,
    WrongTalker,
)
from .fragments import AssembledPayload, FragmentAssembler
from .layouts import POSITION_TYPES, STATIC_TYPES, SUPPORTED_TYPES
from .messages import (
    FISHING_TYPE_CODES,
    SHIP_TYPE_LABELS,
    DecodedMessage,
    PositionReport,
    StaticReport,
    decode_message,
    decode_position_report,
    decode_static_report,
)
from .nmea import AivdmFrame, checksum_fold, parse_frame, split_sentence, verify_checksum
from .sixbit import BitField, armor, unarmor
from .stream import DecodeStats, RawLine, decode_log, decode_stream, parse_iso_utc, read_log

__all__ = [
    "AivdmFrame",
    "AssembledPayload",
    "BitField",
    "ChecksumMismatch",
    "DecodeError",
    "DecodeStats",
    "DecodedMessage",
    "FISHING_TYPE_CODES",
    "FieldCountMismatch",
    "FillBitsOutOfRange",
    "FragmentAssembler",
    "InvalidArmorChar",
    "MalformedSentence",
    "MmsiOutOfRange",
    "NonNumericFragmentField",
    "POSITION_TYPES",
    "PositionReport",
    "RawLine",
    "SHIP_TYPE_LABELS",
    "STATIC_TYPES",
    "SUPPORTED_TYPES",
    "StaticReport",
    "TruncatedPayload",
    "UnsupportedType",
    "WrongTalker",
    "armor",
    "checksum_fold",
    "decode_log",
    "decode_message",
    "decode_position_report",
    "decode_static_report",
    "decode_stream",
    "parse_frame",
    "parse_iso_utc",
    "read_log",
    "split_sentence",
    "unarmor",
    "verify_checksum",
]
