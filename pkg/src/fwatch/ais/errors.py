"""Decode error hierarchy.

Every per-sentence failure maps to one DecodeStats counter via the class
attribute ``counter``; the stream driver catches DecodeError, bumps that
counter and moves on. Nothing in this hierarchy is ever fatal to a stream.
"""


class DecodeError(Exception):
    counter = "other"


class MalformedSentence(DecodeError):
    """No '!' start or no '*hh' checksum trailer."""

    counter = "malformed_sentence"


class ChecksumMismatch(DecodeError):
    counter = "checksum_mismatch"


class WrongTalker(DecodeError):
    """Talker other than AIVDM/AIVDO."""

    counter = "wrong_talker"


class FieldCountMismatch(DecodeError):
    counter = "field_count_mismatch"


class NonNumericFragmentField(DecodeError):
    """Fragment count/index not numeric, or outside 1..9 / 1..count."""

    counter = "non_numeric_fragment_field"


class FillBitsOutOfRange(DecodeError):
    counter = "fill_bits_out_of_range"


class InvalidArmorChar(DecodeError):
    """Payload character outside ASCII 48-87 / 96-119."""

    counter = "invalid_armor_char"


class UnsupportedType(DecodeError):
    counter = "unsupported_type"


class TruncatedPayload(DecodeError):
    counter = "truncated_payload"


class MmsiOutOfRange(DecodeError):
    """MMSI field of 0 or above 999999999."""

    counter = "mmsi_out_of_range"
