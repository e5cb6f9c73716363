"""NMEA 0183 sentence framing for AIVDM/AIVDO.

A sentence looks like ``!AIVDM,1,1,,A,<payload>,0*5C``: the body between
'!' and '*' is protected by an XOR fold of its bytes, declared as two hex
digits after the '*'.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from operator import xor

from .errors import (
    ChecksumMismatch,
    FieldCountMismatch,
    FillBitsOutOfRange,
    MalformedSentence,
    NonNumericFragmentField,
    WrongTalker,
)

TALKERS = ("AIVDM", "AIVDO")


@dataclass(slots=True, frozen=True)
class AivdmFrame:
    fragment_count: int
    fragment_index: int
    sequential_id: int | None
    channel: str
    payload: str
    fill_bits: int
    checksum: int


def checksum_fold(body: str) -> int:
    """XOR fold of the body bytes (the characters between '!' and '*')."""
    return reduce(xor, body.encode("ascii"), 0)


def split_sentence(sentence: str) -> tuple[str, int]:
    """Split a raw sentence into (body, declared checksum).

    The sentence must start with '!' and end with '*' plus exactly two hex
    digits; anything else is MalformedSentence.
    """
    if not sentence.startswith("!"):
        raise MalformedSentence("sentence does not start with '!'")
    star = sentence.find("*")
    if star == -1 or len(sentence) != star + 3:
        raise MalformedSentence("missing '*hh' checksum trailer")
    try:
        declared = int(sentence[star + 1 :], 16)
    except ValueError:
        raise MalformedSentence("checksum digits are not hex") from None
    return sentence[1:star], declared


def verify_checksum(sentence: str) -> str:
    """Return the sentence body iff the declared checksum matches the fold."""
    body, declared = split_sentence(sentence)
    try:
        fold = checksum_fold(body)
    except UnicodeEncodeError:
        raise MalformedSentence("non-ASCII byte in sentence body") from None
    if fold != declared:
        raise ChecksumMismatch(f"declared {declared:02X}, computed {fold:02X}")
    return body


def parse_frame(body: str, checksum: int | None = None) -> AivdmFrame:
    """Parse a checksum-verified body into its seven AIVDM fields."""
    fields = body.split(",")
    if fields[0] not in TALKERS:
        raise WrongTalker(f"talker {fields[0]!r}")
    if len(fields) != 7:
        raise FieldCountMismatch(f"expected 7 fields, got {len(fields)}")
    _, count_s, index_s, seq_s, channel, payload, fill_s = fields
    try:
        count = int(count_s)
        index = int(index_s)
    except ValueError:
        raise NonNumericFragmentField(
            f"fragment fields {count_s!r},{index_s!r}"
        ) from None
    if not 1 <= count <= 9 or not 1 <= index <= count:
        raise NonNumericFragmentField(f"fragment {index}/{count} out of range")
    if seq_s:
        try:
            seq: int | None = int(seq_s)
        except ValueError:
            raise NonNumericFragmentField(f"sequential id {seq_s!r}") from None
        if not 0 <= seq <= 9:
            raise NonNumericFragmentField(f"sequential id {seq} out of range")
    else:
        seq = None
    try:
        fill = int(fill_s)
    except ValueError:
        raise FillBitsOutOfRange(f"fill bits {fill_s!r}") from None
    if not 0 <= fill <= 5:
        raise FillBitsOutOfRange(f"fill bits {fill}")
    if checksum is None:
        checksum = checksum_fold(body)
    return AivdmFrame(count, index, seq, channel, payload, fill, checksum)
