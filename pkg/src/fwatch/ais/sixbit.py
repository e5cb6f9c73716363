"""Six-bit payload armoring and bit-level field access.

AIVDM payloads pack the binary message into printable characters, six bits
per character. A character c maps to value ord(c) - 48, minus a further 8
when the result exceeds 40; valid characters therefore live in ASCII 48-87
and 96-119 with a forbidden gap at 88-95. The final ``fill_bits`` bits of
the last character are padding and are dropped.
"""

from __future__ import annotations

from .errors import InvalidArmorChar

_INVALID = 0xFF

# char code -> 6-bit value, one byte per code point; invalid codes map to 0xFF
_DEARMOR = bytearray([_INVALID]) * 256
for _code in range(48, 88):
    _DEARMOR[_code] = _code - 48
for _code in range(96, 120):
    _DEARMOR[_code] = _code - 56
_DEARMOR = bytes(_DEARMOR)

# char -> two octal digits, so a whole payload unarmors with one int(s, 8).
# Every other ASCII char maps to '@' to poison the parse; non-ASCII is
# rejected before translation (int() would accept unicode digits).
_DEARMOR_OCT = {c: "@@" for c in range(128)}
for _code in range(256):
    if _DEARMOR[_code] != _INVALID:
        _DEARMOR_OCT[_code] = format(_DEARMOR[_code], "02o")

# 6-bit value -> armor character
_ARMOR = [chr(v + 48) if v < 40 else chr(v + 56) for v in range(64)]

# 6-bit value -> text character (values 0-31 -> '@'..'_', 32-63 -> ' '..'?')
SIXBIT_TEXT = "".join(chr(v + 64) if v < 32 else chr(v) for v in range(64))


class BitField:
    """Immutable MSB-first bit string with random (offset, width) access.

    Backed by a single int; reads past ``length`` raise ValueError rather
    than silently returning short values.
    """

    __slots__ = ("value", "length")

    def __init__(self, value: int, length: int):
        self.value = value
        self.length = length

    def uint(self, offset: int, width: int) -> int:
        end = offset + width
        if end > self.length or offset < 0:
            raise ValueError(
                f"bit read [{offset}:{end}] past field length {self.length}"
            )
        return (self.value >> (self.length - end)) & ((1 << width) - 1)

    def sint(self, offset: int, width: int) -> int:
        raw = self.uint(offset, width)
        if raw & (1 << (width - 1)):
            raw -= 1 << width
        return raw

    def text(self, offset: int, width: int) -> str:
        """Decode a 6-bit ASCII text field.

        '@' (value 0) terminates the string; trailing spaces are stripped.
        """
        if width % 6:
            raise ValueError(f"text width {width} not a multiple of 6")
        chars = []
        for pos in range(offset, offset + width, 6):
            v = self.uint(pos, 6)
            if v == 0:
                break
            chars.append(SIXBIT_TEXT[v])
        return "".join(chars).rstrip(" ")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitField)
            and self.length == other.length
            and self.value == other.value
        )

    def __repr__(self) -> str:
        return f"BitField({self.length} bits)"


def unarmor(payload: str, fill_bits: int) -> BitField:
    """Unpack an armored payload into a BitField, dropping the fill bits."""
    length = 6 * len(payload) - fill_bits
    if length < 0:
        raise InvalidArmorChar(f"fill_bits {fill_bits} exceeds payload bits")
    if not payload:
        return BitField(0, 0)
    if not payload.isascii():
        raise InvalidArmorChar("non-ASCII character in payload")
    try:
        value = int(payload.translate(_DEARMOR_OCT), 8)
    except ValueError:
        bad = next(c for c in payload if _DEARMOR[ord(c)] == _INVALID)
        raise InvalidArmorChar(f"invalid armor character {bad!r}") from None
    return BitField(value >> fill_bits if fill_bits else value, length)


def armor(bits: BitField) -> tuple[str, int]:
    """Pack a BitField into (payload, fill_bits), zero-padding to a char edge."""
    fill = (6 - bits.length % 6) % 6
    value = bits.value << fill
    nchars = (bits.length + fill) // 6
    out = []
    for i in range(nchars - 1, -1, -1):
        out.append(_ARMOR[(value >> (6 * i)) & 0x3F])
    return "".join(out), fill
