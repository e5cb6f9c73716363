"""Test-only AIVDM sentence encoder.

Builds valid sentences from known field values so fixtures carry their
own ground truth. Independent of src/ on purpose: round-tripping through
the production decoder is a two-route check, not a self-check.
"""

from __future__ import annotations

TEXT_TABLE = {chr(v + 64) if v < 32 else chr(v): v for v in range(64)}
MAX_PAYLOAD_CHARS = 60  # fragment split point


def armor_char(v: int) -> str:
    return chr(v + 48) if v < 40 else chr(v + 56)


def bits_to_payload(bits: str) -> tuple[str, int]:
    fill = (6 - len(bits) % 6) % 6
    bits = bits + "0" * fill
    payload = "".join(
        armor_char(int(bits[i : i + 6], 2)) for i in range(0, len(bits), 6)
    )
    return payload, fill


def ufield(value: int, width: int) -> str:
    assert 0 <= value < (1 << width), (value, width)
    return format(value, f"0{width}b")


def sfield(value: int, width: int) -> str:
    if value < 0:
        value += 1 << width
    return format(value, f"0{width}b")


def tfield(value: str, width: int) -> str:
    nchars = width // 6
    padded = value.upper().ljust(nchars, "@")[:nchars]
    return "".join(ufield(TEXT_TABLE[c], 6) for c in padded)


def checksum(body: str) -> str:
    acc = 0
    for ch in body:
        acc ^= ord(ch)
    return f"{acc:02X}"


def to_sentences(
    bits: str,
    channel: str = "A",
    talker: str = "AIVDM",
    seq_id: int | None = None,
) -> list[str]:
    payload, fill = bits_to_payload(bits)
    chunks = [
        payload[i : i + MAX_PAYLOAD_CHARS]
        for i in range(0, len(payload), MAX_PAYLOAD_CHARS)
    ] or [""]
    total = len(chunks)
    if total > 1 and seq_id is None:
        seq_id = 0
    seq = "" if seq_id is None else str(seq_id)
    out = []
    for index, chunk in enumerate(chunks, start=1):
        frag_fill = fill if index == total else 0
        body = f"{talker},{total},{index},{seq},{channel},{chunk},{frag_fill}"
        out.append(f"!{body}*{checksum(body)}")
    return out


def encode_position(
    msg_type: int,
    mmsi: int,
    lat: float | None,
    lon: float | None,
    sog_kn: float | None,
    cog_deg: float | None,
    heading_deg: int | None,
    utc_second: int | None = 0,
) -> str:
    """Types 1/2/3 (168 bits) and 18/19 (168/312); returns the bit string."""
    lat_raw = 91 * 600000 if lat is None else round(lat * 600000)
    lon_raw = 181 * 600000 if lon is None else round(lon * 600000)
    sog_raw = 1023 if sog_kn is None else round(sog_kn * 10)
    cog_raw = 3600 if cog_deg is None else round(cog_deg * 10)
    hdg_raw = 511 if heading_deg is None else heading_deg
    sec_raw = 60 if utc_second is None else utc_second

    head = ufield(msg_type, 6) + ufield(0, 2) + ufield(mmsi, 30)
    if msg_type in (1, 2, 3):
        bits = (
            head
            + ufield(0, 4)  # nav status: under way
            + sfield(-128, 8)  # rate of turn: not available
            + ufield(sog_raw, 10)
            + ufield(0, 1)
            + sfield(lon_raw, 28)
            + sfield(lat_raw, 27)
            + ufield(cog_raw, 12)
            + ufield(hdg_raw, 9)
            + ufield(sec_raw, 6)
            + ufield(0, 2)  # maneuver
            + ufield(0, 3)  # spare
            + ufield(0, 1)  # raim
            + ufield(0, 19)  # radio status
        )
    elif msg_type in (18, 19):
        bits = (
            head
            + ufield(0, 8)  # regional reserved
            + ufield(sog_raw, 10)
            + ufield(0, 1)
            + sfield(lon_raw, 28)
            + sfield(lat_raw, 27)
            + ufield(cog_raw, 12)
            + ufield(hdg_raw, 9)
            + ufield(sec_raw, 6)
        )
        if msg_type == 18:
            bits += ufield(0, 2) + ufield(0, 27)  # regional + flags/radio
        else:
            bits += ufield(0, 4) + tfield("", 120) + ufield(0, 8)
            bits += ufield(0, 30) + ufield(0, 4)  # dimensions + epfd
            bits += ufield(0, 1) + ufield(0, 1) + ufield(0, 1) + ufield(0, 4)
        assert msg_type != 18 or len(bits) == 168
        assert msg_type != 19 or len(bits) == 312
    else:
        raise ValueError(msg_type)
    if msg_type in (1, 2, 3):
        assert len(bits) == 168
    return bits


def encode_type5(
    mmsi: int,
    name: str,
    callsign: str,
    imo: int | None,
    ship_type: int,
) -> str:
    bits = (
        ufield(5, 6)
        + ufield(0, 2)
        + ufield(mmsi, 30)
        + ufield(0, 2)  # ais version
        + ufield(imo or 0, 30)
        + tfield(callsign, 42)
        + tfield(name, 120)
        + ufield(ship_type, 8)
        + ufield(0, 30)  # dimensions
        + ufield(0, 4)  # epfd
        + ufield(0, 20)  # eta
        + ufield(0, 8)  # draught
        + tfield("", 120)  # destination
        + ufield(0, 1)  # dte
        + ufield(0, 1)  # spare
    )
    assert len(bits) == 424
    return bits


def encode_type24a(mmsi: int, name: str) -> str:
    bits = ufield(24, 6) + ufield(0, 2) + ufield(mmsi, 30) + ufield(0, 2) + tfield(name, 120)
    assert len(bits) == 160
    return bits


def encode_type24b(mmsi: int, ship_type: int, callsign: str) -> str:
    bits = (
        ufield(24, 6)
        + ufield(0, 2)
        + ufield(mmsi, 30)
        + ufield(1, 2)
        + ufield(ship_type, 8)
        + tfield("", 42)  # vendor id
        + tfield(callsign, 42)
        + ufield(0, 30)  # dimensions
        + ufield(0, 6)  # spare
    )
    assert len(bits) == 168
    return bits


def position_sentence(msg_type, mmsi, lat, lon, sog_kn, cog_deg, heading_deg,
                      utc_second=0, channel="A", talker="AIVDM") -> str:
    sentences = to_sentences(
        encode_position(msg_type, mmsi, lat, lon, sog_kn, cog_deg, heading_deg, utc_second),
        channel=channel, talker=talker,
    )
    assert len(sentences) == 1 or msg_type == 19
    return sentences[0] if len(sentences) == 1 else sentences
