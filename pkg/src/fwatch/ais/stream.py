"""Stream decoding: timestamped log lines in, decoded messages out.

Input format is one message per line, ``<ISO-8601 UTC>\\t<NMEA sentence>``;
lines starting with '#' (and blank lines) are ignored. Per-line failures
are never fatal: each bumps one DecodeStats counter and the stream moves
on. The books must always balance:

    accepted + sum(error counters) + pending_fragments == lines_read
"""

from __future__ import annotations

from dataclasses import dataclass, fields as dc_fields
from datetime import datetime, timezone
from typing import Iterable, Iterator

from .errors import DecodeError
from .fragments import FragmentAssembler
from .messages import DecodedMessage, decode_message
from .nmea import checksum_fold, parse_frame, split_sentence
from .sixbit import unarmor

_EPOCH_MIN = datetime(2000, 1, 1, tzinfo=timezone.utc)
_EPOCH_MAX = datetime(2100, 1, 1, tzinfo=timezone.utc)


@dataclass(slots=True, frozen=True)
class RawLine:
    received_at: datetime
    sentence: str


@dataclass(slots=True)
class DecodeStats:
    """Per-stream accounting; every input line lands in exactly one bucket."""

    lines_read: int = 0
    accepted: int = 0
    ignored: int = 0  # comments/blank lines, outside the conservation sum
    pending_fragments: int = 0
    bad_line: int = 0
    malformed_sentence: int = 0
    checksum_mismatch: int = 0
    wrong_talker: int = 0
    field_count_mismatch: int = 0
    non_numeric_fragment_field: int = 0
    fill_bits_out_of_range: int = 0
    invalid_armor_char: int = 0
    unsupported_type: int = 0
    truncated_payload: int = 0
    mmsi_out_of_range: int = 0
    duplicate_fragment: int = 0
    fragment_timeout: int = 0
    other: int = 0

    _NON_ERROR = ("lines_read", "accepted", "ignored", "pending_fragments")

    def bump(self, counter: str, n: int = 1) -> None:
        setattr(self, counter, getattr(self, counter) + n)

    def errors_total(self) -> int:
        return sum(
            getattr(self, f.name)
            for f in dc_fields(self)
            if f.name not in self._NON_ERROR
        )

    def balanced(self) -> bool:
        return (
            self.accepted + self.errors_total() + self.pending_fragments
            == self.lines_read
        )

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in dc_fields(self)}


def parse_iso_utc(text: str) -> datetime:
    """Parse an ISO-8601 timestamp; naive values are taken as UTC."""
    ts = datetime.fromisoformat(text[:-1] + "+00:00" if text.endswith("Z") else text)
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def read_log(lines: Iterable[str], stats: DecodeStats) -> Iterator[RawLine]:
    """Turn raw log text lines into RawLines, counting the ones that are not.

    Bad lines (no tab, unparsable or out-of-window timestamp, empty
    sentence) are charged to ``bad_line``; they count as lines read even
    though they never reach the decoder, keeping the books balanced.
    """
    for text in lines:
        text = text.rstrip("\r\n")
        if not text or text.startswith("#"):
            stats.ignored += 1
            continue
        ts_s, sep, sentence = text.partition("\t")
        if not sep or not sentence:
            stats.lines_read += 1
            stats.bad_line += 1
            continue
        try:
            received_at = parse_iso_utc(ts_s)
        except ValueError:
            stats.lines_read += 1
            stats.bad_line += 1
            continue
        if not _EPOCH_MIN <= received_at < _EPOCH_MAX:
            stats.lines_read += 1
            stats.bad_line += 1
            continue
        yield RawLine(received_at, sentence)


def decode_stream(
    lines: Iterable[RawLine],
    stats: DecodeStats,
    fragment_timeout_s: float = 60.0,
) -> Iterator[tuple[datetime, DecodedMessage]]:
    """Run the full per-line pipeline; yields in completion order.

    Fragment assembly is the only stateful step, so each call owns a fresh
    assembler: run one decode_stream per input stream and the module is
    safe to parallelize across streams.
    """
    assembler = FragmentAssembler(timeout_s=fragment_timeout_s)
    pending_groups = assembler.groups
    last_seen: datetime | None = None
    for line in lines:
        stats.lines_read += 1
        last_seen = line.received_at
        try:
            body, declared = split_sentence(line.sentence)
            fold = checksum_fold(body)
            if fold != declared:
                stats.checksum_mismatch += 1
                continue
            frame = parse_frame(body, fold)
        except UnicodeEncodeError:
            stats.malformed_sentence += 1
            continue
        except DecodeError as exc:
            stats.bump(exc.counter)
            continue

        if frame.fragment_count == 1:
            if pending_groups:
                assembler.advance(line.received_at)
            payload, fill_bits, line_count = frame.payload, frame.fill_bits, 1
        else:
            assembled = assembler.add(frame, line.received_at)
            if assembled is None:
                continue
            payload = assembled.payload
            fill_bits = assembled.fill_bits
            line_count = assembled.line_count
        try:
            message = decode_message(unarmor(payload, fill_bits))
        except DecodeError as exc:
            stats.bump(exc.counter, line_count)
            continue
        stats.accepted += line_count
        yield line.received_at, message

    if last_seen is not None:
        assembler.advance(last_seen)
    stats.fragment_timeout += assembler.dropped_timeout
    stats.duplicate_fragment += assembler.dropped_duplicate
    stats.pending_fragments = assembler.pending_lines()


def decode_log(
    lines: Iterable[str],
    stats: DecodeStats,
    fragment_timeout_s: float = 60.0,
) -> Iterator[tuple[datetime, DecodedMessage]]:
    """decode_stream over a text log (the `<ISO UTC>\\t<sentence>` format)."""
    return decode_stream(read_log(lines, stats), stats, fragment_timeout_s)
