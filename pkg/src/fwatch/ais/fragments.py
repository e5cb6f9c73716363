"""Multi-fragment message assembly.

Fragment groups are keyed by (sequential_id, channel). A group completes
when every index 1..fragment_count has arrived, regardless of arrival
order; the assembled payload is the index-ordered concatenation. Groups
that sit incomplete for longer than the timeout (measured in feed time,
i.e. the received_at stamps passed in) are dropped, as is the older half
of any duplicate (key, index) collision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime


@dataclass(slots=True)
class _Group:
    expected: int
    parts: dict[int, str] = field(default_factory=dict)
    fill_bits: int = 0
    last_seen: datetime | None = None


@dataclass(slots=True, frozen=True)
class AssembledPayload:
    payload: str
    fill_bits: int
    line_count: int


class FragmentAssembler:
    """Stateful per-stream fragment buffer.

    Not thread-safe; run one assembler per input stream. Dropped-line
    totals are exposed as counters so the stream driver can keep its
    line-conservation books.
    """

    def __init__(self, timeout_s: float = 60.0):
        self.timeout_s = timeout_s
        self.dropped_timeout = 0  # lines discarded from stale groups
        self.dropped_duplicate = 0  # lines discarded by (key, index) collisions
        self.groups: dict[tuple[int | None, str], _Group] = {}

    def advance(self, now: datetime) -> None:
        """Discard groups with no activity for longer than the timeout."""
        if not self.groups:
            return
        stale = [
            key
            for key, grp in self.groups.items()
            if grp.last_seen is not None
            and (now - grp.last_seen).total_seconds() > self.timeout_s
        ]
        for key in stale:
            self.dropped_timeout += len(self.groups.pop(key).parts)

    def add(self, frame, received_at: datetime) -> AssembledPayload | None:
        """Feed one frame; return the assembled payload when a group completes.

        Single-fragment frames complete immediately and never touch the
        buffer. A duplicate index or a fragment_count disagreement resets
        the group: the old parts are dropped and the new frame starts over.
        """
        self.advance(received_at)
        if frame.fragment_count == 1:
            return AssembledPayload(frame.payload, frame.fill_bits, 1)

        key = (frame.sequential_id, frame.channel)
        grp = self.groups.get(key)
        if grp is not None and (
            grp.expected != frame.fragment_count or frame.fragment_index in grp.parts
        ):
            self.dropped_duplicate += len(grp.parts)
            grp = None
        if grp is None:
            grp = _Group(expected=frame.fragment_count)
            self.groups[key] = grp
        grp.parts[frame.fragment_index] = frame.payload
        grp.last_seen = received_at
        if frame.fragment_index == frame.fragment_count:
            grp.fill_bits = frame.fill_bits
        if len(grp.parts) == grp.expected:
            del self.groups[key]
            payload = "".join(grp.parts[i] for i in range(1, grp.expected + 1))
            return AssembledPayload(payload, grp.fill_bits, grp.expected)
        return None

    def pending_lines(self) -> int:
        return sum(len(g.parts) for g in self.groups.values())
