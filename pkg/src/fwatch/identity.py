"""Vessel identity resolution and the three-tier fishing classification.

Tiers, in fixed precedence: Known (matched by MMSI to a registry entry),
Likely (self-identifies as a fishing vessel in its static reports),
Suspected (apparent fishing detected on enough distinct UTC days), else
Unclassified. Matching is by MMSI equality only; registry name/callsign/
IMO fields are carried for display and audit.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from pathlib import Path

from .ais.messages import StaticReport
from .effort import FishingSegment, prorate_hours_by_date

REGISTRY_HEADER = ["mmsi", "imo", "callsign", "name", "gear_type", "source_list"]

DEFAULT_SUSPECTED_DAY_THRESHOLD = 3
# a day counts toward Suspected once it accumulates this many fishing hours
DEFAULT_MIN_DAY_HOURS = 1.0

_MMSI_RE = re.compile(r"^\d{9}$")


class MissingHeader(ValueError):
    pass


class MmsiMismatch(ValueError):
    pass


class Tier(str, Enum):
    KNOWN = "known"
    LIKELY = "likely"
    SUSPECTED = "suspected"
    UNCLASSIFIED = "unclassified"


@dataclass(slots=True, frozen=True)
class RegistryEntry:
    mmsi: int
    imo_number: int | None
    callsign: str
    name: str
    gear_type: str
    source_list: str


@dataclass(slots=True)
class RegistryIndex:
    by_mmsi: dict[int, list[RegistryEntry]] = field(default_factory=dict)
    malformed_rows: int = 0

    def matches(self, mmsi: int) -> list[RegistryEntry]:
        return self.by_mmsi.get(mmsi, [])

    def __len__(self) -> int:
        return len(self.by_mmsi)


def load_registry(path: str | Path) -> RegistryIndex:
    """Load the registry CSV, aggregating duplicate MMSI rows as extra matches.

    Malformed rows (bad MMSI, or no identifying field at all) are counted
    and skipped, never fatal.
    """
    index = RegistryIndex()
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise MissingHeader(f"{path}: empty file") from None
        if [h.strip() for h in header] != REGISTRY_HEADER:
            raise MissingHeader(f"{path}: expected header {','.join(REGISTRY_HEADER)}")
        for row in reader:
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(REGISTRY_HEADER):
                index.malformed_rows += 1
                continue
            mmsi_s, imo_s, callsign, name, gear, source = (c.strip() for c in row)
            if not _MMSI_RE.match(mmsi_s):
                index.malformed_rows += 1
                continue
            if not any((imo_s, callsign, name, gear, source)):
                index.malformed_rows += 1
                continue
            try:
                imo = int(imo_s) if imo_s else None
            except ValueError:
                index.malformed_rows += 1
                continue
            entry = RegistryEntry(int(mmsi_s), imo, callsign, name, gear, source)
            index.by_mmsi.setdefault(entry.mmsi, []).append(entry)
    return index


def classify_vessel(
    registry_matched: bool,
    self_id_fishing: bool,
    fishing_day_count: int,
    suspected_day_threshold: int = DEFAULT_SUSPECTED_DAY_THRESHOLD,
) -> Tier:
    """Total, deterministic tier function with Known > Likely > Suspected."""
    if registry_matched:
        return Tier.KNOWN
    if self_id_fishing:
        return Tier.LIKELY
    if fishing_day_count >= suspected_day_threshold:
        return Tier.SUSPECTED
    return Tier.UNCLASSIFIED


@dataclass(slots=True)
class VesselProfile:
    mmsi: int
    registry_matches: list[RegistryEntry] = field(default_factory=list)
    self_id_fishing: bool = False
    latest_name: str = ""
    latest_callsign: str = ""
    fishing_hours_by_date: dict[date, float] = field(default_factory=dict)
    min_day_hours: float = DEFAULT_MIN_DAY_HOURS
    suspected_day_threshold: int = DEFAULT_SUSPECTED_DAY_THRESHOLD

    @property
    def fishing_days_observed(self) -> set[date]:
        return {
            d for d, h in self.fishing_hours_by_date.items() if h >= self.min_day_hours
        }

    @property
    def total_fishing_hours(self) -> float:
        return sum(self.fishing_hours_by_date.values())

    def tier(self) -> Tier:
        return classify_vessel(
            bool(self.registry_matches),
            self.self_id_fishing,
            len(self.fishing_days_observed),
            self.suspected_day_threshold,
        )


def update_on_effort(profile: VesselProfile, segment: FishingSegment) -> VesselProfile:
    """Fold a fishing segment's per-date hours into the profile."""
    if segment.mmsi != profile.mmsi:
        raise MmsiMismatch(f"segment {segment.mmsi} vs profile {profile.mmsi}")
    for day, hours in prorate_hours_by_date(segment.t_start, segment.t_end).items():
        profile.fishing_hours_by_date[day] = (
            profile.fishing_hours_by_date.get(day, 0.0) + hours
        )
    return profile


class ProfileStore:
    """All vessel profiles for a run; updates serialized per MMSI by callers."""

    def __init__(
        self,
        suspected_day_threshold: int = DEFAULT_SUSPECTED_DAY_THRESHOLD,
        min_day_hours: float = DEFAULT_MIN_DAY_HOURS,
    ):
        self.suspected_day_threshold = suspected_day_threshold
        self.min_day_hours = min_day_hours
        self._profiles: dict[int, VesselProfile] = {}

    def get_or_create(self, mmsi: int) -> VesselProfile:
        profile = self._profiles.get(mmsi)
        if profile is None:
            profile = self._profiles[mmsi] = VesselProfile(
                mmsi,
                min_day_hours=self.min_day_hours,
                suspected_day_threshold=self.suspected_day_threshold,
            )
        return profile

    def get(self, mmsi: int) -> VesselProfile | None:
        return self._profiles.get(mmsi)

    def apply_registry(self, index: RegistryIndex) -> None:
        for mmsi, entries in index.by_mmsi.items():
            self.get_or_create(mmsi).registry_matches.extend(entries)

    def apply_static(self, report: StaticReport) -> None:
        profile = self.get_or_create(report.mmsi)
        if report.self_id_fishing:
            profile.self_id_fishing = True
        if report.vessel_name:
            profile.latest_name = report.vessel_name
        if report.callsign:
            profile.latest_callsign = report.callsign

    def apply_effort(self, segment: FishingSegment) -> None:
        update_on_effort(self.get_or_create(segment.mmsi), segment)

    def profiles(self) -> list[VesselProfile]:
        return [self._profiles[m] for m in sorted(self._profiles)]

    def tier_counts(self) -> dict[str, int]:
        counts = {t.value: 0 for t in Tier}
        for profile in self._profiles.values():
            counts[profile.tier().value] += 1
        return counts
