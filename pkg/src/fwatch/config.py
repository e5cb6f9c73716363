"""Run configuration: one flat key = value file covering every threshold.

Example:

    # fwatch.toml
    gap_threshold_hours = 12
    spike_limit_kn = 50
    v_min_kn = 0.5
    v_max_kn = 5.5
    min_duration_min = 15
    bridge_tolerance_min = 5
    suspected_day_threshold = 3
    suspected_min_day_hours = 1.0
    resolution_deg = 0.1
    fragment_timeout_s = 60
    cors_origin = "*"
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from datetime import timedelta
from pathlib import Path

from .effort import EffortParams
from .grid import GridSpec


class BadConfig(ValueError):
    pass


@dataclass(slots=True)
class PipelineConfig:
    gap_threshold_hours: float = 12.0
    spike_limit_kn: float = 50.0
    v_min_kn: float = 0.5
    v_max_kn: float = 5.5
    min_duration_min: float = 15.0
    bridge_tolerance_min: float = 5.0
    suspected_day_threshold: int = 3
    suspected_min_day_hours: float = 1.0
    resolution_deg: float = 0.1
    fragment_timeout_s: float = 60.0
    cors_origin: str = "*"

    @property
    def gap_threshold(self) -> timedelta:
        return timedelta(hours=self.gap_threshold_hours)

    def effort_params(self) -> EffortParams:
        return EffortParams(
            v_min_kn=self.v_min_kn,
            v_max_kn=self.v_max_kn,
            min_duration_min=self.min_duration_min,
            bridge_tolerance_min=self.bridge_tolerance_min,
        )

    def grid_spec(self) -> GridSpec:
        try:
            return GridSpec(resolution_deg=self.resolution_deg)
        except ValueError as exc:
            raise BadConfig(str(exc)) from None


def load_config(path: str | Path | None) -> PipelineConfig:
    """Parse the key = value file; unknown keys and bad values are errors."""
    config = PipelineConfig()
    if path is None:
        config.grid_spec()
        return config
    field_types = {f.name: f.type for f in fields(PipelineConfig)}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise BadConfig(f"cannot read config: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.partition("#")[0].strip()
        if not sep or not key:
            raise BadConfig(f"{path}:{lineno}: expected 'key = value'")
        if key not in field_types:
            raise BadConfig(f"{path}:{lineno}: unknown key {key!r}")
        if value.startswith('"') and value.endswith('"') and len(value) >= 2:
            value = value[1:-1]
        kind = field_types[key]
        try:
            if kind == "int":
                setattr(config, key, int(value))
            elif kind == "float":
                setattr(config, key, float(value))
            else:
                setattr(config, key, value)
        except ValueError:
            raise BadConfig(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    config.grid_spec()  # validate resolution divides the globe
    return config
