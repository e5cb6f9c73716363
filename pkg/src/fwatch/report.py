"""Figure rendering for pipeline runs.

Writes PNGs next to the delimited artifacts: a gridded-effort heatmap with
zone outlines, and the monthly inside/outside effort-shift chart around a
closure date. Rendering is pure Agg with pinned metadata so repeat runs
stay byte-identical.
"""

from __future__ import annotations

from datetime import date
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.colors import LogNorm
from matplotlib.patches import Rectangle

from .grid import EffortGrid
from .zones import MonthRow, Zone

_SAVE_KW = dict(dpi=120, metadata={"Software": None})


def render_effort_map(grid: EffortGrid, zones: list[Zone], path: str | Path) -> None:
    cells = list(grid.cells())
    fig, ax = plt.subplots(figsize=(8, 6))
    res = grid.spec.resolution_deg
    if cells:
        by_cell: dict[tuple[int, int], float] = {}
        for c in cells:
            key = (c.lat_index, c.lon_index)
            by_cell[key] = by_cell.get(key, 0.0) + c.hours
        vmax = max(by_cell.values())
        norm = LogNorm(vmin=min(by_cell.values()), vmax=vmax) if vmax > 0 else None
        cmap = plt.get_cmap("inferno")
        for (la, lo), hours in sorted(by_cell.items()):
            lat0, lon0 = grid.spec.cell_origin(la, lo)
            ax.add_patch(
                Rectangle((lon0, lat0), res, res, facecolor=cmap(norm(hours)), lw=0)
            )
        sm = plt.cm.ScalarMappable(norm=norm, cmap=cmap)
        fig.colorbar(sm, ax=ax, label="fishing hours")
        lats = [grid.spec.cell_origin(la, lo)[0] for la, lo in by_cell]
        lons = [grid.spec.cell_origin(la, lo)[1] for la, lo in by_cell]
    else:
        lats, lons = [], []
    for zone in zones:
        xs = [lon for lon, _ in zone.outer]
        ys = [lat for _, lat in zone.outer]
        ax.plot(xs, ys, color="tab:cyan", lw=1.5, label=zone.zone_id)
        lats += ys
        lons += xs
    if lats:
        pad = max(2 * res, 0.5)
        ax.set_xlim(min(lons) - pad, max(lons) + pad + res)
        ax.set_ylim(min(lats) - pad, max(lats) + pad + res)
    ax.set_xlabel("longitude")
    ax.set_ylabel("latitude")
    ax.set_title("apparent fishing effort")
    if zones:
        ax.legend(loc="upper right", fontsize=8)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def render_effort_shift(
    rows: list[MonthRow], closure_start: date | None, path: str | Path
) -> None:
    fig, ax = plt.subplots(figsize=(8, 4))
    if rows:
        xs = range(len(rows))
        width = 0.4
        ax.bar(
            [x - width / 2 for x in xs],
            [r.inside_hours for r in rows],
            width,
            label="inside zone",
            color="tab:red",
        )
        ax.bar(
            [x + width / 2 for x in xs],
            [r.outside_hours for r in rows],
            width,
            label="outside zone",
            color="tab:blue",
        )
        ax.set_xticks(list(xs))
        ax.set_xticklabels([r.month for r in rows], rotation=45, ha="right")
        if closure_start is not None:
            closure_month = f"{closure_start.year:04d}-{closure_start.month:02d}"
            for x, r in zip(xs, rows):
                if r.month == closure_month:
                    ax.axvline(x - 0.5, color="black", ls="--", lw=1)
                    ax.text(x - 0.5, ax.get_ylim()[1], " closure", va="top", fontsize=8)
                    break
        ax.legend()
    ax.set_ylabel("fishing hours")
    ax.set_title("monthly effort inside vs outside zone")
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
