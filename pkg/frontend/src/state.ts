// View state and its pure transitions. Rendering is a function of
// (API responses, ViewState), so every transition here is a plain
// old function returning a new state.

import type { Alert, SummaryResponse, Tier, Zone } from "./types.js";

export interface Bbox {
  minLon: number;
  minLat: number;
  maxLon: number;
  maxLat: number;
}

export interface ViewState {
  bbox: Bbox;
  day: string; // YYYY-MM-DD shown on the heatmap
  dataRange: [string, string];
  tiers: Tier[];
  selectedMmsi: string | null;
  selectedZone: string | null;
}

export const DEFAULT_TIERS: Tier[] = ["known", "likely", "suspected"];

function normalized(b: Bbox): Bbox {
  const minLon = Math.min(b.minLon, b.maxLon);
  const maxLon = Math.max(b.minLon, b.maxLon);
  const minLat = Math.min(b.minLat, b.maxLat);
  const maxLat = Math.max(b.minLat, b.maxLat);
  return {
    minLon,
    maxLon: maxLon > minLon ? maxLon : minLon + 0.01,
    minLat,
    maxLat: maxLat > minLat ? maxLat : minLat + 0.01,
  };
}

export function zonesBbox(zones: Zone[], padDeg = 1.5): Bbox | null {
  const lons: number[] = [];
  const lats: number[] = [];
  for (const zone of zones) {
    for (const [lon, lat] of zone.outer) {
      lons.push(lon);
      lats.push(lat);
    }
  }
  if (!lons.length) return null;
  return normalized({
    minLon: Math.min(...lons) - padDeg,
    maxLon: Math.max(...lons) + padDeg,
    minLat: Math.min(...lats) - padDeg,
    maxLat: Math.max(...lats) + padDeg,
  });
}

export function initView(summary: SummaryResponse, zones: Zone[]): ViewState {
  const range = summary.data_range ?? ["2000-01-01", "2000-01-01"];
  return {
    bbox: zonesBbox(zones) ?? { minLon: -180, minLat: -90, maxLon: 180, maxLat: 90 },
    day: range[0],
    dataRange: range,
    tiers: [...DEFAULT_TIERS],
    selectedMmsi: null,
    selectedZone: null,
  };
}

export function clampDay(view: ViewState, day: string): string {
  const [lo, hi] = view.dataRange;
  if (day < lo) return lo;
  if (day > hi) return hi;
  return day;
}

export function setDay(view: ViewState, day: string): ViewState {
  return { ...view, day: clampDay(view, day) };
}

export function toggleTier(view: ViewState, tier: Tier): ViewState {
  const tiers = view.tiers.includes(tier)
    ? view.tiers.filter((t) => t !== tier)
    : [...view.tiers, tier];
  return { ...view, tiers };
}

export function selectVessel(view: ViewState, mmsi: string | null): ViewState {
  return { ...view, selectedMmsi: mmsi };
}

export function selectZone(view: ViewState, zoneId: string | null): ViewState {
  return { ...view, selectedZone: zoneId };
}

export function recenter(view: ViewState, lon: number, lat: number): ViewState {
  const halfW = (view.bbox.maxLon - view.bbox.minLon) / 2;
  const halfH = (view.bbox.maxLat - view.bbox.minLat) / 2;
  return {
    ...view,
    bbox: normalized({
      minLon: lon - halfW,
      maxLon: lon + halfW,
      minLat: lat - halfH,
      maxLat: lat + halfH,
    }),
  };
}

export function zoom(view: ViewState, factor: number): ViewState {
  const cx = (view.bbox.minLon + view.bbox.maxLon) / 2;
  const cy = (view.bbox.minLat + view.bbox.maxLat) / 2;
  const halfW = ((view.bbox.maxLon - view.bbox.minLon) / 2) * factor;
  const halfH = ((view.bbox.maxLat - view.bbox.minLat) / 2) * factor;
  return {
    ...view,
    bbox: normalized({
      minLon: cx - halfW,
      maxLon: cx + halfW,
      minLat: cy - halfH,
      maxLat: cy + halfH,
    }),
  };
}

export function pan(view: ViewState, dLonFrac: number, dLatFrac: number): ViewState {
  const w = view.bbox.maxLon - view.bbox.minLon;
  const h = view.bbox.maxLat - view.bbox.minLat;
  return {
    ...view,
    bbox: normalized({
      minLon: view.bbox.minLon + dLonFrac * w,
      maxLon: view.bbox.maxLon + dLonFrac * w,
      minLat: view.bbox.minLat + dLatFrac * h,
      maxLat: view.bbox.maxLat + dLatFrac * h,
    }),
  };
}

/** Alert row click: recenter the map on the event and select the vessel. */
export function applyAlertClick(view: ViewState, alert: Alert): ViewState {
  const centered = recenter(view, alert.lon, alert.lat);
  return {
    ...centered,
    selectedMmsi: alert.mmsi,
    selectedZone: alert.zone_id,
    day: clampDay(view, alert.t_start.slice(0, 10)),
  };
}

/** Day ticks for the slider, inclusive. */
export function dayRange(range: [string, string]): string[] {
  const out: string[] = [];
  const end = new Date(range[1] + "T00:00:00Z").getTime();
  let t = new Date(range[0] + "T00:00:00Z").getTime();
  while (t <= end) {
    out.push(new Date(t).toISOString().slice(0, 10));
    t += 86_400_000;
  }
  return out;
}
