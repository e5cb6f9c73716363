// Shapes of the /v1 API responses. The UI never computes effort or
// classification; everything on screen comes from these fields.

export type Tier = "known" | "likely" | "suspected" | "unclassified";

export interface Vessel {
  mmsi: string;
  tier: Tier;
  name: string;
  callsign: string;
  self_id_fishing: boolean;
  registry: RegistryEntry[];
  fishing_days: number;
  fishing_hours: number;
  point_count: number;
  last_position: { t: string; lat: number; lon: number } | null;
}

export interface RegistryEntry {
  imo: number | null;
  callsign: string;
  name: string;
  gear_type: string;
  source_list: string;
}

export interface VesselsResponse {
  snapshot_id: string;
  vessels: Vessel[];
}

export interface TrackPoint {
  t: string;
  lat: number;
  lon: number;
  sog_kn: number | null;
  implied_kn: number | null;
  fishing: boolean;
}

export interface TrackResponse {
  snapshot_id: string;
  mmsi: string;
  points: TrackPoint[];
}

export interface GridCell {
  date: string;
  lat_index: number;
  lon_index: number;
  lat_min: number;
  lon_min: number;
  hours: number;
}

export interface GridResponse {
  snapshot_id: string;
  resolution_deg: number;
  cells: GridCell[];
}

export interface Zone {
  id: string;
  name: string;
  closure_start: string | null;
  outer: [number, number][]; // [lon, lat], closed ring
  holes: [number, number][][];
}

export interface ZonesResponse {
  snapshot_id: string;
  zones: Zone[];
}

export interface Alert {
  mmsi: string;
  zone_id: string;
  t_start: string;
  t_end: string;
  lat: number;
  lon: number;
  hours_inside: number;
}

export interface AlertsResponse {
  snapshot_id: string;
  alerts: Alert[];
}

export interface SummaryResponse {
  snapshot_id: string;
  built_at: string;
  data_range: [string, string] | null;
  tiers: Record<Tier, number>;
  alerts: number;
  vessels: number;
  report: { month: string; inside_hours: number; outside_hours: number }[];
}
