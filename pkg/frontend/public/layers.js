// Pure layer builders: (API responses, ViewState) -> drawable primitives.
// app.ts only paints these; tests assert on them directly, which is what
// makes "replaying the same script renders identical layers" checkable.
import { heatColor } from "./scale.js";
export function project(frame, lon, lat) {
    const { bbox } = frame;
    const x = ((lon - bbox.minLon) / (bbox.maxLon - bbox.minLon)) * frame.width;
    const y = ((bbox.maxLat - lat) / (bbox.maxLat - bbox.minLat)) * frame.height;
    return [x, y];
}
export function heatmapLayer(cells, resolutionDeg, frame) {
    const visible = cells.filter((c) => c.lon_min + resolutionDeg >= frame.bbox.minLon &&
        c.lon_min <= frame.bbox.maxLon &&
        c.lat_min + resolutionDeg >= frame.bbox.minLat &&
        c.lat_min <= frame.bbox.maxLat);
    const maxHours = visible.reduce((m, c) => Math.max(m, c.hours), 0);
    const rects = visible.map((c) => {
        const [x0, y0] = project(frame, c.lon_min, c.lat_min + resolutionDeg);
        const [x1, y1] = project(frame, c.lon_min + resolutionDeg, c.lat_min);
        return {
            x: x0,
            y: y0,
            w: x1 - x0,
            h: y1 - y0,
            color: heatColor(c.hours, maxHours),
            hours: c.hours,
            date: c.date,
            latMin: c.lat_min,
            lonMin: c.lon_min,
        };
    });
    return { rects, maxHours };
}
export function zoneLayer(zones, frame, selectedZone) {
    return zones.map((zone) => ({
        id: zone.id,
        name: zone.name,
        closureStart: zone.closure_start,
        path: zone.outer.map(([lon, lat]) => project(frame, lon, lat)),
        holes: zone.holes.map((ring) => ring.map(([lon, lat]) => project(frame, lon, lat))),
        selected: zone.id === selectedZone,
    }));
}
/** Polyline split into runs colored by each leading point's fishing state. */
export function trackLayer(points, frame) {
    const segments = [];
    let current = null;
    for (let i = 0; i < points.length; i++) {
        const p = points[i];
        const xy = project(frame, p.lon, p.lat);
        if (current === null || current.fishing !== p.fishing) {
            const path = current
                ? [current.path[current.path.length - 1], xy]
                : [xy];
            current = { fishing: p.fishing, path };
            segments.push(current);
        }
        else {
            current.path.push(xy);
        }
    }
    return segments.filter((s) => s.path.length > 1);
}
export function vesselMarkers(vessels, frame, selectedMmsi) {
    const out = [];
    for (const v of vessels) {
        if (!v.last_position)
            continue;
        const [x, y] = project(frame, v.last_position.lon, v.last_position.lat);
        out.push({ mmsi: v.mmsi, tier: v.tier, x, y, selected: v.mmsi === selectedMmsi });
    }
    return out;
}
