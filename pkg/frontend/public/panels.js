// Sidebar content builders: API objects in, display rows out. Values are
// passed through verbatim (formatting only), so each number on screen is
// some API field.
export function fmtHours(hours) {
    return hours.toFixed(2);
}
export function vesselRows(vessels) {
    return vessels.map((v) => ({
        mmsi: v.mmsi,
        tier: v.tier,
        name: v.name || v.mmsi,
        fishingHours: v.fishing_hours,
        label: `${v.name || v.mmsi} [${v.tier}] ${fmtHours(v.fishing_hours)} h`,
    }));
}
export function vesselCard(v) {
    const gear = v.registry.map((e) => e.gear_type).filter(Boolean).join(", ");
    return [
        { label: "mmsi", value: v.mmsi, raw: v.mmsi },
        { label: "tier", value: v.tier, raw: v.tier },
        { label: "name", value: v.name || "(unknown)", raw: v.name },
        { label: "callsign", value: v.callsign || "(none)", raw: v.callsign },
        { label: "gear", value: gear || "(unregistered)", raw: gear },
        { label: "fishing hours", value: fmtHours(v.fishing_hours), raw: v.fishing_hours },
        { label: "fishing days", value: String(v.fishing_days), raw: v.fishing_days },
        { label: "track points", value: String(v.point_count), raw: v.point_count },
    ];
}
export function unknownVesselCard(mmsi) {
    return [
        { label: "mmsi", value: mmsi, raw: mmsi },
        { label: "status", value: "unknown vessel", raw: null },
    ];
}
export function alertRows(alerts) {
    return alerts.map((a) => ({
        mmsi: a.mmsi,
        zoneId: a.zone_id,
        day: a.t_start.slice(0, 10),
        hoursInside: a.hours_inside,
        label: `${a.t_start.slice(0, 10)} ${a.mmsi} fished ${fmtHours(a.hours_inside)} h inside ${a.zone_id}`,
        alert: a,
    }));
}
