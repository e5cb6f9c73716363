// Log color scale for effort hours.
const STOPS = [
    [0.0, [20, 11, 52]],
    [0.25, [92, 20, 124]],
    [0.5, [183, 55, 121]],
    [0.75, [247, 125, 67]],
    [1.0, [252, 254, 164]],
];
/** Normalize hours to (0, 1] against the layer max, log-compressed. */
export function logT(hours, maxHours) {
    if (hours <= 0 || maxHours <= 0)
        return 0;
    const t = Math.log1p(hours) / Math.log1p(maxHours);
    return Math.min(1, Math.max(t, 0.05)); // keep tiny cells visible
}
export function rampColor(t) {
    const x = Math.min(1, Math.max(0, t));
    for (let i = 1; i < STOPS.length; i++) {
        const [t1, c1] = STOPS[i];
        const [t0, c0] = STOPS[i - 1];
        if (x <= t1) {
            const f = (x - t0) / (t1 - t0);
            const rgb = c0.map((v, k) => Math.round(v + f * (c1[k] - v)));
            return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
        }
    }
    return "rgb(252,254,164)";
}
export function heatColor(hours, maxHours) {
    return rampColor(logT(hours, maxHours));
}
/** A handful of legend swatches spanning (0, max], log-spaced. */
export function legendEntries(maxHours, n = 5) {
    if (maxHours <= 0)
        return [];
    const out = [];
    for (let i = 1; i <= n; i++) {
        const hours = Math.expm1((Math.log1p(maxHours) * i) / n);
        out.push({ hours, color: heatColor(hours, maxHours) });
    }
    return out;
}
