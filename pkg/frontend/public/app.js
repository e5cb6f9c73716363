// Browser wiring: owns the canvas, the sidebar DOM, and the fetch loop.
// All state transitions and drawable layers come from the pure modules.
import { ApiClient, ApiError } from "./api.js";
import { heatmapLayer, trackLayer, vesselMarkers, zoneLayer, } from "./layers.js";
import { alertRows, unknownVesselCard, vesselCard, vesselRows } from "./panels.js";
import { applyAlertClick, dayRange, initView, pan, selectVessel, setDay, toggleTier, zoom, } from "./state.js";
import { legendEntries } from "./scale.js";
const TIERS = ["known", "likely", "suspected", "unclassified"];
function el(id) {
    const node = document.getElementById(id);
    if (!node)
        throw new Error(`missing #${id}`);
    return node;
}
async function loadConfig() {
    try {
        const resp = await fetch("./config.json");
        if (resp.ok)
            return (await resp.json());
    }
    catch {
        // fall through to same-origin default
    }
    return { apiBase: "" };
}
class App {
    constructor(api, summary, zones, alerts) {
        this.api = api;
        this.summary = summary;
        this.zones = zones;
        this.alerts = alerts;
        this.lastGrid = null;
        this.lastTrack = null;
        this.canvas = el("map");
        this.vessels = { snapshot_id: "", vessels: [] };
        this.view = initView(summary, zones.zones);
        this.days = dayRange(this.view.dataRange);
    }
    banner(text) {
        const node = el("banner");
        node.textContent = text ?? "";
        node.classList.toggle("visible", text !== null);
    }
    frame() {
        return { width: this.canvas.width, height: this.canvas.height, bbox: this.view.bbox };
    }
    async apply(next) {
        this.view = next;
        await this.refresh();
    }
    async refresh() {
        const v = this.view;
        const bboxKey = [v.bbox.minLon, v.bbox.minLat, v.bbox.maxLon, v.bbox.maxLat]
            .map((x) => x.toFixed(4))
            .join(",");
        try {
            const grid = await this.api.get("grid", `${bboxKey}|${v.day}`, `/v1/effort/grid?bbox=${bboxKey}&from=${v.day}&to=${v.day}`);
            if (grid)
                this.lastGrid = grid;
            if (v.selectedMmsi) {
                const track = await this.api.get("track", v.selectedMmsi, `/v1/vessels/${v.selectedMmsi}/track`);
                if (track)
                    this.lastTrack = track;
            }
            else {
                this.lastTrack = null;
            }
            await this.refreshVessels();
            this.banner(null);
        }
        catch (err) {
            // keep the last good layers on screen
            this.banner(err instanceof ApiError ? `API error: ${err.message}` : String(err));
        }
        this.draw();
        this.drawPanels();
    }
    async refreshVessels() {
        const tierKey = [...this.view.tiers].sort().join(",") || "none";
        if (tierKey === "none") {
            this.vessels = { snapshot_id: this.summary.snapshot_id, vessels: [] };
            return;
        }
        const got = await this.api.get("vessels", tierKey, `/v1/vessels?tier=${tierKey}`);
        if (got)
            this.vessels = got;
    }
    draw() {
        const ctx = this.canvas.getContext("2d");
        if (!ctx)
            return;
        const frame = this.frame();
        ctx.fillStyle = "#0b1621";
        ctx.fillRect(0, 0, frame.width, frame.height);
        let heat = { rects: [], maxHours: 0 };
        if (this.lastGrid) {
            heat = heatmapLayer(this.lastGrid.cells, this.lastGrid.resolution_deg, frame);
            for (const rect of heat.rects) {
                ctx.fillStyle = rect.color;
                ctx.fillRect(rect.x, rect.y, Math.max(rect.w, 1.5), Math.max(rect.h, 1.5));
            }
        }
        this.drawLegend(heat);
        for (const zonePath of zoneLayer(this.zones.zones, frame, this.view.selectedZone)) {
            this.strokePath(ctx, zonePath.path, zonePath.selected ? "#7fe0ff" : "#3fa7c7", 2);
            for (const hole of zonePath.holes)
                this.strokePath(ctx, hole, "#3fa7c7", 1);
            const [hx, hy] = zonePath.path[0];
            ctx.fillStyle = "#9fdcee";
            ctx.font = "12px sans-serif";
            ctx.fillText(zonePath.closureStart ? `${zonePath.name} (closed ${zonePath.closureStart})` : zonePath.name, hx + 4, hy - 4);
        }
        if (this.lastTrack) {
            for (const seg of trackLayer(this.lastTrack.points, frame)) {
                this.strokePath(ctx, seg.path, seg.fishing ? "#ff5c5c" : "#8fa8bf", seg.fishing ? 2.5 : 1.2);
            }
        }
        for (const marker of vesselMarkers(this.vessels.vessels, frame, this.view.selectedMmsi)) {
            ctx.beginPath();
            ctx.arc(marker.x, marker.y, marker.selected ? 6 : 3.5, 0, Math.PI * 2);
            ctx.fillStyle =
                marker.tier === "known" ? "#62d96b" : marker.tier === "likely" ? "#ffd24d" : "#ff8a3d";
            ctx.fill();
            if (marker.selected) {
                ctx.strokeStyle = "#ffffff";
                ctx.stroke();
            }
        }
    }
    strokePath(ctx, path, color, width) {
        if (path.length < 2)
            return;
        ctx.beginPath();
        ctx.moveTo(path[0][0], path[0][1]);
        for (let i = 1; i < path.length; i++)
            ctx.lineTo(path[i][0], path[i][1]);
        ctx.strokeStyle = color;
        ctx.lineWidth = width;
        ctx.stroke();
    }
    drawLegend(heat) {
        const legend = el("legend");
        legend.innerHTML = "";
        legend.classList.toggle("visible", heat.rects.length > 0);
        if (!heat.rects.length)
            return;
        const title = document.createElement("span");
        title.textContent = "fishing hours:";
        legend.appendChild(title);
        for (const entry of legendEntries(heat.maxHours)) {
            const swatch = document.createElement("span");
            swatch.className = "swatch";
            swatch.style.background = entry.color;
            swatch.title = `${entry.hours.toFixed(2)} h`;
            const label = document.createElement("span");
            label.textContent = entry.hours.toFixed(1);
            legend.appendChild(swatch);
            legend.appendChild(label);
        }
    }
    drawPanels() {
        const list = el("vessel-list");
        list.innerHTML = "";
        for (const row of vesselRows(this.vessels.vessels)) {
            const item = document.createElement("li");
            item.textContent = row.label;
            item.dataset.mmsi = row.mmsi;
            item.classList.toggle("selected", row.mmsi === this.view.selectedMmsi);
            item.onclick = () => void this.apply(selectVessel(this.view, row.mmsi));
            list.appendChild(item);
        }
        const card = el("vessel-card");
        card.innerHTML = "";
        const selected = this.vessels.vessels.find((v) => v.mmsi === this.view.selectedMmsi);
        const fields = selected
            ? vesselCard(selected)
            : this.view.selectedMmsi
                ? unknownVesselCard(this.view.selectedMmsi)
                : [];
        for (const field of fields) {
            const dt = document.createElement("dt");
            dt.textContent = field.label;
            const dd = document.createElement("dd");
            dd.textContent = field.value;
            card.appendChild(dt);
            card.appendChild(dd);
        }
        const alertsNode = el("alert-list");
        alertsNode.innerHTML = "";
        for (const row of alertRows(this.alerts.alerts)) {
            const item = document.createElement("li");
            item.textContent = row.label;
            item.onclick = () => void this.apply(applyAlertClick(this.view, row.alert));
            alertsNode.appendChild(item);
        }
        el("day-label").textContent = this.view.day;
        el("snapshot-label").textContent =
            `snapshot ${this.summary.snapshot_id} | built ${this.summary.built_at}`;
    }
    wireControls() {
        const slider = el("day-slider");
        slider.min = "0";
        slider.max = String(this.days.length - 1);
        slider.value = "0";
        slider.oninput = () => {
            const day = this.days[Number(slider.value)] ?? this.view.day;
            void this.apply(setDay(this.view, day));
        };
        const filters = el("tier-filters");
        for (const tier of TIERS) {
            const label = document.createElement("label");
            const box = document.createElement("input");
            box.type = "checkbox";
            box.checked = this.view.tiers.includes(tier);
            box.onchange = () => void this.apply(toggleTier(this.view, tier));
            label.appendChild(box);
            label.appendChild(document.createTextNode(tier));
            filters.appendChild(label);
        }
        el("zoom-in").onclick = () => void this.apply(zoom(this.view, 0.6));
        el("zoom-out").onclick = () => void this.apply(zoom(this.view, 1.6));
        let dragging = null;
        this.canvas.onmousedown = (ev) => (dragging = { x: ev.clientX, y: ev.clientY });
        window.addEventListener("mouseup", () => (dragging = null));
        this.canvas.onmousemove = (ev) => {
            if (!dragging)
                return;
            const dx = (dragging.x - ev.clientX) / this.canvas.width;
            const dy = (ev.clientY - dragging.y) / this.canvas.height;
            dragging = { x: ev.clientX, y: ev.clientY };
            void this.apply(pan(this.view, dx, dy));
        };
    }
}
async function boot() {
    const config = await loadConfig();
    const api = new ApiClient(config.apiBase, (url) => fetch(url));
    const summary = await api.get("summary", "s", "/v1/summary");
    const zones = await api.get("zones", "z", "/v1/zones");
    const alerts = await api.get("alerts", "a", "/v1/alerts");
    if (!summary || !zones || !alerts)
        throw new Error("initial snapshot fetch failed");
    const app = new App(api, summary, zones, alerts);
    app.wireControls();
    await app.refresh();
}
boot().catch((err) => {
    const banner = document.getElementById("banner");
    if (banner) {
        banner.textContent = `failed to start: ${err}`;
        banner.classList.add("visible");
    }
});
