import assert from "node:assert/strict";
import { test } from "node:test";
import { DEFAULT_BOX, chartDomain, chartSvg, compareCharts, polylinePoints } from "../src/charts.js";
// A full-clip mute session: the service reports exactly zero RMS per window.
function mutePayload() {
    const times = [0.025, 0.075, 0.125, 0.175];
    return {
        generation: 1,
        predictor: null,
        denoiser: null,
        original: {
            duration_s: 0.2,
            audio: { window_s: 0.05, times, rms: [0.4, 0.38, 0.41, 0.39], centroid: [700, 710, 690, 705] },
            video: { times: [0.0, 0.1], luma: [90, 91], edge: [12, 11] },
            text: ["hello", "world"],
        },
        noisy: {
            duration_s: 0.2,
            audio: { window_s: 0.05, times, rms: [0.0, 0.0, 0.0, 0.0], centroid: [0, 0, 0, 0] },
            video: { times: [0.0, 0.1], luma: [90, 91], edge: [12, 11] },
            text: ["hello", "world"],
        },
        predictions: { original: 0.8, noisy: -0.1 },
    };
}
test("chart data is lifted verbatim from the payload", () => {
    const payload = mutePayload();
    const charts = compareCharts(payload);
    assert.deepEqual(charts.map((c) => c.title), ["audio RMS", "audio spectral centroid (Hz)", "video mean luma", "video edge energy"]);
    const rms = charts[0];
    assert.equal(rms.series[0].name, "original");
    assert.equal(rms.series[1].name, "noisy");
    // same arrays, not copies or recomputations
    assert.equal(rms.series[1].values, payload.noisy.audio.rms);
    assert.equal(rms.series[0].values, payload.original.audio.rms);
});
test("full-clip mute renders a flat zero RMS trace", () => {
    const charts = compareCharts(mutePayload());
    const rms = charts[0];
    const domain = chartDomain(rms);
    const points = polylinePoints(rms.series[1], DEFAULT_BOX, domain);
    const baseline = (DEFAULT_BOX.height - DEFAULT_BOX.pad).toFixed(2);
    const ys = points.split(" ").map((p) => p.split(",")[1]);
    assert.ok(ys.length === 4);
    assert.ok(ys.every((y) => y === baseline), `expected flat ${baseline}, got ${ys}`);
    // while the original trace stays strictly above the axis
    const orig = polylinePoints(rms.series[0], DEFAULT_BOX, domain)
        .split(" ").map((p) => Number(p.split(",")[1]));
    assert.ok(orig.every((y) => y < Number(baseline)));
});
test("svg markup carries one polyline per series plus a legend", () => {
    const charts = compareCharts(mutePayload());
    const svg = chartSvg(charts[0]);
    assert.equal((svg.match(/<polyline /g) ?? []).length, 2);
    assert.match(svg, /data-series="original"/);
    assert.match(svg, /data-series="noisy"/);
    assert.match(svg, />original<\/text>/);
    assert.match(svg, />noisy<\/text>/);
});
test("audio-only payloads omit video charts", () => {
    const payload = mutePayload();
    payload.original.video = null;
    payload.noisy.video = null;
    const charts = compareCharts(payload);
    assert.deepEqual(charts.map((c) => c.title), ["audio RMS", "audio spectral centroid (Hz)"]);
});
