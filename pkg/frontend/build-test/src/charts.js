// Chart geometry for the comparison view.
//
// Every series plotted here is lifted verbatim from the ComparisonPayload;
// nothing is recomputed, smoothed, or rescaled beyond the linear map onto
// pixel coordinates, so what the service measured is what renders.
const ORIGINAL_COLOR = "#1f77b4";
const NOISY_COLOR = "#d62728";
export function compareCharts(payload) {
    const charts = [];
    const pair = (title, original, noisy, pick) => {
        if (!original || !noisy)
            return;
        charts.push({
            title,
            series: [
                { name: "original", times: original.times, values: pick(original), color: ORIGINAL_COLOR },
                { name: "noisy", times: noisy.times, values: pick(noisy), color: NOISY_COLOR },
            ],
        });
    };
    pair("audio RMS", payload.original.audio, payload.noisy.audio, (s) => s.rms);
    pair("audio spectral centroid (Hz)", payload.original.audio, payload.noisy.audio, (s) => s.centroid);
    pair("video mean luma", payload.original.video, payload.noisy.video, (s) => s.luma);
    pair("video edge energy", payload.original.video, payload.noisy.video, (s) => s.edge);
    return charts;
}
export const DEFAULT_BOX = { width: 560, height: 150, pad: 28 };
export function chartDomain(chart) {
    let tMax = 0;
    let yMax = 0;
    let yMin = 0;
    for (const s of chart.series) {
        for (const t of s.times)
            tMax = Math.max(tMax, t);
        for (const v of s.values) {
            yMax = Math.max(yMax, v);
            yMin = Math.min(yMin, v);
        }
    }
    return { tMax: tMax || 1, yMin, yMax: yMax > yMin ? yMax : yMin + 1 };
}
/** Map one series into SVG polyline points ("x,y x,y ..."). */
export function polylinePoints(series, box, domain) {
    const innerW = box.width - 2 * box.pad;
    const innerH = box.height - 2 * box.pad;
    const coords = [];
    for (let i = 0; i < series.times.length; i++) {
        const x = box.pad + (series.times[i] / domain.tMax) * innerW;
        const y = box.height - box.pad - ((series.values[i] - domain.yMin) / (domain.yMax - domain.yMin)) * innerH;
        coords.push(`${x.toFixed(2)},${y.toFixed(2)}`);
    }
    return coords.join(" ");
}
export function chartSvg(chart, box = DEFAULT_BOX) {
    const domain = chartDomain(chart);
    const baseline = box.height - box.pad;
    const lines = chart.series.map((s) => `<polyline fill="none" stroke="${s.color}" stroke-width="1.5" data-series="${s.name}" ` +
        `points="${polylinePoints(s, box, domain)}"/>`);
    const legend = chart.series.map((s, i) => `<text x="${box.width - box.pad - 110}" y="${box.pad + 14 * i}" fill="${s.color}" ` +
        `font-size="11">${s.name}</text>`);
    return [
        `<svg xmlns="http://www.w3.org/2000/svg" width="${box.width}" height="${box.height}" ` +
            `viewBox="0 0 ${box.width} ${box.height}">`,
        `<text x="${box.pad}" y="16" font-size="12">${chart.title}</text>`,
        `<line x1="${box.pad}" y1="${baseline}" x2="${box.width - box.pad}" y2="${baseline}" stroke="#444"/>`,
        `<line x1="${box.pad}" y1="${box.pad}" x2="${box.pad}" y2="${baseline}" stroke="#444"/>`,
        ...lines,
        ...legend,
        `</svg>`,
    ].join("");
}
