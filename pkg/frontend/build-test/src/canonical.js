// Canonical noise-spec JSON, byte-compatible with the engine's serializer.
//
// The engine writes specs with a fixed key order, compact separators, and
// Python number formatting: seconds/intensity fields are floats (integral
// values carry a trailing ".0"), seeds and index-unit ranges are integers.
// Everything the editor produces round-trips through the service config
// parser unchanged, so the UI never owns noise semantics.
import { MODALITY_ORDER } from "./types.js";
export function formatFloat(x) {
    if (!Number.isFinite(x)) {
        throw new Error(`cannot serialize non-finite number ${x}`);
    }
    if (Number.isInteger(x) && Math.abs(x) < 1e16) {
        return `${x}.0`;
    }
    // Shortest round-trip decimal, identical to the engine's formatting for
    // the timeline domain (|x| >= 1e-6, < 1e16).
    return String(x);
}
export function isIndexUnit(item) {
    return item.params != null && item.params["unit"] === "index";
}
export function sortItems(items) {
    return [...items].sort((a, b) => MODALITY_ORDER[a.modality] - MODALITY_ORDER[b.modality] || a.start_s - b.start_s);
}
function paramsJson(params) {
    const body = Object.keys(params).sort()
        .map((key) => `${JSON.stringify(key)}:${JSON.stringify(params[key])}`)
        .join(",");
    return `{${body}}`;
}
function itemJson(item) {
    const range = isIndexUnit(item) ? String : formatFloat;
    const parts = [
        `"modality":${JSON.stringify(item.modality)}`,
        `"kind":${JSON.stringify(item.kind)}`,
        `"start_s":${range(item.start_s)}`,
        `"end_s":${range(item.end_s)}`,
        `"intensity":${formatFloat(item.intensity)}`,
    ];
    if (item.params != null) {
        parts.push(`"params":${paramsJson(item.params)}`);
    }
    return `{${parts.join(",")}}`;
}
export function specToJson(spec) {
    if (!Number.isInteger(spec.seed) || spec.seed < 0) {
        throw new Error(`seed must be an unsigned integer, got ${spec.seed}`);
    }
    const parts = [`"seed":${spec.seed}`];
    if (spec.clip_duration_s != null) {
        parts.push(`"clip_duration_s":${formatFloat(spec.clip_duration_s)}`);
    }
    parts.push(`"items":[${sortItems(spec.items).map(itemJson).join(",")}]`);
    return `{${parts.join(",")}}`;
}
export function specFromJson(text) {
    const obj = JSON.parse(text);
    return { seed: obj.seed ?? 0, clip_duration_s: obj.clip_duration_s ?? null, items: obj.items ?? [] };
}
