import assert from "node:assert/strict";
import { test } from "node:test";
import { formatFloat, specFromJson, specToJson, sortItems } from "../src/canonical.js";
// Frozen outputs of the engine CLI/serializer for the same specs; the UI
// serialization must match byte for byte.
const EDITOR_ITEM_EXPECTED = '{"seed":7,"items":[{"modality":"video","kind":"gblur","start_s":0.0,"end_s":3.0,"intensity":0.5}]}';
const BOUND_SPEC_EXPECTED = '{"seed":7,"clip_duration_s":10.0,"items":['
    + '{"modality":"audio","kind":"reverb_hall","start_s":0.0,"end_s":10.0,"intensity":0.3},'
    + '{"modality":"video","kind":"gblur","start_s":0.72,"end_s":4.72,"intensity":0.5},'
    + '{"modality":"video","kind":"blank","start_s":5.48,"end_s":9.48,"intensity":0.5}]}';
const INDEX_ITEM_EXPECTED = '{"seed":3,"items":[{"modality":"text","kind":"replace","start_s":0,"end_s":6,"intensity":1.0,'
    + '"params":{"lexicon":["a","b"],"unit":"index"}}]}';
test("editor-entered item serializes byte-equal to the CLI form", () => {
    const spec = {
        seed: 7,
        items: [{ modality: "video", kind: "gblur", start_s: 0.0, end_s: 3.0, intensity: 0.5 }],
    };
    assert.equal(specToJson(spec), EDITOR_ITEM_EXPECTED);
});
test("bound spec with uneven floats matches CLI bytes", () => {
    const spec = {
        seed: 7,
        clip_duration_s: 10.0,
        items: [
            { modality: "video", kind: "gblur", start_s: 0.72, end_s: 4.72, intensity: 0.5 },
            { modality: "audio", kind: "reverb_hall", start_s: 0.0, end_s: 10.0, intensity: 0.3 },
            { modality: "video", kind: "blank", start_s: 5.48, end_s: 9.48, intensity: 0.5 },
        ],
    };
    assert.equal(specToJson(spec), BOUND_SPEC_EXPECTED);
});
test("index-unit items keep integer ranges and sorted params", () => {
    const spec = {
        seed: 3,
        items: [{
                modality: "text", kind: "replace", start_s: 0, end_s: 6, intensity: 1.0,
                params: { unit: "index", lexicon: ["a", "b"] },
            }],
    };
    assert.equal(specToJson(spec), INDEX_ITEM_EXPECTED);
});
test("empty spec canonical bytes", () => {
    assert.equal(specToJson({ seed: 0, items: [] }), '{"seed":0,"items":[]}');
});
test("float formatting follows engine conventions", () => {
    assert.equal(formatFloat(0), "0.0");
    assert.equal(formatFloat(10), "10.0");
    assert.equal(formatFloat(0.72), "0.72");
    assert.equal(formatFloat(1 / 3), "0.3333333333333333");
});
test("items sort by modality order then start", () => {
    const sorted = sortItems([
        { modality: "video", kind: "gblur", start_s: 5, end_s: 6, intensity: 0.5 },
        { modality: "audio", kind: "mute", start_s: 2, end_s: 3, intensity: 0.5 },
        { modality: "video", kind: "blank", start_s: 1, end_s: 2, intensity: 0.5 },
    ]);
    assert.deepEqual(sorted.map((it) => [it.modality, it.start_s]), [["audio", 2], ["video", 1], ["video", 5]]);
});
test("serialize-parse-serialize is byte-stable", () => {
    const spec = specFromJson(BOUND_SPEC_EXPECTED);
    assert.equal(specToJson(spec), BOUND_SPEC_EXPECTED);
});
