import assert from "node:assert/strict";
import { test } from "node:test";
import { NoiseTimelineModel, ValidationError } from "../src/timeline.js";
const META = {
    duration_s: 10.0, fps: 25.0, width: 640, height: 480,
    sample_rate: 16000, channels: 1, container: "vnr",
    has_video: true, has_audio: true,
};
const TRANSCRIPT = {
    language: "en",
    words: [
        { token: "hello", start_s: 1.0, end_s: 1.4 },
        { token: "world", start_s: 2.0, end_s: 2.5 },
    ],
};
function model() {
    return new NoiseTimelineModel(META);
}
test("valid item is accepted and serialized canonically", () => {
    const m = model();
    m.seed = 7;
    m.addItem({ modality: "video", kind: "gblur", start_s: 0.0, end_s: 3.0, intensity: 0.5 });
    assert.equal(m.toJson(), '{"seed":7,"items":[{"modality":"video","kind":"gblur","start_s":0.0,"end_s":3.0,"intensity":0.5}]}');
});
test("edits are validated against media metadata before submission", () => {
    const m = model();
    assert.throws(() => m.addItem({ modality: "video", kind: "gblur", start_s: 0, end_s: 12, intensity: 0.5 }), ValidationError);
    assert.throws(() => m.addItem({ modality: "video", kind: "gblur", start_s: 0, end_s: 1, intensity: 1.5 }), ValidationError);
    assert.throws(() => m.addItem({ modality: "video", kind: "sparkle", start_s: 0, end_s: 1, intensity: 0.5 }), ValidationError);
    assert.throws(() => m.addItem({ modality: "audio", kind: "gblur", start_s: 0, end_s: 1, intensity: 0.5 }), ValidationError);
});
test("index-unit items are not bounded by clip duration", () => {
    const m = model();
    m.addItem({ modality: "text", kind: "erase", start_s: 0, end_s: 500, intensity: 0.5,
        params: { unit: "index" } });
    assert.equal(m.items.length, 1);
});
test("drag keeps length and clamps to the clip", () => {
    const m = model();
    const item = m.addItem({ modality: "video", kind: "blank", start_s: 0, end_s: 2, intensity: 1 });
    const moved = m.moveItem(item.uid, 9.5); // would overshoot; clamps to duration - length
    assert.equal(moved.start_s, 8);
    assert.equal(moved.end_s, 10);
    const back = m.moveItem(item.uid, -3);
    assert.equal(back.start_s, 0);
});
test("word snapping is off by default and is a toggle", () => {
    const m = model();
    m.setWordBoundaries(TRANSCRIPT);
    const item = m.addItem({ modality: "audio", kind: "mute", start_s: 5, end_s: 6, intensity: 1 });
    assert.equal(m.snapToWords, false);
    assert.equal(m.moveItem(item.uid, 1.1).start_s, 1.1); // no snap
    m.snapToWords = true;
    assert.equal(m.moveItem(item.uid, 1.1).start_s, 1.0); // snaps to "hello" start
    assert.equal(m.moveItem(item.uid, 5.5).start_s, 5.5); // nothing near: unchanged
});
test("round trip through the service spec shape", () => {
    const m = model();
    m.seed = 3;
    m.addItem({ modality: "audio", kind: "mute", start_s: 1, end_s: 2, intensity: 1 });
    const spec = m.toSpec();
    const m2 = model();
    m2.loadSpec(spec);
    assert.equal(m2.toJson(), m.toJson());
});
test("resize respects edges and duration", () => {
    const m = model();
    const item = m.addItem({ modality: "video", kind: "gblur", start_s: 2, end_s: 4, intensity: 0.5 });
    assert.equal(m.resizeItem(item.uid, "end", 11).end_s, 10);
    assert.equal(m.resizeItem(item.uid, "start", -1).start_s, 0);
});
