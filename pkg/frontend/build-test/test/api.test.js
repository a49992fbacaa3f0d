import assert from "node:assert/strict";
import { test } from "node:test";
import { ApiClient } from "../src/api.js";
function stubbed(status, body) {
    const calls = [];
    const fetchFn = async (url, init) => {
        calls.push({ url, init });
        return new Response(JSON.stringify(body), {
            status,
            headers: { "content-type": "application/json" },
        });
    };
    return { api: new ApiClient("", fetchFn), calls };
}
test("putNoise sends the canonical JSON body verbatim", async () => {
    const { api, calls } = stubbed(200, {});
    const spec = '{"seed":7,"items":[{"modality":"video","kind":"gblur","start_s":0.0,"end_s":3.0,"intensity":0.5}]}';
    await api.putNoise("abc", spec);
    assert.equal(calls[0].url, "/sessions/abc/noise");
    assert.equal(calls[0].init?.method, "POST");
    assert.equal(calls[0].init?.body, spec); // exact bytes, no re-encoding
});
test("compare builds query parameters", async () => {
    const { api, calls } = stubbed(200, {});
    await api.compare("abc", "toy", "spectral");
    assert.equal(calls[0].url, "/sessions/abc/compare?predictor=toy&denoiser=spectral");
    await api.compare("abc");
    assert.equal(calls[1].url, "/sessions/abc/compare");
});
test("service errors surface kind and detail", async () => {
    const { api } = stubbed(422, { error: "UnknownKind", detail: "items[0]: unknown noise kind 'sparkle'" });
    await assert.rejects(api.putNoise("abc", "{}"), (err) => {
        assert.equal(err.status, 422);
        assert.equal(err.kind, "UnknownKind");
        assert.match(err.message, /items\[0\]/);
        return true;
    });
});
test("waitForGeneration polls until done", async () => {
    const statuses = ["queued", "running", "done"];
    let call = 0;
    const fetchFn = async () => new Response(JSON.stringify({ status: statuses[Math.min(call++, 2)], generation: 1, error: null }), { status: 200, headers: { "content-type": "application/json" } });
    const api = new ApiClient("", fetchFn);
    const status = await api.waitForGeneration("abc", 1);
    assert.equal(status.status, "done");
    assert.equal(call, 3);
});
test("media urls address the preview endpoints", () => {
    const api = new ApiClient("");
    assert.equal(api.mediaUrl("abc", "noisy"), "/sessions/abc/media/noisy");
    assert.equal(api.mediaUrl("abc", "original"), "/sessions/abc/media/original");
});
