// Live cross-language check: the editor's canonical serialization must be
// byte-equal to what the engine itself writes for the same spec.  Skipped
// when the engine package is not importable in this environment.

import assert from "node:assert/strict";
import { spawnSync } from "node:child_process";
import { test } from "node:test";

import { specToJson } from "../src/canonical.js";
import { NoiseTimelineModel } from "../src/timeline.js";
import { MediaMeta } from "../src/types.js";

const PY = `
import sys, json
from vna.config import from_json, to_json
spec = from_json(sys.stdin.read())
sys.stdout.write(to_json(spec))
`;

function engineCanonical(specJson: string): string | null {
  for (const python of ["python3", "python"]) {
    const proc = spawnSync(python, ["-c", PY], { input: specJson, encoding: "utf-8" });
    if (proc.status === 0) return proc.stdout;
    if (proc.error) continue;  // interpreter missing; try the next name
    if (proc.stderr.includes("ModuleNotFoundError")) return null;
  }
  return null;
}

test("editor serialization is byte-equal to the engine's", (t) => {
  const meta: MediaMeta = {
    duration_s: 10.0, fps: 25.0, width: 640, height: 480,
    sample_rate: 16000, channels: 1, container: "vnr",
    has_video: true, has_audio: true,
  };
  const model = new NoiseTimelineModel(meta);
  model.seed = 7;
  model.addItem({ modality: "video", kind: "gblur", start_s: 0.0, end_s: 3.0, intensity: 0.5 });
  model.addItem({ modality: "audio", kind: "mute", start_s: 1.25, end_s: 7.5, intensity: 1.0 });
  model.addItem({ modality: "text", kind: "replace", start_s: 0, end_s: 6, intensity: 1.0,
                  params: { unit: "index", lexicon: ["x", "y"] } });
  const ours = model.toJson();
  const engine = engineCanonical(ours);
  if (engine === null) {
    t.skip("engine package not importable here");
    return;
  }
  assert.equal(ours, engine);

  const fancy = specToJson({
    seed: 123456789,
    clip_duration_s: 12.345,
    items: [{ modality: "video", kind: "occlude", start_s: 0.1, end_s: 11.0, intensity: 0.07,
              params: { x: 10, y: 20, w: 64, h: 48 } }],
  });
  assert.equal(fancy, engineCanonical(fancy));
});
