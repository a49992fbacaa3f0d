import json
import sys

import numpy as np
import pytest

from vna import media_io
from vna.cli import main
from vna.config import from_json


def run(*argv) -> int:
    return main(list(argv))


LISTING_ARGS = [
    "gen-config", "--mode", "random_full",
    "--v-noise", "gblur,blank", "--v-num", "2", "--v-ratio", "0.8", "--v-intensity", "0.5",
    "--a-noise", "reverb", "--a-num", "1", "--a-ratio", "1.0", "--a-intensity", "0.3",
    "--seed", "11",
]


class TestGenConfig:
    def test_writes_canonical_params(self, tmp_path, capsys):
        out = tmp_path / "cfg.json"
        assert run(*LISTING_ARGS, "--out", str(out)) == 0
        obj = json.loads(out.read_text())
        assert obj["mode"] == "random_full"
        assert obj["v_noise_list"] == ["gblur", "blank"]
        assert obj["a_noise_intensity"] == 0.3
        assert "rng" in obj

    def test_bind_is_byte_stable_across_runs(self, small_clip, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run(*LISTING_ARGS, "--bind", str(small_clip), "--out", str(a)) == 0
        assert run(*LISTING_ARGS, "--bind", str(small_clip), "--out", str(b)) == 0
        assert a.read_bytes() == b.read_bytes()
        spec = from_json(a.read_text())
        assert len(spec.items) == 3

    def test_bad_intensity_exits_2(self, capsys):
        assert run("gen-config", "--v-noise", "gblur", "--v-num", "1",
                   "--v-ratio", "0.5", "--v-intensity", "1.5") == 2


class TestInject:
    def test_inject_with_config_file(self, small_clip, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"seed":3,"items":[{"modality":"audio","kind":"mute",'
                       '"start_s":0.0,"end_s":2.0,"intensity":1.0}]}')
        out = tmp_path / "out.vnr"
        report_path = tmp_path / "report.json"
        assert run("inject", "--in", str(small_clip), "--out", str(out),
                   "--config", str(cfg), "--report", str(report_path)) == 0
        _, _, audio = media_io.decode_raw(out)
        assert np.abs(audio).max() == 0.0
        report = json.loads(report_path.read_text())
        assert report["items"][0]["kind"] == "mute"

    def test_config_error_exits_2(self, small_clip, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"seed":0,"items":[{"modality":"audio","kind":"sparkle",'
                       '"start_s":0,"end_s":1,"intensity":0.5}]}')
        assert run("inject", "--in", str(small_clip), "--out", str(tmp_path / "o.vnr"),
                   "--config", str(cfg)) == 2

    def test_missing_media_exits_3(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"seed":0,"items":[]}')
        assert run("inject", "--in", str(tmp_path / "ghost.vnr"),
                   "--out", str(tmp_path / "o.vnr"), "--config", str(cfg)) == 3

    def test_transcoder_missing_exits_4(self, tmp_path, monkeypatch):
        monkeypatch.setenv("PATH", str(tmp_path))
        monkeypatch.delenv("VNA_FFMPEG", raising=False)
        monkeypatch.delenv("VNA_FFPROBE", raising=False)
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"seed":0,"items":[]}')
        clip = tmp_path / "x.mp4"
        clip.write_bytes(b"\x00" * 32)
        assert run("inject", "--in", str(clip), "--out", str(tmp_path / "o.mp4"),
                   "--config", str(cfg)) == 4


class TestSynthSweepReport:
    def test_synth_then_sweep_then_report(self, tmp_path):
        assert run("synth", "--out", str(tmp_path / "c.vnr"), "--duration", "1",
                   "--fps", "5", "--width", "16", "--height", "16", "--sample-rate", "4000") == 0
        meta = media_io.probe(tmp_path / "c.vnr")
        assert meta.duration_s == 1.0

        # feature dataset + oracle predictor
        from vna.feature_noise import FeatureSeq, write_features

        entries = []
        for i in range(4):
            write_features(tmp_path / f"f{i}.vnaf",
                           FeatureSeq(np.full((10, 3), 2.0, np.float32), np.ones(10, bool)))
            entries.append({"id": f"f{i}", "features": f"f{i}.vnaf", "label": (-1.0) ** i})
        (tmp_path / "data.json").write_text(json.dumps({"instances": entries}))
        stub = tmp_path / "oracle.py"
        stub.write_text(
            "import json, sys\n"
            "m = json.load(open(sys.argv[1]))\n"
            "labels = {e['id']: e['label'] for e in json.load(open(sys.argv[2]))['instances']}\n"
            "open(sys.argv[3], 'w').write('\\n'.join(f\"{i['id']},{labels[i['id']]}\" "
            "for i in m['instances']))\n"
        )
        plan = tmp_path / "plan.json"
        plan.write_text(json.dumps({
            "kind": "random_drop", "manifest": "data.json", "name": "demo",
            "predictor": {"mode": "command",
                          "command": f"{sys.executable} {stub} {{manifest}} {tmp_path / 'data.json'} {{out}}"},
        }))
        report_path = tmp_path / "report.json"
        assert run("sweep", "--plan", str(plan), "--out", str(report_path),
                   "--workdir", str(tmp_path / "work")) == 0
        assert json.loads(report_path.read_text())["air_acc2"] == 1.0

        svg = tmp_path / "curves.svg"
        csv = tmp_path / "curve.csv"
        assert run("report", "--merge", str(report_path), str(report_path), "--svg", str(svg)) == 0
        assert run("report", "--merge", str(report_path), "--csv", str(csv)) == 0
        assert svg.read_text().count("<polyline") == 2
        assert csv.read_text().startswith("# name: demo")


class TestAugment:
    def test_augment_writes_copies_and_manifest(self, small_clip, tmp_path):
        cfg = tmp_path / "cfg.json"
        assert run("gen-config", "--a-noise", "mute", "--a-num", "1", "--a-ratio", "0.5",
                   "--a-intensity", "0.8", "--seed", "2", "--out", str(cfg)) == 0
        manifest = tmp_path / "train.json"
        manifest.write_text(json.dumps({"instances": [
            {"id": "a", "media": str(small_clip), "label": 1.0, "split": "train"},
        ]}))
        assert run("augment", "--manifest", str(manifest), "--config", str(cfg),
                   "--copies", "2", "--out-dir", str(tmp_path / "aug")) == 0
        out = json.loads((tmp_path / "aug" / "manifest.json").read_text())
        assert [e["id"] for e in out["instances"]] == ["a", "a.aug0", "a.aug1"]
        # copies differ from each other (independent seeds)
        blobs = {(tmp_path / "aug" / f"a.aug{i}.vnr").read_bytes() for i in range(2)}
        assert len(blobs) == 2

    def test_augment_rejects_item_spec(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"seed":0,"items":[]}')
        manifest = tmp_path / "train.json"
        manifest.write_text(json.dumps({"instances": []}))
        assert run("augment", "--manifest", str(manifest), "--config", str(cfg),
                   "--copies", "1", "--out-dir", str(tmp_path / "aug")) == 2
