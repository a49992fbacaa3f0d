"""HTTP backend for interactive instance-level noise analysis.

Workflow: upload media (plus an optional word-alignment transcript), edit
the transcript, edit a noise spec, generate the noisy instance (queued job
with status polling), then fetch a side-by-side comparison payload of
lightweight proxy features (per-window audio RMS and spectral centroid,
per-frame mean luma and edge energy) and predictions for both versions.

State lives in an inspectable on-disk session tree under the data
directory; generated artifacts are immutable, a spec edit starts a new
generation rather than mutating an old one.
"""

from __future__ import annotations

import json
import queue
import shutil
import threading
import uuid
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Query, Request, UploadFile
from fastapi.responses import FileResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from . import media_io, text_noise
from .config import from_json as spec_from_json
from .config import to_json as spec_to_json
from .config import validate
from .errors import (
    ConfigError,
    MediaError,
    NotGenerated,
    PredictorFailure,
    TranscoderMissing,
    VnaError,
)
from .evaluation import PredictorSpec, run_command_predictor

AUDIO_WINDOW_S = 0.05


# --- proxy features -----------------------------------------------------------

def audio_proxy_features(samples: np.ndarray, sample_rate: int, window_s: float = AUDIO_WINDOW_S) -> dict:
    """Per-window RMS and spectral centroid of a (channels, n) buffer."""
    mono = np.asarray(samples, dtype=np.float64).mean(axis=0)
    win = max(int(round(window_s * sample_rate)), 1)
    n_win = len(mono) // win
    times, rms, centroid = [], [], []
    freqs = np.fft.rfftfreq(win, 1.0 / sample_rate)
    for w in range(n_win):
        chunk = mono[w * win:(w + 1) * win]
        times.append((w + 0.5) * win / sample_rate)
        rms.append(float(np.sqrt(np.mean(chunk**2))))
        mag = np.abs(np.fft.rfft(chunk))
        total = mag.sum()
        centroid.append(float((freqs * mag).sum() / total) if total > 0 else 0.0)
    return {"window_s": win / sample_rate, "times": times, "rms": rms, "centroid": centroid}


def video_proxy_features(frames, fps: float) -> dict:
    """Per-frame mean luma and mean gradient magnitude (edge energy)."""
    times, luma, edge = [], [], []
    weights = np.array([0.299, 0.587, 0.114])
    for i, frame in enumerate(frames):
        y = frame.astype(np.float64) @ weights
        times.append(i / fps)
        luma.append(float(y.mean()))
        gx = np.abs(np.diff(y, axis=1)).mean() if y.shape[1] > 1 else 0.0
        gy = np.abs(np.diff(y, axis=0)).mean() if y.shape[0] > 1 else 0.0
        edge.append(float(gx + gy))
    return {"times": times, "luma": luma, "edge": edge}


def proxy_features(path) -> dict:
    """Audio/video proxy series plus basic geometry for one media file."""
    meta = media_io.probe(path)
    t = media_io.get_transcoder(path)
    out: dict = {"duration_s": meta.duration_s, "audio": None, "video": None}
    if meta.has_audio:
        out["audio"] = audio_proxy_features(t.read_audio(path, meta), meta.sample_rate)
    if meta.has_video:
        out["video"] = video_proxy_features(t.iter_frames(path, meta), meta.fps)
    return out


# --- session store -------------------------------------------------------------

class SessionStore:
    """On-disk session tree: data_dir/sessions/<id>/{original.*, session.json, ...}."""

    def __init__(self, data_dir):
        self.root = Path(data_dir) / "sessions"
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def path(self, sid: str) -> Path:
        return self.root / sid

    def exists(self, sid: str) -> bool:
        return (self.path(sid) / "session.json").exists()

    def load(self, sid: str) -> dict:
        return json.loads((self.path(sid) / "session.json").read_text())

    def save(self, state: dict) -> None:
        with self._lock:
            (self.path(state["id"]) / "session.json").write_text(json.dumps(state, indent=2))

    def update(self, sid: str, **fields) -> dict:
        with self._lock:
            path = self.path(sid) / "session.json"
            state = json.loads(path.read_text())
            state.update(fields)
            path.write_text(json.dumps(state, indent=2))
            return state

    def create(self, suffix: str, blob: bytes) -> dict:
        sid = uuid.uuid4().hex[:12]
        sdir = self.path(sid)
        sdir.mkdir(parents=True)
        original = sdir / f"original{suffix}"
        original.write_bytes(blob)
        try:
            meta = media_io.probe(original)
        except (MediaError, TranscoderMissing):
            shutil.rmtree(sdir)
            raise
        state = {
            "id": sid,
            "original": original.name,
            "meta": meta.__dict__ | {"has_video": meta.has_video, "has_audio": meta.has_audio},
            "spec": None,
            "status": "idle",
            "generation": 0,
            "noisy": None,
            "error": None,
        }
        (sdir / "transcript.json").write_text(text_noise.to_json(text_noise.Transcript()))
        self.save(state)
        return state

    def transcript(self, sid: str) -> text_noise.Transcript:
        return text_noise.from_json((self.path(sid) / "transcript.json").read_text())

    def set_transcript(self, sid: str, t: text_noise.Transcript) -> None:
        (self.path(sid) / "transcript.json").write_text(text_noise.to_json(t))


class GenerationWorker:
    """Single background worker; one live generation per session, later
    submissions supersede queued ones."""

    def __init__(self, store: SessionStore, assets=None):
        self.store = store
        self.assets = assets
        self.queue: queue.Queue = queue.Queue()
        self.current: dict[str, int] = {}
        self.idle = threading.Event()
        self.idle.set()
        self.thread = threading.Thread(target=self._run, daemon=True)
        self.thread.start()

    def submit(self, sid: str, generation: int) -> None:
        self.current[sid] = generation
        self.idle.clear()
        self.queue.put((sid, generation))

    def _run(self) -> None:
        while True:
            try:
                sid, generation = self.queue.get(timeout=0.1)
            except queue.Empty:
                if self.queue.empty():
                    self.idle.set()
                continue
            if self.current.get(sid) != generation:
                continue  # superseded while queued
            self._generate(sid, generation)

    def _generate(self, sid: str, generation: int) -> None:
        try:
            state = self.store.load(sid)
            self.store.update(sid, status="running")
            sdir = self.store.path(sid)
            original = sdir / state["original"]
            spec = spec_from_json(json.dumps(state["spec"]) if state["spec"] is not None else '{"seed":0,"items":[]}')
            out_name = f"noisy_{generation:03d}{original.suffix}"
            media_io.inject(
                original, sdir / out_name, spec,
                transcript=self.store.transcript(sid),
                transcript_out=sdir / f"noisy_{generation:03d}.transcript.json",
                assets=self.assets,
            )
            if self.current.get(sid) == generation:
                self.store.update(sid, status="done", noisy=out_name, error=None)
        except VnaError as exc:
            self.store.update(sid, status="failed", error=f"{type(exc).__name__}: {exc}")
        except Exception as exc:  # defensive: job thread must never die
            self.store.update(sid, status="failed", error=f"internal: {exc}")

    def wait_idle(self, timeout: float = 60.0) -> None:
        self.idle.wait(timeout)


def _error_response(exc: VnaError, status: int) -> JSONResponse:
    return JSONResponse({"error": type(exc).__name__, "detail": str(exc)}, status_code=status)


def load_predictors(data_dir) -> dict[str, PredictorSpec]:
    path = Path(data_dir) / "predictors.json"
    if not path.exists():
        return {}
    obj = json.loads(path.read_text())
    return {name: PredictorSpec.from_obj(entry | {"name": name}) for name, entry in obj.items()}


def create_app(data_dir, ui_dir=None) -> FastAPI:
    """Build the service app rooted at the given data directory."""
    data_dir = Path(data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    store = SessionStore(data_dir)
    assets_manifest = data_dir / "assets" / "manifest.json"
    assets = media_io.load_asset_library(assets_manifest) if assets_manifest.exists() else None
    worker = GenerationWorker(store, assets)
    predictors = load_predictors(data_dir)

    app = FastAPI(title="vna service", version="0.1.0")
    app.state.store = store
    app.state.worker = worker

    @app.exception_handler(VnaError)
    def _vna_error(request: Request, exc: VnaError):
        if isinstance(exc, NotGenerated):
            return _error_response(exc, 409)
        if isinstance(exc, PredictorFailure):
            return _error_response(exc, 502)
        if isinstance(exc, TranscoderMissing):
            return _error_response(exc, 500)
        return _error_response(exc, 422)

    def _get_state(sid: str) -> dict:
        if not store.exists(sid):
            raise _NotFound(sid)
        return store.load(sid)

    class _NotFound(Exception):
        def __init__(self, sid):
            self.sid = sid

    @app.exception_handler(_NotFound)
    def _not_found(request: Request, exc: _NotFound):
        return JSONResponse({"error": "NotFound", "detail": f"no session {exc.sid}"}, status_code=404)

    def _session_view(state: dict) -> dict:
        t = store.transcript(state["id"])
        return state | {"transcript": text_noise.transcript_to_obj(t)}

    @app.post("/sessions", status_code=201)
    async def create_session(file: UploadFile, alignment: UploadFile | None = None):
        suffix = Path(file.filename or "upload.bin").suffix or ".bin"
        state = store.create(suffix, await file.read())
        if alignment is not None:
            t = text_noise.from_json((await alignment.read()).decode("utf-8"))
            store.set_transcript(state["id"], t)
        return _session_view(state)

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        return _session_view(_get_state(sid))

    @app.put("/sessions/{sid}/transcript")
    def put_transcript(sid: str, body: dict):
        _get_state(sid)
        t = text_noise.transcript_from_obj(body)
        store.set_transcript(sid, t)
        return text_noise.transcript_to_obj(t)

    @app.post("/sessions/{sid}/noise")
    def put_noise(sid: str, body: dict):
        state = _get_state(sid)
        spec = spec_from_json(json.dumps(body))
        meta = media_io.probe(store.path(sid) / state["original"])
        validated = validate(spec, meta)
        state = store.update(sid, spec=json.loads(spec_to_json(validated)), status="idle", noisy=None)
        return state["spec"]

    @app.post("/sessions/{sid}/generate", status_code=202)
    def generate(sid: str):
        state = _get_state(sid)
        generation = state["generation"] + 1
        state = store.update(sid, generation=generation, status="queued", noisy=None, error=None)
        worker.submit(sid, generation)
        return {"status": state["status"], "generation": generation}

    @app.get("/sessions/{sid}/status")
    def status(sid: str):
        state = _get_state(sid)
        return {"status": state["status"], "generation": state["generation"], "error": state["error"]}

    @app.get("/sessions/{sid}/media/original")
    def media_original(sid: str):
        state = _get_state(sid)
        return FileResponse(store.path(sid) / state["original"])

    @app.get("/sessions/{sid}/media/noisy")
    def media_noisy(sid: str):
        state = _get_state(sid)
        if state["status"] != "done" or not state["noisy"]:
            raise NotGenerated(f"session {sid} has no generated media (status {state['status']})")
        return FileResponse(store.path(sid) / state["noisy"])

    @app.get("/sessions/{sid}/compare")
    def compare(sid: str, predictor: str | None = Query(default=None), denoiser: str | None = Query(default=None)):
        state = _get_state(sid)
        if state["status"] != "done" or not state["noisy"]:
            raise NotGenerated(f"session {sid} has no generated media (status {state['status']})")
        sdir = store.path(sid)
        cache_dir = sdir / "cache"
        cache_dir.mkdir(exist_ok=True)
        cache_key = f"compare_{state['generation']:03d}_{predictor or 'none'}_{denoiser or 'none'}.json"
        cached = cache_dir / cache_key
        if cached.exists():
            return json.loads(cached.read_text())

        transcript = store.transcript(sid)
        noisy_transcript_path = sdir / f"noisy_{state['generation']:03d}.transcript.json"
        noisy_transcript = (text_noise.load_asr_variant(noisy_transcript_path)
                            if noisy_transcript_path.exists() else transcript)
        payload = {
            "generation": state["generation"],
            "predictor": predictor,
            "denoiser": denoiser,
            "original": proxy_features(sdir / state["original"]) | {"text": transcript.tokens},
            "noisy": proxy_features(sdir / state["noisy"]) | {"text": noisy_transcript.tokens},
            "predictions": None,
        }
        if predictor is not None:
            spec = predictors.get(predictor)
            if spec is None:
                raise ConfigError(f"unknown predictor {predictor!r}; register it in predictors.json")
            manifest = {
                "sigma": None,
                "kind": None,
                "denoiser": denoiser,
                "instances": [
                    {"id": "original", "path": str(sdir / state["original"])},
                    {"id": "noisy", "path": str(sdir / state["noisy"])},
                ],
            }
            manifest_path = cache_dir / f"manifest_{state['generation']:03d}.json"
            manifest_path.write_text(json.dumps(manifest, indent=2))
            predictions = run_command_predictor(spec, manifest_path, cache_dir)
            missing = {"original", "noisy"} - set(predictions)
            if missing:
                raise PredictorFailure(f"predictor returned no prediction for {sorted(missing)}")
            payload["predictions"] = {"original": predictions["original"], "noisy": predictions["noisy"]}
        cached.write_text(json.dumps(payload))
        return payload

    if ui_dir and Path(ui_dir).exists():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="webui")

    return app
