"""Media orchestration: probe, decode, noise application, re-encode.

All codec work happens in external transcoder processes that exchange raw
streams with the engine (packed rgb24 video, interleaved f32le audio);
every noise operation runs in-process on those raw buffers.  Two backends
speak the protocol: ffmpeg (any container it supports; located via
VNA_FFMPEG/VNA_FFPROBE or PATH) and the bundled rawcoder for the
uncompressed .vnr container, which also serves as the golden-test backend
since its raw round trip is lossless by construction.

Video is streamed frame by frame, so memory stays bounded for arbitrary
durations; audio is held in memory for the duration of one file.
"""

from __future__ import annotations

import hashlib
import os
import shutil
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

from . import audio_noise, feature_noise, text_noise, video_noise
from .config import NoiseSpec, RandomSpecParams, generate_random, validate
from .errors import (
    EncodeError,
    PipeProtocolError,
    TranscoderMissing,
    UnreadableMedia,
)
from .rawcoder import EXTENSION as RAW_EXTENSION
from .seeds import derive_seed
from .segments import clamp_ticks, seg_to_ticks

_STDERR_TAIL = 2000


@dataclass(frozen=True)
class MediaMeta:
    """Probed stream geometry; width/height/fps are None for audio-only files."""

    duration_s: float
    fps: float | None
    width: int | None
    height: int | None
    sample_rate: int | None
    channels: int | None
    container: str
    n_frames: int | None = None
    n_samples: int | None = None

    @property
    def has_video(self) -> bool:
        return bool(self.width and self.height and self.fps)

    @property
    def has_audio(self) -> bool:
        return bool(self.sample_rate and self.channels)


def _tail(stderr: bytes | str | None) -> str:
    if not stderr:
        return ""
    text = stderr.decode("utf-8", "replace") if isinstance(stderr, bytes) else stderr
    return text[-_STDERR_TAIL:].strip()


class RawTranscoder:
    """Drives the bundled rawcoder subprocess for .vnr containers."""

    name = "rawcoder"

    def _cmd(self, *args: str) -> list[str]:
        return [sys.executable, "-m", "vna.rawcoder", *args]

    def probe(self, path) -> MediaMeta:
        proc = subprocess.run(self._cmd("probe", str(path)), capture_output=True)
        if proc.returncode != 0:
            raise UnreadableMedia(f"cannot probe {path}: {_tail(proc.stderr)}")
        import json

        header = json.loads(proc.stdout)
        has_video = header["frames"] > 0
        has_audio = header["samples"] > 0
        return MediaMeta(
            duration_s=header["duration_s"],
            fps=header["fps"] if has_video else None,
            width=header["width"] if has_video else None,
            height=header["height"] if has_video else None,
            sample_rate=header["sample_rate"] if has_audio else None,
            channels=header["channels"] if has_audio else None,
            container="vnr",
            n_frames=header["frames"],
            n_samples=header["samples"],
        )

    def iter_frames(self, path, meta: MediaMeta) -> Iterator[np.ndarray]:
        frame_bytes = meta.width * meta.height * 3
        proc = subprocess.Popen(
            self._cmd("decode-video", str(path)), stdout=subprocess.PIPE, stderr=subprocess.PIPE
        )
        yield from _read_frames(proc, frame_bytes, meta, str(path))

    def read_audio(self, path, meta: MediaMeta) -> np.ndarray:
        proc = subprocess.run(self._cmd("decode-audio", str(path)), capture_output=True)
        if proc.returncode != 0:
            raise UnreadableMedia(f"cannot decode audio of {path}: {_tail(proc.stderr)}")
        return _pcm_to_array(proc.stdout, meta.channels, str(path))

    def open_encoder(self, out_path, meta: MediaMeta, audio: np.ndarray | None, lossless: bool = False):
        audio_file = _write_audio_temp(audio)
        cmd = self._cmd(
            "encode",
            "--out", str(out_path),
            "--width", str(meta.width or 0),
            "--height", str(meta.height or 0),
            "--fps", str(meta.fps or 0.0),
            "--sample-rate", str(meta.sample_rate or 0),
            "--channels", str(meta.channels or 0),
        )
        if audio_file:
            cmd += ["--audio", audio_file]
        return _Encoder(cmd, audio_file)


class FfmpegTranscoder:
    """Drives ffmpeg/ffprobe subprocesses over the same raw-pipe protocol."""

    name = "ffmpeg"

    def __init__(self):
        self.ffmpeg = shutil.which(os.environ.get("VNA_FFMPEG") or "ffmpeg")
        self.ffprobe = shutil.which(os.environ.get("VNA_FFPROBE") or "ffprobe")
        if self.ffmpeg and not self.ffprobe:
            sibling = Path(self.ffmpeg).with_name("ffprobe")
            self.ffprobe = str(sibling) if sibling.exists() else None

    def require(self) -> None:
        if not self.ffmpeg or not self.ffprobe:
            raise TranscoderMissing(
                "ffmpeg/ffprobe not found; install them, set VNA_FFMPEG/VNA_FFPROBE, "
                "or use the .vnr raw container"
            )

    def probe(self, path) -> MediaMeta:
        self.require()
        import json

        proc = subprocess.run(
            [self.ffprobe, "-v", "error", "-print_format", "json", "-show_format", "-show_streams", str(path)],
            capture_output=True,
        )
        if proc.returncode != 0:
            raise UnreadableMedia(f"cannot probe {path}: {_tail(proc.stderr)}")
        info = json.loads(proc.stdout)
        fps = width = height = sample_rate = channels = None
        n_frames = None
        for stream in info.get("streams", []):
            if stream.get("codec_type") == "video" and width is None:
                width, height = stream.get("width"), stream.get("height")
                fps = _parse_rate(stream.get("avg_frame_rate") or stream.get("r_frame_rate"))
                if stream.get("nb_frames", "").isdigit():
                    n_frames = int(stream["nb_frames"])
            elif stream.get("codec_type") == "audio" and sample_rate is None:
                sample_rate = int(stream.get("sample_rate", 0)) or None
                channels = stream.get("channels")
        duration = float(info.get("format", {}).get("duration", 0.0) or 0.0)
        if not duration and not width and not sample_rate:
            raise UnreadableMedia(f"{path}: no decodable streams found")
        return MediaMeta(duration, fps, width, height, sample_rate, channels,
                         Path(path).suffix.lstrip(".").lower() or "unknown", n_frames=n_frames)

    def iter_frames(self, path, meta: MediaMeta) -> Iterator[np.ndarray]:
        self.require()
        frame_bytes = meta.width * meta.height * 3
        proc = subprocess.Popen(
            [self.ffmpeg, "-v", "error", "-i", str(path), "-map", "0:v:0",
             "-f", "rawvideo", "-pix_fmt", "rgb24", "pipe:1"],
            stdout=subprocess.PIPE, stderr=subprocess.PIPE,
        )
        yield from _read_frames(proc, frame_bytes, meta, str(path))

    def read_audio(self, path, meta: MediaMeta) -> np.ndarray:
        self.require()
        proc = subprocess.run(
            [self.ffmpeg, "-v", "error", "-i", str(path), "-map", "0:a:0",
             "-ar", str(meta.sample_rate), "-ac", str(meta.channels),
             "-f", "f32le", "-acodec", "pcm_f32le", "pipe:1"],
            capture_output=True,
        )
        if proc.returncode != 0:
            raise UnreadableMedia(f"cannot decode audio of {path}: {_tail(proc.stderr)}")
        return _pcm_to_array(proc.stdout, meta.channels, str(path))

    def open_encoder(self, out_path, meta: MediaMeta, audio: np.ndarray | None, lossless: bool = False):
        self.require()
        audio_file = _write_audio_temp(audio)
        cmd = [self.ffmpeg, "-v", "error", "-y"]
        if meta.has_video:
            cmd += ["-f", "rawvideo", "-pix_fmt", "rgb24",
                    "-s", f"{meta.width}x{meta.height}", "-r", str(meta.fps), "-i", "pipe:0"]
        if audio_file:
            cmd += ["-f", "f32le", "-ar", str(meta.sample_rate), "-ac", str(meta.channels), "-i", audio_file]
        if meta.has_video:
            if lossless:
                cmd += ["-c:v", "ffv1"]
            else:
                cmd += ["-c:v", "libx264", "-pix_fmt", "yuv420p", "-crf", "18", "-preset", "medium",
                        "-r", str(meta.fps)]
        if audio_file:
            cmd += ["-c:a", "pcm_s16le"] if lossless else ["-c:a", "aac", "-b:a", "192k"]
        cmd += [str(out_path)]
        return _Encoder(cmd, audio_file, pipe_video=meta.has_video)


class _Encoder:
    """A running encode subprocess accepting rgb24 frames on stdin."""

    def __init__(self, cmd: list[str], audio_file: str | None, pipe_video: bool = True):
        self._audio_file = audio_file
        stdin = subprocess.PIPE if pipe_video else subprocess.DEVNULL
        self._proc = subprocess.Popen(cmd, stdin=stdin, stderr=subprocess.PIPE)
        self.frames_written = 0

    def write_frame(self, frame: np.ndarray) -> None:
        try:
            self._proc.stdin.write(frame.tobytes())
        except BrokenPipeError:
            _, stderr = self._proc.communicate()
            raise EncodeError(f"encoder exited early: {_tail(stderr)}") from None
        self.frames_written += 1

    def close(self) -> None:
        try:
            _, stderr = self._proc.communicate()  # closes stdin, waits
            if self._proc.returncode != 0:
                raise EncodeError(f"encoder failed: {_tail(stderr)}")
        finally:
            if self._audio_file:
                os.unlink(self._audio_file)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            self.close()
        else:
            self._proc.kill()
            self._proc.wait()
            if self._audio_file and os.path.exists(self._audio_file):
                os.unlink(self._audio_file)


def _read_frames(proc: subprocess.Popen, frame_bytes: int, meta: MediaMeta, path: str) -> Iterator[np.ndarray]:
    try:
        while True:
            blob = proc.stdout.read(frame_bytes)
            if not blob:
                break
            if len(blob) != frame_bytes:
                proc.kill()
                raise PipeProtocolError(
                    f"{path}: decoder produced a partial frame ({len(blob)} of {frame_bytes} bytes)"
                )
            yield np.frombuffer(blob, dtype=np.uint8).reshape(meta.height, meta.width, 3)
    finally:
        proc.stdout.close()
        stderr = proc.stderr.read() if proc.stderr else b""
        if proc.stderr:
            proc.stderr.close()
        if proc.wait() != 0:
            raise UnreadableMedia(f"cannot decode video of {path}: {_tail(stderr)}")


def _pcm_to_array(blob: bytes, channels: int, path: str) -> np.ndarray:
    if len(blob) % (4 * channels):
        raise PipeProtocolError(f"{path}: PCM stream is not whole {channels}-channel f32 sample frames")
    data = np.frombuffer(blob, dtype="<f4").astype(np.float64)
    return data.reshape(-1, channels).T


def _audio_to_bytes(audio: np.ndarray) -> bytes:
    # (channels, n) float64 -> interleaved f32le
    return np.ascontiguousarray(audio.T, dtype="<f4").tobytes()


def _write_audio_temp(audio: np.ndarray | None) -> str | None:
    if audio is None:
        return None
    fd, path = tempfile.mkstemp(suffix=".f32")
    with os.fdopen(fd, "wb") as fh:
        fh.write(_audio_to_bytes(audio))
    return path


def get_transcoder(path) -> RawTranscoder | FfmpegTranscoder:
    """Pick a backend for the given file: forced by VNA_TRANSCODER, else by suffix."""
    forced = os.environ.get("VNA_TRANSCODER")
    if forced == "raw":
        return RawTranscoder()
    if forced == "ffmpeg":
        t = FfmpegTranscoder()
        t.require()
        return t
    if Path(path).suffix.lower() == RAW_EXTENSION:
        return RawTranscoder()
    t = FfmpegTranscoder()
    t.require()
    return t


def probe(path) -> MediaMeta:
    """Extract stream metadata via the external transcoder's probe facility."""
    if not Path(path).exists():
        raise UnreadableMedia(f"{path}: no such file")
    return get_transcoder(path).probe(path)


@dataclass
class InjectionReport:
    """What a noise injection actually did: items, per-item seeds, stream digests."""

    output_path: str
    items: list[dict] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    wall_time_s: float = 0.0
    video_frames: int = 0
    audio_samples: int = 0
    video_sha256: str | None = None
    audio_sha256: str | None = None
    transcript_path: str | None = None

    def to_obj(self) -> dict:
        return dict(self.__dict__)


def _item_entry(index: int, item, seed: int) -> dict:
    return {
        "index": index,
        "modality": item.modality,
        "kind": item.kind,
        "start_s": item.start_s,
        "end_s": item.end_s,
        "intensity": item.intensity,
        "seed": seed,
    }


def inject(input_path, output_path, config, *, transcript: text_noise.Transcript | None = None,
           transcript_out=None, assets: audio_noise.AssetLibrary | None = None,
           lossless: bool = False) -> InjectionReport:
    """Decode, apply every noise item in composition order, re-encode.

    `config` is a NoiseSpec or RandomSpecParams (bound against the probed
    metadata, exactly the published `real_noise(in, out, **cfg)` shape).
    Text items apply to the given transcript, written alongside the output;
    feature items have no raw-media carrier and are reported as skipped.
    """
    started = time.perf_counter()
    meta = probe(input_path)
    spec = generate_random(config, meta) if isinstance(config, RandomSpecParams) else config
    vspec = validate(spec, meta)

    decoder = get_transcoder(input_path)
    encoder_backend = get_transcoder(output_path)
    report = InjectionReport(output_path=str(output_path))
    seeds = {i: derive_seed(vspec.seed, "item", i) for i in range(len(vspec.items))}
    by_modality: dict[str, list[tuple[int, object]]] = {"audio": [], "video": [], "text": [], "feature": []}
    for i, item in enumerate(vspec.items):
        by_modality[item.modality].append((i, item))

    # Audio: buffer once, apply items in spec order.
    audio = None
    if meta.has_audio:
        audio = decoder.read_audio(input_path, meta)
        buf = audio_noise.PcmBuffer(audio, meta.sample_rate)
        for i, item in by_modality["audio"]:
            buf = audio_noise.apply_item(buf, item, seeds[i], assets)
            report.items.append(_item_entry(i, item, seeds[i]))
        audio = buf.samples
        report.audio_samples = audio.shape[1]
        report.audio_sha256 = hashlib.sha256(_audio_to_bytes(audio)).hexdigest()
    else:
        report.skipped += [_item_entry(i, it, seeds[i]) | {"reason": "no audio stream"}
                           for i, it in by_modality["audio"]]

    # Video: stream through the noise stage into the encoder.
    if meta.has_video:
        plan = []
        for i, item in by_modality["video"]:
            a, b = seg_to_ticks(item.start_s, item.end_s, meta.fps)
            a, b = clamp_ticks(a, b, meta.n_frames if meta.n_frames else 1 << 62)
            plan.append((i, item, a, b))
            report.items.append(_item_entry(i, item, seeds[i]))
        video_hash = hashlib.sha256()
        with encoder_backend.open_encoder(output_path, meta, audio, lossless) as enc:
            for fi, frame in enumerate(decoder.iter_frames(input_path, meta)):
                for i, item, a, b in plan:
                    if a <= fi < b:
                        frame = video_noise.apply_item(frame, fi, item, seeds[i])
                frame = np.ascontiguousarray(frame)
                video_hash.update(frame.tobytes())
                enc.write_frame(frame)
            report.video_frames = enc.frames_written
        report.video_sha256 = video_hash.hexdigest()
    else:
        report.skipped += [_item_entry(i, it, seeds[i]) | {"reason": "no video stream"}
                           for i, it in by_modality["video"]]
        with encoder_backend.open_encoder(output_path, meta, audio, lossless) as enc:
            pass

    # Text: transform the transcript artifact when one is supplied.
    if by_modality["text"]:
        if transcript is not None:
            t = transcript
            for i, item in by_modality["text"]:
                t = text_noise.apply_item(t, item, seeds[i])
                report.items.append(_item_entry(i, item, seeds[i]))
            out = Path(transcript_out) if transcript_out else Path(str(output_path) + ".transcript.json")
            out.write_text(text_noise.to_json(t))
            report.transcript_path = str(out)
        else:
            report.skipped += [_item_entry(i, it, seeds[i]) | {"reason": "no transcript supplied"}
                               for i, it in by_modality["text"]]

    report.skipped += [_item_entry(i, it, seeds[i]) | {"reason": "feature noise applies to feature files"}
                       for i, it in by_modality["feature"]]
    report.wall_time_s = time.perf_counter() - started
    return report


def decode_raw(path) -> tuple[MediaMeta, list[np.ndarray], np.ndarray | None]:
    """Fully decode a file to raw frames + audio (test/inspection helper)."""
    meta = probe(path)
    t = get_transcoder(path)
    frames = list(t.iter_frames(path, meta)) if meta.has_video else []
    audio = t.read_audio(path, meta) if meta.has_audio else None
    return meta, frames, audio


def load_asset_library(manifest_path) -> audio_noise.AssetLibrary:
    """Asset library whose non-WAV entries decode through the transcoder."""

    def _decode(path) -> audio_noise.AudioAsset:
        meta = probe(path)
        if not meta.has_audio:
            raise UnreadableMedia(f"{path}: no audio stream")
        samples = get_transcoder(path).read_audio(path, meta)
        return audio_noise.AudioAsset(samples, meta.sample_rate)

    return audio_noise.AssetLibrary(manifest_path, decoder=_decode)


def _parse_rate(rate: str | None) -> float | None:
    if not rate or rate in ("0/0", "0"):
        return None
    if "/" in rate:
        num, den = rate.split("/", 1)
        return float(num) / float(den) if float(den) else None
    return float(rate)
