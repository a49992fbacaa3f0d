"""Synthetic media generation for demos and self-contained tests.

Clips carry textured, frame-varying video (gradients plus a drifting
checkerboard, so blurs and occlusions visibly change every frame) and a
tone-plus-noise audio track that is non-silent over the whole timeline.
"""

from __future__ import annotations

import wave

import numpy as np

from .media_io import MediaMeta, get_transcoder
from .seeds import rng_for


def make_frame(width: int, height: int, frame_index: int) -> np.ndarray:
    """One deterministic textured frame of the synthetic clip."""
    x = np.arange(width)[None, :]
    y = np.arange(height)[:, None]
    r = (3 * x + 2 * y + 7 * frame_index) % 256
    g = (x + 2 * y + 11 * frame_index) % 256
    checker = ((x // 16 + y // 16 + frame_index) % 2) * 160 + 48
    b = np.broadcast_to(checker, (height, width))
    return np.stack([r, g, np.broadcast_to(b, r.shape)], axis=-1).astype(np.uint8)


def make_audio(duration_s: float, sample_rate: int, channels: int = 1, seed: int = 0) -> np.ndarray:
    """Tone mix plus low-level noise, shape (channels, n), peak ~0.75."""
    n = int(round(duration_s * sample_rate))
    t = np.arange(n) / sample_rate
    signal = 0.5 * np.sin(2 * np.pi * 440.0 * t) + 0.2 * np.sin(2 * np.pi * 1200.0 * t)
    signal = signal + 0.05 * rng_for(seed, "synth_audio").standard_normal(n)
    return np.clip(np.tile(signal, (channels, 1)), -1.0, 1.0)


def make_test_clip(path, duration_s: float = 10.0, fps: float = 25.0, width: int = 640,
                   height: int = 480, sample_rate: int = 16000, channels: int = 1,
                   seed: int = 0) -> MediaMeta:
    """Write a synthetic AV clip to `path` (backend chosen by suffix)."""
    n_frames = int(round(duration_s * fps))
    meta = MediaMeta(
        duration_s=duration_s, fps=fps, width=width, height=height,
        sample_rate=sample_rate, channels=channels,
        container=str(path).rsplit(".", 1)[-1], n_frames=n_frames,
    )
    audio = make_audio(duration_s, sample_rate, channels, seed)
    with get_transcoder(path).open_encoder(path, meta, audio, lossless=True) as enc:
        for fi in range(n_frames):
            enc.write_frame(make_frame(width, height, fi))
    return meta


def make_audio_clip(path, duration_s: float = 5.0, sample_rate: int = 16000,
                    channels: int = 1, seed: int = 0) -> MediaMeta:
    """Write a synthetic audio-only clip."""
    meta = MediaMeta(
        duration_s=duration_s, fps=None, width=None, height=None,
        sample_rate=sample_rate, channels=channels,
        container=str(path).rsplit(".", 1)[-1],
    )
    audio = make_audio(duration_s, sample_rate, channels, seed)
    with get_transcoder(path).open_encoder(path, meta, audio, lossless=True):
        pass
    return meta


def make_wav(path, duration_s: float = 2.0, sample_rate: int = 16000, freq_hz: float = 330.0,
             noise_level: float = 0.3, seed: int = 0) -> None:
    """Write a PCM16 WAV (for scenario-noise assets)."""
    n = int(round(duration_s * sample_rate))
    t = np.arange(n) / sample_rate
    signal = 0.6 * np.sin(2 * np.pi * freq_hz * t)
    if noise_level:
        signal = signal + noise_level * rng_for(seed, "synth_wav").standard_normal(n)
    pcm = np.clip(signal, -1.0, 1.0)
    with wave.open(str(path), "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(sample_rate)
        wav.writeframes((pcm * 32767.0).astype("<i2").tobytes())
