"""Visual perturbations on raw RGB frame sequences.

Frames are numpy uint8 arrays of shape (height, width, 3), channel order
R,G,B.  Every operation preserves dimensions and frame count, touches only
frames inside the item's time segment, computes in float and stores with
round-half-up, and is a frame-local pure function, so the engine can apply
it while streaming.  Stochastic kinds derive one RNG per (item seed,
frame index): serial and frame-parallel runs are byte-identical.

Per-kind intensity mappings (sigma = 10*i, kernel size from i, pixel std
51*i, corruption probability i/10, adjustment factors) pin the benchmark
sweep endpoints and are identities at intensity 0 (degradations) or 0.5
(color adjustments).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import convolve1d

from .errors import BadPermutation, BoxOutOfBounds, ConfigError
from .seeds import rng_for
from .segments import clamp_ticks, seg_to_ticks

_LUMA = np.array([0.299, 0.587, 0.114])  # Rec.601

ADJUST_KINDS = ("contrast", "brightness", "saturation", "gamma")


@dataclass
class FrameSeq:
    """An ordered run of same-sized frames at a fixed rate."""

    frames: list[np.ndarray]
    fps: float

    def __post_init__(self):
        if self.fps <= 0:
            raise ConfigError(f"fps must be positive, got {self.fps}")
        shapes = {f.shape for f in self.frames}
        if len(shapes) > 1:
            raise ConfigError(f"frames differ in shape: {sorted(shapes)}")


def _store(values: np.ndarray) -> np.ndarray:
    # Round half up; byte-stable across platforms unlike banker's rounding.
    return np.clip(np.floor(values + 0.5), 0, 255).astype(np.uint8)


def _round_half_up(x: float) -> int:
    return int(np.floor(x + 0.5))


def _seg_frames(seq: FrameSeq, seg) -> tuple[int, int]:
    a, b = seg_to_ticks(seg[0], seg[1], seq.fps)
    return clamp_ticks(a, b, len(seq.frames))


def _map_segment(seq: FrameSeq, seg, fn) -> FrameSeq:
    a, b = _seg_frames(seq, seg)
    frames = list(seq.frames)
    for i in range(a, b):
        frames[i] = fn(frames[i], i)
    return FrameSeq(frames, seq.fps)


# --- per-frame kernels -------------------------------------------------------

def occlude_frame(frame: np.ndarray, intensity: float, params=None) -> np.ndarray:
    h, w = frame.shape[:2]
    if params and "x" in params:
        x, y = int(params["x"]), int(params["y"])
        bw, bh = int(params["w"]), int(params["h"])
        if x < 0 or y < 0 or bw < 0 or bh < 0 or x + bw > w or y + bh > h:
            raise BoxOutOfBounds(f"box ({x},{y},{bw},{bh}) exceeds the {w}x{h} frame")
    else:
        # Area = intensity * frame area, centered, frame aspect ratio.
        bw = _round_half_up(w * np.sqrt(intensity))
        bh = _round_half_up(h * np.sqrt(intensity))
        x, y = (w - bw) // 2, (h - bh) // 2
    if bw == 0 or bh == 0:
        return frame
    out = frame.copy()
    out[y:y + bh, x:x + bw] = 0
    return out


def blank_frame(frame: np.ndarray, intensity: float) -> np.ndarray:
    # Entire black screen; intensity 0 keeps the identity convention.
    if intensity == 0:
        return frame
    return np.zeros_like(frame)


def gaussian_blur_frame(frame: np.ndarray, sigma: float) -> np.ndarray:
    if sigma <= 0:
        return frame
    radius = int(np.ceil(3.0 * sigma))
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    kernel = np.exp(-(x**2) / (2.0 * sigma**2))
    kernel /= kernel.sum()
    out = convolve1d(frame.astype(np.float64), kernel, axis=0, mode="mirror")
    out = convolve1d(out, kernel, axis=1, mode="mirror")
    return _store(out)


def average_blur_frame(frame: np.ndarray, k: int) -> np.ndarray:
    if k <= 1:
        return frame
    kernel = np.full(k, 1.0 / k)
    out = convolve1d(frame.astype(np.float64), kernel, axis=0, mode="mirror")
    out = convolve1d(out, kernel, axis=1, mode="mirror")
    return _store(out)


def additive_gaussian_frame(frame: np.ndarray, sigma_px: float, rng: np.random.Generator) -> np.ndarray:
    if sigma_px <= 0:
        return frame
    return _store(frame.astype(np.float64) + rng.normal(0.0, sigma_px, frame.shape))


def impulse_frame(frame: np.ndarray, p: float, rng: np.random.Generator) -> np.ndarray:
    if p <= 0:
        return frame
    h, w = frame.shape[:2]
    corrupt = rng.random((h, w)) < p
    white = rng.random((h, w)) < 0.5
    out = frame.copy()
    out[corrupt & white] = 255
    out[corrupt & ~white] = 0
    return out


def color_adjust_frame(frame: np.ndarray, kind: str, intensity: float) -> np.ndarray:
    px = frame.astype(np.float64)
    if kind == "contrast":
        out = 128.0 + (1.0 + (intensity - 0.5) * 2.0) * (px - 128.0)
    elif kind == "brightness":
        out = px + (intensity - 0.5) * 255.0
    elif kind == "saturation":
        luma = px @ _LUMA
        out = luma[..., None] + (1.0 + (intensity - 0.5) * 2.0) * (px - luma[..., None])
    elif kind == "gamma":
        out = 255.0 * (px / 255.0) ** (4.0 ** (intensity - 0.5))
    else:
        raise ConfigError(f"unknown color adjustment {kind!r}")
    return _store(out)


def invert_frame(frame: np.ndarray) -> np.ndarray:
    return 255 - frame


def _permutation(order) -> list[int]:
    if isinstance(order, str):
        order = list(order.upper())
    if sorted(order) != ["B", "G", "R"]:
        raise BadPermutation(f"channel order must be a permutation of R,G,B, got {order!r}")
    return ["RGB".index(c) for c in order]


def channel_swap_frame(frame: np.ndarray, order) -> np.ndarray:
    perm = _permutation(order)
    if perm == [0, 1, 2]:
        return frame
    return frame[..., perm]


# --- sequence-level operations ----------------------------------------------

def occlude(seq: FrameSeq, seg, intensity: float, params=None) -> FrameSeq:
    return _map_segment(seq, seg, lambda f, i: occlude_frame(f, intensity, params))


def gaussian_blur(seq: FrameSeq, seg, intensity: float) -> FrameSeq:
    sigma = 10.0 * intensity
    return _map_segment(seq, seg, lambda f, i: gaussian_blur_frame(f, sigma))


def average_blur(seq: FrameSeq, seg, intensity: float) -> FrameSeq:
    k = 2 * _round_half_up(5.0 * intensity) + 1
    return _map_segment(seq, seg, lambda f, i: average_blur_frame(f, k))


def additive_gaussian(seq: FrameSeq, seg, intensity: float, seed: int = 0) -> FrameSeq:
    sigma = 51.0 * intensity
    return _map_segment(seq, seg, lambda f, i: additive_gaussian_frame(f, sigma, rng_for(seed, "frame", i)))


def impulse(seq: FrameSeq, seg, intensity: float, seed: int = 0) -> FrameSeq:
    p = 100.0 * intensity / 1000.0
    return _map_segment(seq, seg, lambda f, i: impulse_frame(f, p, rng_for(seed, "frame", i)))


def color_adjust(seq: FrameSeq, seg, kind: str, intensity: float) -> FrameSeq:
    return _map_segment(seq, seg, lambda f, i: color_adjust_frame(f, kind, intensity))


def invert(seq: FrameSeq, seg) -> FrameSeq:
    return _map_segment(seq, seg, lambda f, i: invert_frame(f))


def channel_swap(seq: FrameSeq, seg, order) -> FrameSeq:
    return _map_segment(seq, seg, lambda f, i: channel_swap_frame(f, order))


def apply_item(frame: np.ndarray, frame_index: int, item, item_seed: int) -> np.ndarray:
    """Apply one validated video noise item to a single in-segment frame."""
    kind, intensity = item.kind, item.intensity
    if kind == "occlude":
        return occlude_frame(frame, intensity, item.params)
    if kind == "blank":
        return blank_frame(frame, intensity)
    if kind == "gblur":
        return gaussian_blur_frame(frame, 10.0 * intensity)
    if kind == "avg_blur":
        return average_blur_frame(frame, 2 * _round_half_up(5.0 * intensity) + 1)
    if kind == "add_gauss":
        return additive_gaussian_frame(frame, 51.0 * intensity, rng_for(item_seed, "frame", frame_index))
    if kind == "impulse":
        return impulse_frame(frame, 100.0 * intensity / 1000.0, rng_for(item_seed, "frame", frame_index))
    if kind in ADJUST_KINDS:
        return color_adjust_frame(frame, kind, intensity)
    if kind == "invert":
        return invert_frame(frame)
    if kind == "channel_swap":
        return channel_swap_frame(frame, item.param("order", "BGR"))
    raise ConfigError(f"not a video noise kind: {kind!r}")
