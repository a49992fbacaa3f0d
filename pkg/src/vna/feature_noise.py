"""Feature-level perturbations: random and structural timestep drops.

A FeatureSeq is a T x D float32 matrix plus a validity mask.  Drops erase
whole timestep vectors (zero vector, mask false), either independently per
timestep or as one contiguous block.  The on-disk container is a small
binary format with a JSON sidecar; the byte layout is documented below so
non-Python predictors can read it.

Layout (little-endian):
    magic    4 bytes  b"VNAF"
    version  u16      1
    T        u32      timesteps
    D        u32      feature dimension
    values   T*D f32  row-major
    mask     T  u8    1 = valid timestep
Sidecar (<path>.json): {"modality": ..., "provenance": {...}}
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, ParseError
from .seeds import rng_for

MAGIC = b"VNAF"
VERSION = 1


@dataclass
class FeatureSeq:
    """T x D feature matrix with a per-timestep validity mask."""

    values: np.ndarray
    mask: np.ndarray
    modality: str = "feature"

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float32)
        if self.values.ndim != 2:
            raise ConfigError(f"values must be a T x D matrix, got shape {self.values.shape}")
        self.mask = np.asarray(self.mask, dtype=bool)
        if self.mask.shape != (self.values.shape[0],):
            raise ConfigError(f"mask length {self.mask.shape} does not match T={self.values.shape[0]}")

    @property
    def timesteps(self) -> int:
        return self.values.shape[0]


def _check_rate(missing_rate: float) -> None:
    if not 0.0 <= missing_rate <= 1.0:
        raise ConfigError(f"missing_rate must be in [0, 1], got {missing_rate}")


def random_drop(fs: FeatureSeq, missing_rate: float, seed: int = 0) -> FeatureSeq:
    """Zero each valid timestep vector independently with the given probability."""
    _check_rate(missing_rate)
    rng = rng_for(seed, "random_drop")
    dropped = (rng.random(fs.timesteps) < missing_rate) & fs.mask
    values = fs.values.copy()
    values[dropped] = 0.0
    return FeatureSeq(values, fs.mask & ~dropped, fs.modality)


def structural_drop(fs: FeatureSeq, missing_rate: float, seed: int = 0) -> FeatureSeq:
    """Zero one contiguous block of round(rate * T) timesteps at a seeded position."""
    _check_rate(missing_rate)
    t = fs.timesteps
    # Half-up rounding; rate 1 always erases everything.
    block = t if missing_rate == 1.0 else int(np.floor(missing_rate * t + 0.5))
    if block == 0:
        return FeatureSeq(fs.values.copy(), fs.mask.copy(), fs.modality)
    rng = rng_for(seed, "structural_drop")
    start = int(rng.integers(0, t - block + 1))
    values = fs.values.copy()
    values[start:start + block] = 0.0
    mask = fs.mask.copy()
    mask[start:start + block] = False
    return FeatureSeq(values, mask, fs.modality)


def apply_item(fs: FeatureSeq, item, item_seed: int) -> FeatureSeq:
    """Apply one validated feature noise item (drop rate = item intensity)."""
    if item.kind == "random_drop":
        return random_drop(fs, item.intensity, seed=item_seed)
    if item.kind == "structural_drop":
        return structural_drop(fs, item.intensity, seed=item_seed)
    raise ConfigError(f"not a feature noise kind: {item.kind!r}")


def write_features(path, fs: FeatureSeq, provenance: dict | None = None) -> None:
    path = Path(path)
    t, d = fs.values.shape
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<HII", VERSION, t, d))
        fh.write(np.ascontiguousarray(fs.values, dtype="<f4").tobytes())
        fh.write(fs.mask.astype(np.uint8).tobytes())
    sidecar = {"modality": fs.modality, "provenance": provenance or {}}
    Path(str(path) + ".json").write_text(json.dumps(sidecar, separators=(",", ":"), sort_keys=True))


def read_features(path) -> FeatureSeq:
    path = Path(path)
    try:
        blob = path.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read feature file {path}: {exc}") from None
    if blob[:4] != MAGIC:
        raise ParseError(f"{path}: not a feature container (bad magic)")
    version, t, d = struct.unpack_from("<HII", blob, 4)
    if version != VERSION:
        raise ParseError(f"{path}: unsupported feature container version {version}")
    offset = 4 + struct.calcsize("<HII")
    need = offset + t * d * 4 + t
    if len(blob) != need:
        raise ParseError(f"{path}: truncated feature container ({len(blob)} bytes, expected {need})")
    values = np.frombuffer(blob, dtype="<f4", count=t * d, offset=offset).reshape(t, d)
    mask = np.frombuffer(blob, dtype=np.uint8, count=t, offset=offset + t * d * 4).astype(bool)
    modality = "feature"
    sidecar = Path(str(path) + ".json")
    if sidecar.exists():
        try:
            modality = json.loads(sidecar.read_text()).get("modality", "feature")
        except json.JSONDecodeError:
            pass
    return FeatureSeq(values.copy(), mask, modality)
