"""Audio perturbations on raw PCM buffers.

All operations are pure: they return a new buffer, touch only samples
inside the requested segment (outside samples stay bit-identical), never
change the sample count, and clamp results to [-1, 1].  Randomized
operations draw from a generator derived from the caller's seed, so a
fixed (input, segment, intensity, seed) always reproduces the same bytes.

Intensity mappings (cutoff/gain curves, wet mix, decay times, velvet
density) are chosen so that intensity 0 is an identity (or near-identity
for the insulation filter) and severity grows monotonically.
"""

from __future__ import annotations

import json
import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.signal import oaconvolve, resample_poly

from .errors import AssetDecodeError, AssetNotFound, ConfigError, SegmentOutOfRange
from .seeds import rng_for
from .segments import seg_to_ticks

# Reverberation decay targets; overridable per call.
RT60_S = {"hall": 1.5, "room": 0.4}

# Sparse impulse train density for velvet noise, impulses per second.
VELVET_DENSITY = 2205.0

# IRs longer than this are convolved via FFT overlap-add, shorter ones
# in direct form; both paths must agree with direct convolution to 1e-5.
_FFT_CONV_MIN_TAPS = 4096

_PSD_EXPONENT = {"white": 0.0, "pink": 1.0, "brown": 2.0, "blue": -1.0, "violet": -2.0}

COLORS = tuple(_PSD_EXPONENT) + ("velvet",)


@dataclass
class PcmBuffer:
    """Multichannel PCM audio: float samples in [-1, 1], shape (channels, n)."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        self.samples = np.atleast_2d(np.asarray(self.samples, dtype=np.float64))
        if self.sample_rate <= 0:
            raise ConfigError(f"sample_rate must be positive, got {self.sample_rate}")

    @property
    def channels(self) -> int:
        return self.samples.shape[0]

    @property
    def n_samples(self) -> int:
        return self.samples.shape[1]

    @property
    def duration_s(self) -> float:
        return self.n_samples / self.sample_rate


@dataclass(frozen=True)
class ImpulseResponse:
    """Finite impulse response, energy-normalized (sum of squared taps = 1)."""

    taps: np.ndarray
    sample_rate: int
    rt60_s: float


def _seg_indices(buf: PcmBuffer, seg) -> tuple[int, int]:
    start_s, end_s = seg
    a, b = seg_to_ticks(start_s, end_s, buf.sample_rate)
    if a < 0 or b > buf.n_samples or a >= b:
        raise SegmentOutOfRange(
            f"segment [{start_s}, {end_s}] s maps to samples [{a}, {b}) "
            f"outside the {buf.n_samples}-sample buffer"
        )
    return a, b


def _finish(samples: np.ndarray, a: int, b: int) -> None:
    np.clip(samples[:, a:b], -1.0, 1.0, out=samples[:, a:b])


def mute(buf: PcmBuffer, seg, intensity: float) -> PcmBuffer:
    """Scale in-segment samples by (1 - intensity); intensity 1 zeroes them."""
    a, b = _seg_indices(buf, seg)
    out = buf.samples.copy()
    out[:, a:b] *= 1.0 - intensity
    _finish(out, a, b)
    return PcmBuffer(out, buf.sample_rate)


def _lowpass_taps(cutoff_hz: float, sample_rate: int, n_taps: int = 255) -> np.ndarray:
    # Linear-phase windowed sinc, Blackman window, unity DC gain.
    cutoff_hz = min(cutoff_hz, 0.45 * sample_rate)
    m = np.arange(n_taps) - (n_taps - 1) / 2
    h = 2.0 * cutoff_hz / sample_rate * np.sinc(2.0 * cutoff_hz / sample_rate * m)
    h *= np.blackman(n_taps)
    return h / h.sum()


def insulate(buf: PcmBuffer, seg, intensity: float) -> PcmBuffer:
    """Low-pass filtering plus attenuation, emulating acoustic insulation.

    Cutoff sweeps 4000 Hz down to 300 Hz and the post-filter gain falls
    from 1.0 to 0.5 as intensity goes 0 -> 1.
    """
    a, b = _seg_indices(buf, seg)
    taps = _lowpass_taps(4000.0 - 3700.0 * intensity, buf.sample_rate)
    delay = (len(taps) - 1) // 2
    gain = 1.0 - 0.5 * intensity
    out = buf.samples.copy()
    for ch in range(buf.channels):
        filtered = np.convolve(out[ch, a:b], taps)[delay:delay + (b - a)]
        out[ch, a:b] = gain * filtered
    _finish(out, a, b)
    return PcmBuffer(out, buf.sample_rate)


def make_reverb_ir(style: str, sample_rate: int, seed: int = 0, rt60_s: float | None = None) -> ImpulseResponse:
    """Synthesize an exponentially decaying noise IR for hall/room reverberation.

    h[n] = w[n] * exp(-6.91 * n / (RT60 * fs)) with seeded white noise w,
    truncated where the envelope reaches -60 dB, then energy-normalized.
    """
    if style not in RT60_S:
        raise ConfigError(f"unknown reverb style {style!r}")
    rt60 = RT60_S[style] if rt60_s is None else rt60_s
    length = int(round(rt60 * sample_rate))
    rng = rng_for(seed, "reverb_ir", style)
    taps = rng.standard_normal(length) * np.exp(-6.91 * np.arange(length) / (rt60 * sample_rate))
    taps /= np.sqrt(np.sum(taps**2))
    return ImpulseResponse(taps, sample_rate, rt60)


def _convolve_head(x: np.ndarray, taps: np.ndarray) -> np.ndarray:
    if len(taps) <= _FFT_CONV_MIN_TAPS:
        return np.convolve(x, taps)[: len(x)]
    return oaconvolve(x, taps)[: len(x)]


def reverb(buf: PcmBuffer, seg, intensity: float, style: str = "hall", seed: int = 0,
           ir: ImpulseResponse | None = None) -> PcmBuffer:
    """Wet/dry reverberation mix: (1-i)*dry + i*(dry (*) IR), tail cut at segment end."""
    a, b = _seg_indices(buf, seg)
    if ir is None:
        ir = make_reverb_ir(style, buf.sample_rate, seed)
    out = buf.samples.copy()
    for ch in range(buf.channels):
        dry = out[ch, a:b]
        out[ch, a:b] = (1.0 - intensity) * dry + intensity * _convolve_head(dry, ir.taps)
    _finish(out, a, b)
    return PcmBuffer(out, buf.sample_rate)


def _shaped_noise(n: int, sample_rate: float, beta: float, rng: np.random.Generator) -> np.ndarray:
    # Spectrally shape seeded white noise to power spectral density ~ f^(-beta).
    white = rng.standard_normal(n)
    if beta == 0.0:
        x = white
    else:
        spectrum = np.fft.rfft(white)
        freqs = np.fft.rfftfreq(n, 1.0 / sample_rate)
        shape = np.zeros_like(freqs)
        shape[1:] = freqs[1:] ** (-beta / 2.0)
        x = np.fft.irfft(spectrum * shape, n)
    return x / np.sqrt(np.mean(x**2))


def _velvet_noise(n: int, sample_rate: float, rng: np.random.Generator,
                  density: float = VELVET_DENSITY) -> np.ndarray:
    # One +/-1 impulse per grid cell of fs/density samples, jittered within
    # the cell; cells never collide, so the impulse count is exact.
    period = sample_rate / density
    count = int(n / period)
    if count == 0:
        return np.zeros(n)
    k = np.arange(count)
    idx = np.floor(k * period + rng.random(count) * (period - 1.0)).astype(np.int64)
    signs = np.where(rng.random(count) < 0.5, 1.0, -1.0)
    out = np.zeros(n)
    out[idx] = signs * np.sqrt(n / count)  # unit RMS
    return out


def color_noise(buf: PcmBuffer, seg, intensity: float, color: str, seed: int = 0) -> PcmBuffer:
    """Additive laboratory noise: out = dry + intensity * unit-RMS colored noise.

    white/pink/brown/blue/violet follow PSD ~ f^(-beta) with
    beta = 0 / 1 / 2 / -1 / -2; velvet is a sparse jittered impulse train.
    """
    if color not in COLORS:
        raise ConfigError(f"unknown noise color {color!r}")
    a, b = _seg_indices(buf, seg)
    out = buf.samples.copy()
    for ch in range(buf.channels):
        rng = rng_for(seed, "color", color, ch)
        if color == "velvet":
            noise = _velvet_noise(b - a, buf.sample_rate, rng)
        else:
            noise = _shaped_noise(b - a, buf.sample_rate, _PSD_EXPONENT[color], rng)
        out[ch, a:b] += intensity * noise
    _finish(out, a, b)
    return PcmBuffer(out, buf.sample_rate)


@dataclass
class AudioAsset:
    """A decoded scenario recording, kept mono at its native rate."""

    samples: np.ndarray
    sample_rate: int


def _prepare_asset(asset: AudioAsset, sample_rate: int) -> np.ndarray:
    samples = np.asarray(asset.samples, dtype=np.float64)
    if samples.ndim > 1:
        samples = samples.mean(axis=0)
    if asset.sample_rate != sample_rate:
        g = np.gcd(int(sample_rate), int(asset.sample_rate))
        samples = resample_poly(samples, sample_rate // g, asset.sample_rate // g)
    rms = np.sqrt(np.mean(samples**2))
    if samples.size == 0 or rms == 0:
        raise AssetDecodeError("scenario asset is empty or silent")
    return samples / rms


def mix_scenario(buf: PcmBuffer, seg, intensity: float, asset: AudioAsset,
                 mode: str = "background", seed: int = 0) -> PcmBuffer:
    """Mix a real-world recording into the segment.

    background: the unit-RMS asset is looped/truncated to cover the whole
    segment and added at gain = intensity.  sudden: the asset is placed
    once at a seeded offset inside the segment.
    """
    if mode not in ("background", "sudden"):
        raise ConfigError(f"unknown scenario mode {mode!r}")
    a, b = _seg_indices(buf, seg)
    noise = _prepare_asset(asset, buf.sample_rate)
    out = buf.samples.copy()
    seg_len = b - a
    if mode == "background":
        reps = int(np.ceil(seg_len / len(noise)))
        tiled = np.tile(noise, reps)[:seg_len]
        out[:, a:b] += intensity * tiled
    else:
        rng = rng_for(seed, "sudden")
        k = min(len(noise), seg_len)
        offset = int(rng.integers(0, seg_len - k + 1))
        out[:, a + offset:a + offset + k] += intensity * noise[:k]
    _finish(out, a, b)
    return PcmBuffer(out, buf.sample_rate)


class AssetLibrary:
    """Directory of scenario recordings indexed by id in a JSON manifest.

    Manifest shape: {"assets": {"park": {"path": "park.wav", "license": "..."}}}
    with paths relative to the manifest file.  WAV/PCM files decode
    natively; anything else needs a decoder callback (the media layer
    passes its transcoder-backed one).
    """

    def __init__(self, manifest_path, decoder=None):
        self._root = Path(manifest_path).parent
        self._decoder = decoder
        self._cache: dict[str, AudioAsset] = {}
        try:
            manifest = json.loads(Path(manifest_path).read_text())
            self._entries = dict(manifest["assets"])
        except FileNotFoundError:
            raise AssetNotFound(f"asset manifest {manifest_path} not found") from None
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise AssetDecodeError(f"bad asset manifest {manifest_path}: {exc}") from None

    def ids(self) -> list[str]:
        return sorted(self._entries)

    def get(self, asset_id: str) -> AudioAsset:
        if asset_id in self._cache:
            return self._cache[asset_id]
        entry = self._entries.get(asset_id)
        if entry is None:
            raise AssetNotFound(f"no scenario asset with id {asset_id!r}")
        path = self._root / entry["path"]
        if not path.exists():
            raise AssetNotFound(f"asset file {path} not found")
        if path.suffix.lower() == ".wav":
            asset = _load_wav(path)
        elif self._decoder is not None:
            asset = self._decoder(path)
        else:
            raise AssetDecodeError(f"cannot decode {path.name}: only .wav is supported without a transcoder")
        self._cache[asset_id] = asset
        return asset


def _load_wav(path) -> AudioAsset:
    try:
        with wave.open(str(path), "rb") as wav:
            rate = wav.getframerate()
            width = wav.getsampwidth()
            channels = wav.getnchannels()
            raw = wav.readframes(wav.getnframes())
    except (wave.Error, EOFError) as exc:
        raise AssetDecodeError(f"cannot decode {path}: {exc}") from None
    if width == 2:
        data = np.frombuffer(raw, dtype="<i2").astype(np.float64) / 32768.0
    elif width == 4:
        data = np.frombuffer(raw, dtype="<i4").astype(np.float64) / 2147483648.0
    elif width == 1:
        data = (np.frombuffer(raw, dtype=np.uint8).astype(np.float64) - 128.0) / 128.0
    else:
        raise AssetDecodeError(f"cannot decode {path}: unsupported sample width {width}")
    return AudioAsset(data.reshape(-1, channels).T, rate)


def apply_item(buf: PcmBuffer, item, item_seed: int, assets: AssetLibrary | None = None) -> PcmBuffer:
    """Apply one validated audio noise item to a buffer."""
    seg = (item.start_s, item.end_s)
    kind = item.kind
    if kind == "mute":
        return mute(buf, seg, item.intensity)
    if kind == "insulate":
        return insulate(buf, seg, item.intensity)
    if kind in ("reverb_hall", "reverb_room"):
        return reverb(buf, seg, item.intensity, style=kind.removeprefix("reverb_"), seed=item_seed)
    if kind.startswith("color_"):
        return color_noise(buf, seg, item.intensity, kind.removeprefix("color_"), seed=item_seed)
    if kind in ("bg_mix", "sudden"):
        if assets is None:
            raise AssetNotFound(f"item kind {kind!r} needs a scenario asset library")
        asset = assets.get(item.param("asset", "default"))
        mode = "background" if kind == "bg_mix" else "sudden"
        return mix_scenario(buf, seg, item.intensity, asset, mode=mode, seed=item_seed)
    raise ConfigError(f"not an audio noise kind: {kind!r}")
