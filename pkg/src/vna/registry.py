"""Registry of supported noise kinds.

Each kind carries the modality it acts on, the human-readable severity
indicator swept in benchmarks, the default sweep interval (min, max, step)
and the scale that converts an indicator value back to the unit intensity
the modality modules consume (intensity = sigma / sigma_scale).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnknownKind

MODALITIES = ("audio", "video", "text", "feature")

# Canonical modality ordering used when sorting spec items.
MODALITY_ORDER = {m: i for i, m in enumerate(MODALITIES)}


@dataclass(frozen=True)
class NoiseKind:
    name: str
    modality: str
    indicator: str = "Intensity"
    interval: tuple[float, float, float] = (0.0, 1.0, 0.1)
    sigma_scale: float = 1.0

    def intensity_for(self, sigma: float) -> float:
        """Map a sweep indicator value onto the [0, 1] intensity scale."""
        return min(max(sigma / self.sigma_scale, 0.0), 1.0)


_KINDS = [
    # audio
    NoiseKind("insulate", "audio"),
    NoiseKind("mute", "audio"),
    NoiseKind("reverb_hall", "audio"),
    NoiseKind("reverb_room", "audio"),
    NoiseKind("color_white", "audio", "Amplitude of the Noise", (0.0, 0.10, 0.01)),
    NoiseKind("color_pink", "audio", "Amplitude of the Noise", (0.0, 0.10, 0.01)),
    NoiseKind("color_brown", "audio", "Amplitude of the Noise", (0.0, 0.10, 0.01)),
    NoiseKind("color_blue", "audio", "Amplitude of the Noise", (0.0, 0.10, 0.01)),
    NoiseKind("color_violet", "audio", "Amplitude of the Noise", (0.0, 0.10, 0.01)),
    NoiseKind("color_velvet", "audio", "Amplitude of the Noise", (0.0, 0.10, 0.01)),
    NoiseKind("bg_mix", "audio", "Amplitude of the Noise", (0.0, 1.0, 0.1)),
    NoiseKind("sudden", "audio", "Amplitude of the Noise", (0.0, 1.0, 0.1)),
    # video
    NoiseKind("occlude", "video", "Covered area fraction", (0.0, 1.0, 0.1)),
    NoiseKind("blank", "video"),
    NoiseKind("gblur", "video", "Sigma of Gaussian blur", (0.0, 10.0, 1.0), sigma_scale=10.0),
    NoiseKind("avg_blur", "video", "Kernel size factor", (0.0, 1.0, 0.1)),
    NoiseKind("add_gauss", "video", "Noise std factor", (0.0, 1.0, 0.1)),
    NoiseKind("impulse", "video", "Strength for specific pixel", (0.0, 100.0, 10.0), sigma_scale=100.0),
    NoiseKind("contrast", "video"),
    NoiseKind("brightness", "video"),
    NoiseKind("saturation", "video"),
    NoiseKind("gamma", "video"),
    NoiseKind("invert", "video"),
    NoiseKind("channel_swap", "video"),
    # text
    NoiseKind("erase", "text", "Erasure probability", (0.0, 1.0, 0.1)),
    NoiseKind("replace", "text", "Replacement probability", (0.0, 1.0, 0.1)),
    NoiseKind("asr_variant", "text"),
    # feature
    NoiseKind("random_drop", "feature", "Missing Rate", (0.0, 1.0, 0.1)),
    NoiseKind("structural_drop", "feature", "Missing Rate", (0.0, 1.0, 0.1)),
]

REGISTRY: dict[str, NoiseKind] = {k.name: k for k in _KINDS}

# Accepted spellings from configs written for the published API shape.
ALIASES = {
    "reverb": "reverb_hall",
}


def resolve_kind(name: str, modality: str | None = None) -> NoiseKind:
    """Look a kind up by name (aliases included), optionally pinning the modality."""
    canonical = ALIASES.get(name, name)
    kind = REGISTRY.get(canonical)
    if kind is None:
        raise UnknownKind(f"unknown noise kind {name!r}")
    if modality is not None and kind.modality != modality:
        raise UnknownKind(f"noise kind {name!r} belongs to modality {kind.modality!r}, not {modality!r}")
    return kind


def kinds_for(modality: str) -> list[NoiseKind]:
    return [k for k in _KINDS if k.modality == modality]
