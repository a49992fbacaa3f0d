"""Noise configuration model: typed items, whole specs, random generation.

A NoiseSpec (ordered noise items plus a seed) is the unit of
reproducibility: the same spec applied to the same input always produces
byte-identical output.  Specs serialize to a canonical JSON form with a
fixed key order so generated configs are byte-stable and diffable.
RandomSpecParams mirrors the flat ``mode / v_noise_* / a_noise_*``
vocabulary of the published noise-config API, so configs are portable in
both directions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Any, Mapping

from .errors import (
    BadIntensity,
    ConfigError,
    EmptyInterval,
    InfeasibleLayout,
    ParseError,
    UnknownMode,
)
from .registry import MODALITIES, MODALITY_ORDER, resolve_kind
from .seeds import RNG_VERSION, rng_for

MAX_SEED = 2**64 - 1

_MODALITY_PREFIXES = (("a", "audio"), ("v", "video"), ("t", "text"))

# Tick grid used when laying out random segments for a modality that has
# no natural rate on the probed media (text, or a missing stream).
_FALLBACK_TICK_RATE = 1000.0


def _check_seed(seed: Any) -> int:
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed <= MAX_SEED:
        raise ConfigError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return seed


@dataclass(frozen=True)
class NoiseItem:
    """One timed, typed, parameterized perturbation.

    start_s/end_s are seconds, except for text/feature items carrying
    ``params={"unit": "index"}``, where they are word / timestep indices.
    """

    modality: str
    kind: str
    start_s: float
    end_s: float
    intensity: float
    params: Mapping[str, Any] | None = None

    def __post_init__(self):
        if self.modality not in MODALITIES:
            raise ConfigError(f"unknown modality {self.modality!r}")
        if self.start_s < 0:
            raise EmptyInterval(f"start_s must be >= 0, got {self.start_s}")
        if not self.end_s > self.start_s:
            raise EmptyInterval(f"end_s must be > start_s, got [{self.start_s}, {self.end_s}]")
        if not 0.0 <= self.intensity <= 1.0:
            raise BadIntensity(f"intensity must be in [0, 1], got {self.intensity}")
        if self.params is not None and self.params.get("unit") == "index":
            if self.modality not in ("text", "feature"):
                raise ConfigError(f"unit='index' is only valid for text/feature items, not {self.modality!r}")
            if int(self.start_s) != self.start_s or int(self.end_s) != self.end_s:
                raise ConfigError(f"index ranges must be integral, got [{self.start_s}, {self.end_s}]")

    @property
    def unit(self) -> str:
        if self.params is not None:
            return self.params.get("unit", "s")
        return "s"

    def param(self, key: str, default=None):
        if self.params is None:
            return default
        return self.params.get(key, default)


def _sorted_items(items) -> tuple[NoiseItem, ...]:
    return tuple(sorted(items, key=lambda it: (MODALITY_ORDER[it.modality], it.start_s)))


@dataclass(frozen=True)
class NoiseSpec:
    """An ordered list of noise items plus the seed they are applied under.

    Items are kept sorted by (modality, start_s); overlapping same-modality
    items compose in this list order, earlier item first.  clip_duration_s
    is filled in when the spec is validated against concrete media.
    """

    items: tuple[NoiseItem, ...] = ()
    seed: int = 0
    clip_duration_s: float | None = None

    def __post_init__(self):
        _check_seed(self.seed)
        object.__setattr__(self, "items", _sorted_items(self.items))

    def for_modality(self, modality: str) -> list[NoiseItem]:
        return [it for it in self.items if it.modality == modality]


@dataclass(frozen=True)
class RandomSpecParams:
    """High-level parameters for randomized spec generation (``random_full`` mode).

    Field names mirror the published config vocabulary: per modality, the
    candidate kind list, the number of segments, the fraction of the clip
    to cover, and the intensity every generated item gets.
    """

    mode: str = "random_full"
    v_noise_list: tuple[str, ...] = ()
    v_noise_num: int = 0
    v_noise_ratio: float = 0.0
    v_noise_intensity: float = 0.0
    a_noise_list: tuple[str, ...] = ()
    a_noise_num: int = 0
    a_noise_ratio: float = 0.0
    a_noise_intensity: float = 0.0
    t_noise_list: tuple[str, ...] = ()
    t_noise_num: int = 0
    t_noise_ratio: float = 0.0
    t_noise_intensity: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("random_full", "random_segment"):
            raise UnknownMode(f"unknown mode {self.mode!r}")
        _check_seed(self.seed)
        for prefix, _ in _MODALITY_PREFIXES:
            object.__setattr__(self, f"{prefix}_noise_list", tuple(getattr(self, f"{prefix}_noise_list")))
            num = getattr(self, f"{prefix}_noise_num")
            if isinstance(num, bool) or not isinstance(num, int) or num < 0:
                raise ConfigError(f"{prefix}_noise_num must be a count >= 0, got {num!r}")
            ratio = getattr(self, f"{prefix}_noise_ratio")
            if not 0.0 <= ratio <= 1.0:
                raise ConfigError(f"{prefix}_noise_ratio must be in [0, 1], got {ratio!r}")
            intensity = getattr(self, f"{prefix}_noise_intensity")
            if not 0.0 <= intensity <= 1.0:
                raise BadIntensity(f"{prefix}_noise_intensity must be in [0, 1], got {intensity!r}")


def validate(spec: NoiseSpec, media_meta) -> NoiseSpec:
    """Bind a spec to concrete media: clamp segments, resolve kinds, default params.

    Returns a normalized spec with clip_duration_s filled in.  Raises
    UnknownKind, EmptyInterval (segment entirely outside the clip or empty
    after clamping) or BadIntensity.
    """
    duration = float(media_meta.duration_s)
    items = []
    for i, item in enumerate(spec.items):
        try:
            kind = resolve_kind(item.kind, item.modality)
        except ConfigError as exc:
            raise type(exc)(f"items[{i}]: {exc}") from None
        start, end = item.start_s, item.end_s
        if item.unit == "s":
            start = min(max(start, 0.0), duration)
            end = min(max(end, 0.0), duration)
            if not end > start:
                raise EmptyInterval(
                    f"items[{i}] ({item.kind}): segment [{item.start_s}, {item.end_s}] "
                    f"is empty after clamping to the {duration} s clip"
                )
        items.append(replace(item, kind=kind.name, start_s=start, end_s=end))
    return replace(spec, items=tuple(items), clip_duration_s=duration)


def _tick_rate(modality: str, media_meta) -> float:
    rate = None
    if modality == "audio":
        rate = getattr(media_meta, "sample_rate", None)
    elif modality == "video":
        rate = getattr(media_meta, "fps", None)
    return float(rate) if rate else _FALLBACK_TICK_RATE


def generate_random(params: RandomSpecParams, media_meta) -> NoiseSpec:
    """Generate a concrete NoiseSpec from high-level random parameters.

    Per modality, emits exactly noise_num items whose kinds are drawn
    uniformly from noise_list; the covered duration totals
    round(noise_ratio * clip_duration) in media ticks, split into
    non-overlapping segments at seeded-random positions.  Pure function of
    (params, media_meta): the same inputs give the same spec, always.
    """
    if params.mode != "random_full":
        raise UnknownMode(f"mode {params.mode!r} is reserved and not implemented")
    duration = float(media_meta.duration_s)
    items: list[NoiseItem] = []
    for prefix, modality in _MODALITY_PREFIXES:
        num = getattr(params, f"{prefix}_noise_num")
        if num == 0:
            continue
        names = getattr(params, f"{prefix}_noise_list")
        if not names:
            raise ConfigError(f"{prefix}_noise_list is empty but {prefix}_noise_num={num}")
        kinds = [resolve_kind(name, modality) for name in names]
        ratio = getattr(params, f"{prefix}_noise_ratio")
        intensity = getattr(params, f"{prefix}_noise_intensity")

        rate = _tick_rate(modality, media_meta)
        duration_ticks = int(round(duration * rate))
        total = int(round(ratio * duration_ticks))
        if total < num:
            raise InfeasibleLayout(
                f"{modality}: cannot fit {num} non-empty segments into "
                f"{total} ticks ({ratio} of a {duration} s clip)"
            )

        rng = rng_for(params.seed, "layout", prefix)
        base, rem = divmod(total, num)
        lengths = [base + 1] * rem + [base] * (num - rem)
        free = duration_ticks - total
        gaps = rng.multinomial(free, [1.0 / (num + 1)] * (num + 1)) if free > 0 else [0] * (num + 1)
        kind_idx = rng.integers(0, len(kinds), size=num)

        pos = 0
        for i in range(num):
            pos += int(gaps[i])
            end = pos + lengths[i]
            items.append(NoiseItem(modality, kinds[int(kind_idx[i])].name, pos / rate, end / rate, intensity))
            pos = end
    return NoiseSpec(items=tuple(items), seed=params.seed, clip_duration_s=duration)


# --- canonical JSON ---------------------------------------------------------

def _item_obj(item: NoiseItem) -> dict:
    # Index-unit ranges are integers in canonical form; times are floats.
    # Normalizing here keeps to_json path-independent (construction with int
    # or float fields serializes identically).
    index_unit = item.unit == "index"
    obj = {
        "modality": item.modality,
        "kind": item.kind,
        "start_s": int(item.start_s) if index_unit else float(item.start_s),
        "end_s": int(item.end_s) if index_unit else float(item.end_s),
        "intensity": float(item.intensity),
    }
    if item.params is not None:
        obj["params"] = {k: item.params[k] for k in sorted(item.params)}
    return obj


def to_json(spec: NoiseSpec) -> str:
    """Serialize to canonical JSON (fixed key order, compact separators)."""
    obj: dict = {"seed": spec.seed}
    if spec.clip_duration_s is not None:
        obj["clip_duration_s"] = float(spec.clip_duration_s)
    obj["items"] = [_item_obj(it) for it in spec.items]
    return json.dumps(obj, separators=(",", ":"))


def _require_number(obj: dict, field: str, where: str) -> float:
    value = obj.get(field)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}.{field}: expected a number, got {value!r}")
    return float(value)


_ITEM_FIELDS = {"modality", "kind", "start_s", "end_s", "intensity", "params"}
_SPEC_FIELDS = {"seed", "clip_duration_s", "items"}


def _parse_item(obj, where: str) -> NoiseItem:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object, got {type(obj).__name__}")
    unknown = set(obj) - _ITEM_FIELDS
    if unknown:
        raise ParseError(f"{where}: unknown field(s) {sorted(unknown)}")
    for field in ("modality", "kind"):
        if not isinstance(obj.get(field), str):
            raise ParseError(f"{where}.{field}: expected a string")
    params = obj.get("params")
    if params is not None and not isinstance(params, dict):
        raise ParseError(f"{where}.params: expected an object")
    try:
        return NoiseItem(
            modality=obj["modality"],
            kind=obj["kind"],
            start_s=_require_number(obj, "start_s", where),
            end_s=_require_number(obj, "end_s", where),
            intensity=_require_number(obj, "intensity", where),
            params=params,
        )
    except ConfigError as exc:
        raise type(exc)(f"{where}: {exc}") from None


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def from_json(text: str) -> NoiseSpec:
    """Parse canonical spec JSON.  Inverse of to_json on all valid specs."""
    obj = _loads(text)
    if not isinstance(obj, dict):
        raise ParseError("top level: expected an object")
    unknown = set(obj) - _SPEC_FIELDS
    if unknown:
        raise ParseError(f"top level: unknown field(s) {sorted(unknown)}")
    items = obj.get("items", [])
    if not isinstance(items, list):
        raise ParseError("items: expected an array")
    clip = obj.get("clip_duration_s")
    if clip is not None:
        clip = _require_number(obj, "clip_duration_s", "top level")
    try:
        return NoiseSpec(
            items=tuple(_parse_item(o, f"items[{i}]") for i, o in enumerate(items)),
            seed=obj.get("seed", 0),
            clip_duration_s=clip,
        )
    except ParseError:
        raise
    except ConfigError as exc:
        raise type(exc)(str(exc)) from None


_PARAM_FIELDS = ["mode"]
for _p, _ in _MODALITY_PREFIXES:
    _PARAM_FIELDS += [f"{_p}_noise_list", f"{_p}_noise_num", f"{_p}_noise_ratio", f"{_p}_noise_intensity"]
_PARAM_FIELDS.append("seed")


def params_to_json(params: RandomSpecParams) -> str:
    """Serialize random params to canonical JSON with the RNG version header."""
    obj: dict = {"rng": RNG_VERSION}
    for field in _PARAM_FIELDS:
        value = getattr(params, field)
        obj[field] = list(value) if isinstance(value, tuple) else value
    return json.dumps(obj, separators=(",", ":"))


def params_from_json(text: str) -> RandomSpecParams:
    obj = _loads(text)
    if not isinstance(obj, dict):
        raise ParseError("top level: expected an object")
    rng = obj.pop("rng", RNG_VERSION)
    if rng != RNG_VERSION:
        raise ParseError(f"config was generated with RNG {rng!r}; this build implements {RNG_VERSION!r}")
    unknown = set(obj) - set(_PARAM_FIELDS)
    if unknown:
        raise ParseError(f"top level: unknown field(s) {sorted(unknown)}")
    kwargs: dict = {}
    for field, value in obj.items():
        if field.endswith("_noise_list"):
            if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
                raise ParseError(f"{field}: expected an array of kind names")
            value = tuple(value)
        kwargs[field] = value
    try:
        return RandomSpecParams(**kwargs)
    except TypeError as exc:
        raise ParseError(str(exc)) from None


def load_config(text: str) -> NoiseSpec | RandomSpecParams:
    """Load a config file that is either an explicit spec or random params."""
    obj = _loads(text)
    if isinstance(obj, dict) and "mode" in obj:
        return params_from_json(text)
    if isinstance(obj, dict) and "items" in obj:
        return from_json(text)
    raise ParseError("config must contain either 'items' (explicit spec) or 'mode' (random params)")
