"""Word-level attacks on transcripts, plus ingestion of external ASR output.

Erasure removes each in-range word independently with probability equal to
the intensity; replacement substitutes tokens (from a lexicon when given,
the conventional "[UNK]" otherwise) without changing the token count.
ASR-error transcripts are produced by external tools and only read here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import ConfigError, EmptyLexicon, ParseError, RangeOutOfBounds
from .seeds import rng_for

UNK_TOKEN = "[UNK]"


@dataclass(frozen=True)
class Word:
    token: str
    start_s: float | None = None
    end_s: float | None = None


@dataclass(frozen=True)
class Transcript:
    """An ordered word list; word times, when present, must not overlap."""

    words: tuple[Word, ...] = ()
    language: str = "und"

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))
        prev_end = None
        for i, word in enumerate(self.words):
            if word.start_s is None or word.end_s is None:
                continue
            if word.end_s < word.start_s:
                raise ConfigError(f"words[{i}]: end_s {word.end_s} before start_s {word.start_s}")
            if prev_end is not None and word.start_s < prev_end:
                raise ConfigError(f"words[{i}]: start_s {word.start_s} overlaps previous word ending {prev_end}")
            prev_end = word.end_s

    @property
    def tokens(self) -> list[str]:
        return [w.token for w in self.words]


def _check_range(t: Transcript, word_range) -> tuple[int, int]:
    a, b = int(word_range[0]), int(word_range[1])
    if a < 0 or b > len(t.words) or a > b:
        raise RangeOutOfBounds(f"word range [{a}, {b}) outside transcript of {len(t.words)} words")
    return a, b


def erase_words(t: Transcript, word_range, intensity: float, seed: int = 0) -> Transcript:
    """Independently remove each in-range word with probability = intensity."""
    a, b = _check_range(t, word_range)
    rng = rng_for(seed, "erase")
    draws = rng.random(b - a)
    kept = [w for i, w in enumerate(t.words) if not (a <= i < b and draws[i - a] < intensity)]
    return replace(t, words=tuple(kept))


def replace_words(t: Transcript, word_range, intensity: float, seed: int = 0,
                  lexicon=None) -> Transcript:
    """Swap selected in-range tokens for lexicon draws (or "[UNK]"), count preserved."""
    if lexicon is not None and len(lexicon) == 0:
        raise EmptyLexicon("replacement lexicon is empty")
    a, b = _check_range(t, word_range)
    rng = rng_for(seed, "replace")
    draws = rng.random(b - a)
    words = list(t.words)
    for i in range(a, b):
        if draws[i - a] < intensity:
            token = lexicon[int(rng.integers(0, len(lexicon)))] if lexicon is not None else UNK_TOKEN
            words[i] = replace(words[i], token=token)
    return replace(t, words=tuple(words))


def words_in_segment(t: Transcript, start_s: float, end_s: float) -> tuple[int, int]:
    """Word-index range whose time spans overlap [start_s, end_s).

    Untimed words never match; callers address those with index units.
    """
    indices = [
        i for i, w in enumerate(t.words)
        if w.start_s is not None and w.end_s is not None and w.start_s < end_s and w.end_s > start_s
    ]
    if not indices:
        return 0, 0
    return indices[0], indices[-1] + 1


def apply_item(t: Transcript, item, item_seed: int) -> Transcript:
    """Apply one validated text noise item to a transcript."""
    if item.unit == "index":
        a, b = int(item.start_s), int(item.end_s)
        a, b = max(a, 0), min(b, len(t.words))
        if a > b:
            a = b
    else:
        a, b = words_in_segment(t, item.start_s, item.end_s)
    if item.kind == "erase":
        return erase_words(t, (a, b), item.intensity, seed=item_seed)
    if item.kind == "replace":
        lexicon = item.param("lexicon")
        return replace_words(t, (a, b), item.intensity, seed=item_seed, lexicon=lexicon)
    if item.kind == "asr_variant":
        path = item.param("path")
        if path is None:
            raise ConfigError("asr_variant items need params.path pointing at the ASR transcript")
        return load_asr_variant(path)
    raise ConfigError(f"not a text noise kind: {item.kind!r}")


# --- transcript JSON ---------------------------------------------------------

def transcript_to_obj(t: Transcript) -> dict:
    words = []
    for w in t.words:
        obj: dict = {"token": w.token}
        if w.start_s is not None:
            obj["start_s"] = w.start_s
        if w.end_s is not None:
            obj["end_s"] = w.end_s
        words.append(obj)
    return {"language": t.language, "words": words}


def to_json(t: Transcript) -> str:
    return json.dumps(transcript_to_obj(t), separators=(",", ":"))


def transcript_from_obj(obj) -> Transcript:
    if not isinstance(obj, dict) or not isinstance(obj.get("words"), list):
        raise ParseError("transcript must be an object with a 'words' array")
    words = []
    for i, w in enumerate(obj["words"]):
        if not isinstance(w, dict) or not isinstance(w.get("token"), str):
            raise ParseError(f"words[{i}]: expected an object with a string 'token'")
        words.append(Word(w["token"], w.get("start_s"), w.get("end_s")))
    try:
        return Transcript(tuple(words), language=obj.get("language", "und"))
    except ConfigError as exc:
        raise ParseError(str(exc)) from None


def from_json(text: str) -> Transcript:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return transcript_from_obj(obj)


def load_asr_variant(path) -> Transcript:
    """Read an externally produced (ASR-error) transcript file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read transcript {path}: {exc}") from None
    return from_json(text)
