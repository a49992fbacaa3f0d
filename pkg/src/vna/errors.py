"""Exception hierarchy for the vna package.

The CLI maps these to exit codes: configuration problems exit 2, media
problems exit 3, a missing transcoder exits 4, everything else 1.
"""


class VnaError(Exception):
    """Base class for all errors raised by this package."""


# --- configuration / user input (exit code 2) ---------------------------

class ConfigError(VnaError):
    """Invalid noise configuration, sweep plan, or other user-supplied data."""


class UnknownKind(ConfigError):
    pass


class UnknownMode(ConfigError):
    pass


class EmptyInterval(ConfigError):
    pass


class BadIntensity(ConfigError):
    pass


class InfeasibleLayout(ConfigError):
    pass


class ParseError(ConfigError):
    pass


class BadInterval(ConfigError):
    pass


class BadPermutation(ConfigError):
    pass


class SegmentOutOfRange(ConfigError):
    pass


class BoxOutOfBounds(ConfigError):
    pass


class RangeOutOfBounds(ConfigError):
    pass


class EmptyLexicon(ConfigError):
    pass


# --- media I/O (exit code 3) ---------------------------------------------

class MediaError(VnaError):
    """Media cannot be read, decoded, or encoded."""


class UnreadableMedia(MediaError):
    pass


class PipeProtocolError(MediaError):
    pass


class EncodeError(MediaError):
    pass


class AssetNotFound(MediaError):
    pass


class AssetDecodeError(MediaError):
    pass


# --- transcoder (exit code 4) ---------------------------------------------

class TranscoderMissing(VnaError):
    """No usable external transcoder binary was found."""


# --- evaluation ------------------------------------------------------------

class EvaluationError(VnaError):
    pass


class MissingLevel(EvaluationError):
    pass


class EmptyLevel(EvaluationError):
    pass


class PredictorFailure(EvaluationError):
    pass


class MissingLabel(EvaluationError):
    pass


# --- service ---------------------------------------------------------------

class NotGenerated(VnaError):
    pass


class GenerationFailed(VnaError):
    pass
