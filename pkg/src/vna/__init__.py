"""vna: deterministic multimodal noise injection and robustness evaluation.

Perturbs audio/video/text/feature inputs per a declarative noise config,
sweeps noise severity over defined intervals against any external
predictor, and reports interval-robustness scores and
accuracy-imperfection curves.  See README.md for the CLI and HTTP service.
"""

__version__ = "0.1.0"

from .config import NoiseItem, NoiseSpec, RandomSpecParams, generate_random, validate  # noqa: F401
from .errors import VnaError  # noqa: F401
