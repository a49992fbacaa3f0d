"""Shared time-segment snapping.

Audio and video derive their index ranges from the same start/end seconds
with the same rule (floor for start, ceil for end), so boundaries agree
across streams to within one tick of the coarser rate.  The epsilon guard
keeps exact tick multiples stable against float representation error
(e.g. 200 * (1/25) = 8.000000000000002 must still map to tick 200).
"""

from __future__ import annotations

import math

_EPS = 1e-9


def seg_to_ticks(start_s: float, end_s: float, rate: float) -> tuple[int, int]:
    """Half-open tick range [a, b) covered by the segment at the given rate."""
    a = math.floor(start_s * rate + _EPS)
    b = math.ceil(end_s * rate - _EPS)
    return a, b


def clamp_ticks(a: int, b: int, n: int) -> tuple[int, int]:
    return max(a, 0), min(b, n)
