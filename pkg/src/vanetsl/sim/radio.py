"""Distance-only reception model.

Reception is certain up to ``r_full``, impossible from ``r_cut`` on, and in
between follows a Gaussian tail centred on the midpoint, rescaled so the
curve is continuous at both ends. ``spread`` is the Gaussian's standard
deviation in meters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def _gauss_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


@dataclass(frozen=True)
class RadioModel:
    r_full: float = 300.0
    r_cut: float = 500.0
    spread: float = 50.0

    def __post_init__(self):
        if not 0 < self.r_full < self.r_cut:
            raise ValueError(f"need 0 < r_full < r_cut, got {self.r_full}, {self.r_cut}")
        if not self.spread > 0:
            raise ValueError(f"spread must be positive, got {self.spread}")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.r_full + self.r_cut)

    def reception_probability(self, distance: float) -> float:
        if distance < 0 or math.isnan(distance):
            raise ValueError(f"distance must be non-negative, got {distance}")
        if distance <= self.r_full:
            return 1.0
        if distance >= self.r_cut:
            return 0.0
        half = 0.5 * (self.r_cut - self.r_full)
        lo = _gauss_sf(half / self.spread)
        p = (_gauss_sf((distance - self.midpoint) / self.spread) - lo) / (1.0 - 2.0 * lo)
        return min(max(p, 0.0), 1.0)
