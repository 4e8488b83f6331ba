"""Position-plausibility detectors that turn beacon evidence into opinions.

Three detectors are provided:

* ``ART``: binary acceptance-range threshold on the claimed distance.
* ``eART``: the same test expressed as an opinion whose uncertainty is a
  Gaussian bump centred on the threshold, so claims near the edge of the
  radio range carry little weight.
* ``Exchange``: cooperative check against neighbors' piggybacked neighbor
  lists, with uncertainty shrinking as more neighbors provide samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .neighbors import NeighborEntry
from .opinion import DEFAULT_BASE_RATE, Opinion, OpinionError, vacuous

ART = "ART"
EART = "eART"
EXCHANGE = "Exchange"
MERGED = "Merged"
DETECTOR_LABELS = (ART, EART, EXCHANGE, MERGED)


@dataclass(frozen=True)
class EartConfig:
    threshold_theta: float = 400.0
    sigma: float = 100.0

    def __post_init__(self):
        if not self.threshold_theta > 0:
            raise ValueError(f"threshold_theta must be positive, got {self.threshold_theta}")
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


@dataclass(frozen=True)
class ExchangeConfig:
    distance_threshold: float = 350.0
    decay_constant: float = 10.0
    table_ttl: float = 3.0

    def __post_init__(self):
        for name in ("distance_threshold", "decay_constant", "table_ttl"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


@dataclass(frozen=True)
class Evidence:
    """What a receiver knows when a beacon arrives.

    ``neighbor_table`` is the receiver's table as it stood before this
    beacon was stored.
    """

    sender_id: int
    claimed_position: tuple[float, float]
    receiver_position: tuple[float, float]
    neighbor_table: Sequence[NeighborEntry] = ()
    now: float = 0.0

    @property
    def claimed_distance(self) -> float:
        cx, cy = self.claimed_position
        rx, ry = self.receiver_position
        delta = math.hypot(cx - rx, cy - ry)
        if not math.isfinite(delta):
            raise OpinionError(
                f"non-finite positions: claimed={self.claimed_position}, receiver={self.receiver_position}"
            )
        return delta


def gaussian_uncertainty(delta: float, theta: float, sigma: float) -> float:
    return math.exp(-((delta - theta) ** 2) / (2.0 * sigma * sigma))


def eart_from_distance(delta: float, theta: float, sigma: float, base_rate: float = DEFAULT_BASE_RATE) -> Opinion:
    """Opinion for a claimed distance ``delta`` against range ``theta``.

    Certainty ``1 - u`` goes to belief on the near side (``delta <= theta``)
    and to disbelief on the far side.
    """
    if not math.isfinite(delta):
        raise OpinionError(f"non-finite distance {delta!r}")
    u = gaussian_uncertainty(delta, theta, sigma)
    if delta <= theta:
        return Opinion(1.0 - u, 0.0, u, base_rate)
    return Opinion(0.0, 1.0 - u, u, base_rate)


def eart_opinion(evidence: Evidence, config: EartConfig = EartConfig()) -> Opinion:
    return eart_from_distance(evidence.claimed_distance, config.threshold_theta, config.sigma)


def art_binary(evidence: Evidence, threshold: float = 400.0) -> bool:
    """True when the claimed position lies beyond the acceptance range."""
    if not threshold > 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    return evidence.claimed_distance > threshold


def exchange_samples(evidence: Evidence, config: ExchangeConfig = ExchangeConfig()) -> tuple[int, int]:
    """Count ``(benign, total)`` samples from the receiver's neighbor table.

    Every fresh neighbor (other than the sender) whose last claimed position
    is within ``distance_threshold`` of the beacon's claimed position should
    have heard the sender; it is a benign sample iff its piggybacked list
    contains the sender.
    """
    cx, cy = evidence.claimed_position
    limit = config.distance_threshold
    ttl = config.table_ttl
    now = evidence.now
    sender = evidence.sender_id
    benign = total = 0
    for entry in evidence.neighbor_table:
        if entry.neighbor_id == sender or now - entry.timestamp >= ttl:
            continue
        px, py = entry.position
        if math.hypot(px - cx, py - cy) <= limit:
            total += 1
            if sender in entry.neighbor_ids:
                benign += 1
    return benign, total


def exchange_opinion(benign: int, total: int, config: ExchangeConfig = ExchangeConfig()) -> Opinion:
    """Opinion from neighbor-exchange samples.

    Uncertainty is ``exp(-total / decay_constant)``; the remaining mass is
    split between belief and disbelief in the ratio benign : (total - benign).
    """
    if benign < 0 or total < 0:
        raise OpinionError(f"negative sample counts ({benign}, {total})")
    if benign > total:
        raise OpinionError(f"benign count {benign} exceeds total {total}")
    if total == 0:
        return vacuous()
    u = math.exp(-total / config.decay_constant)
    certainty = 1.0 - u
    return Opinion(benign / total * certainty, (total - benign) / total * certainty, u)
