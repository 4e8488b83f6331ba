"""Per-beacon verdicts: merge detector opinions and classify."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

from .detectors import (
    ART,
    EART,
    EXCHANGE,
    MERGED,
    EartConfig,
    Evidence,
    ExchangeConfig,
    eart_from_distance,
    exchange_opinion,
    exchange_samples,
)
from .opinion import Opinion, OpinionError, expectation, fuse_all

DEFAULT_DECISION_THRESHOLD = 0.5


class Classification(enum.Enum):
    BENIGN = "Benign"
    MALICIOUS = "Malicious"

    @property
    def flagged(self) -> bool:
        return self is Classification.MALICIOUS


def merge(opinions: Sequence[Opinion]) -> Opinion:
    """Fuse detector opinions about one beacon, in the given order."""
    if not opinions:
        raise OpinionError("merge needs at least one opinion")
    return fuse_all(opinions)


def classify(op: Opinion, decision_threshold: float = DEFAULT_DECISION_THRESHOLD) -> Classification:
    """Malicious iff the expectation is strictly below the threshold."""
    if not 0.0 < decision_threshold < 1.0:
        raise ValueError(f"decision threshold must be in (0, 1), got {decision_threshold}")
    if expectation(op) < decision_threshold:
        return Classification.MALICIOUS
    return Classification.BENIGN


def classify_binary(flag: bool) -> Classification:
    return Classification.MALICIOUS if flag else Classification.BENIGN


@dataclass(frozen=True)
class Verdict:
    """Detector outputs for a single received beacon.

    ``opinions`` holds the opinion-emitting detectors in merge order; the
    binary ART flag has no opinion and is carried separately.
    """

    opinions: Mapping[str, Opinion]
    merged: Opinion
    classification: Mapping[str, Classification]
    expectations: Mapping[str, float]

    @property
    def flags(self) -> dict[str, bool]:
        return {k: c.flagged for k, c in self.classification.items()}


def build_verdict(
    opinions: Mapping[str, Opinion],
    art_flag: bool | None = None,
    decision_threshold: float = DEFAULT_DECISION_THRESHOLD,
) -> Verdict:
    merged = merge(list(opinions.values()))
    classification: dict[str, Classification] = {}
    expectations: dict[str, float] = {}
    if art_flag is not None:
        classification[ART] = classify_binary(art_flag)
    for label, op in opinions.items():
        classification[label] = classify(op, decision_threshold)
        expectations[label] = expectation(op)
    classification[MERGED] = classify(merged, decision_threshold)
    expectations[MERGED] = expectation(merged)
    return Verdict(dict(opinions), merged, classification, expectations)


@dataclass(frozen=True)
class DetectionSuite:
    """The configured detector set applied to every received beacon."""

    art_threshold: float = 400.0
    eart: EartConfig = EartConfig()
    exchange: ExchangeConfig = ExchangeConfig()
    decision_threshold: float = DEFAULT_DECISION_THRESHOLD

    @classmethod
    def from_config(cls, config) -> "DetectionSuite":
        return cls(
            art_threshold=config.art_threshold,
            eart=EartConfig(config.art_threshold, config.sigma),
            exchange=ExchangeConfig(config.exchange_threshold, config.decay_constant, config.table_ttl),
            decision_threshold=config.decision_threshold,
        )

    def evaluate(self, evidence: Evidence) -> Verdict:
        delta = evidence.claimed_distance
        eart = eart_from_distance(delta, self.eart.threshold_theta, self.eart.sigma)
        exch = exchange_opinion(*exchange_samples(evidence, self.exchange), self.exchange)
        return build_verdict({EART: eart, EXCHANGE: exch}, delta > self.art_threshold, self.decision_threshold)
