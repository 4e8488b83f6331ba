"""Per-message detection rates and their aggregation over runs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .detectors import DETECTOR_LABELS


@dataclass
class DetectorCounts:
    received_benign: int = 0
    received_malicious: int = 0
    flagged_benign: int = 0  # false positives
    flagged_malicious: int = 0  # true positives

    def __post_init__(self):
        if min(self.received_benign, self.received_malicious, self.flagged_benign, self.flagged_malicious) < 0:
            raise ValueError("counts must be non-negative")
        if self.flagged_benign > self.received_benign or self.flagged_malicious > self.received_malicious:
            raise ValueError("flagged counts exceed received counts")

    def add(self, is_attacker: bool, flagged: bool) -> None:
        if is_attacker:
            self.received_malicious += 1
            self.flagged_malicious += flagged
        else:
            self.received_benign += 1
            self.flagged_benign += flagged

    def __iadd__(self, other: "DetectorCounts") -> "DetectorCounts":
        self.received_benign += other.received_benign
        self.received_malicious += other.received_malicious
        self.flagged_benign += other.flagged_benign
        self.flagged_malicious += other.flagged_malicious
        return self


class ConfusionCounts(dict):
    """``{detector label: DetectorCounts}``."""

    def __init__(self, labels: Sequence[str] = DETECTOR_LABELS):
        super().__init__((label, DetectorCounts()) for label in labels)

    def record(self, is_attacker: bool, flags: Mapping[str, bool]) -> None:
        for label, flagged in flags.items():
            self[label].add(is_attacker, flagged)


def fp_rate(c: DetectorCounts) -> float:
    """Flagged benign messages over received benign messages (0 if none)."""
    return c.flagged_benign / c.received_benign if c.received_benign else 0.0


def fn_rate(c: DetectorCounts) -> float:
    """Unflagged attacker messages over received attacker messages (0 if none)."""
    if not c.received_malicious:
        return 0.0
    return (c.received_malicious - c.flagged_malicious) / c.received_malicious


def tp_rate(c: DetectorCounts) -> float | None:
    """``1 - fn_rate``; None when no attacker message was received."""
    if not c.received_malicious:
        return None
    return 1.0 - fn_rate(c)


@dataclass
class RunResult:
    param_name: str
    param_value: object
    seed: int
    realized_attacker_fraction: float
    counts: ConfusionCounts
    vehicles_spawned: int = 0
    attackers_spawned: int = 0

    def __post_init__(self):
        if not 0.0 <= self.realized_attacker_fraction <= 1.0:
            raise ValueError(f"attacker fraction {self.realized_attacker_fraction} outside [0, 1]")

    def rates(self, label: str) -> dict[str, float | None]:
        c = self.counts[label]
        return {
            "fp_rate": fp_rate(c) if c.received_benign else None,
            "tp_rate": tp_rate(c),
            "fn_rate": fn_rate(c) if c.received_malicious else None,
        }


@dataclass
class AggregateRow:
    label: str
    param_name: str
    param_value: object
    runs: int
    realized_attacker_fraction: float
    counts: DetectorCounts
    fp_rate: float | None
    tp_rate: float | None
    fn_rate: float | None
    weighted: bool = True


def _mean(xs):
    xs = [x for x in xs if x is not None]
    return sum(xs) / len(xs) if xs else None


def aggregate(results: Sequence[RunResult], weighted: bool = True) -> dict[str, AggregateRow]:
    """Combine runs of one parameter point, per detector.

    With ``weighted`` the FP rate is averaged with weights equal to each
    run's benign message count and TP/FN with the attacker message count,
    which is the pooled ratio. Otherwise runs count equally; runs with an
    undefined rate are skipped either way.
    """
    if not results:
        raise ValueError("aggregate needs at least one run")
    first = results[0]
    out = {}
    for label in first.counts:
        total = DetectorCounts()
        for r in results:
            total += r.counts[label]
        if weighted:
            fp = fp_rate(total) if total.received_benign else None
            tp = tp_rate(total)
            fn = fn_rate(total) if total.received_malicious else None
        else:
            per_run = [r.rates(label) for r in results]
            fp = _mean(p["fp_rate"] for p in per_run)
            tp = _mean(p["tp_rate"] for p in per_run)
            fn = _mean(p["fn_rate"] for p in per_run)
        out[label] = AggregateRow(
            label=label,
            param_name=first.param_name,
            param_value=first.param_value,
            runs=len(results),
            realized_attacker_fraction=sum(r.realized_attacker_fraction for r in results) / len(results),
            counts=total,
            fp_rate=fp,
            tp_rate=tp,
            fn_rate=fn,
            weighted=weighted,
        )
    return out
