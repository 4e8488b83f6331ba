"""Parameter sweeps: run every (value, repetition) pair and write CSVs.

Each sweep writes ``<name>_raw.csv`` (one row per run and detector) and
``<name>_aggregate.csv`` (one row per value and detector). Rows are sorted
by parameter value, then seed, so output does not depend on ``jobs``.
"""

from __future__ import annotations

import csv
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .config import ScenarioConfig, SweepSpec
from .detectors import DETECTOR_LABELS
from .metrics import AggregateRow, RunResult, aggregate, fn_rate, fp_rate, tp_rate
from .sim.run import run_scenario

log = logging.getLogger(__name__)

RAW_HEADER = [
    "detector",
    "param_name",
    "param_value",
    "seed",
    "realized_attacker_fraction",
    "received_benign",
    "received_malicious",
    "fp_rate",
    "tp_rate",
    "fn_rate",
]
AGGREGATE_HEADER = [h for h in RAW_HEADER if h != "seed"] + ["runs", "weighted"]


def _sort_key(value):
    return (0, float(value), "") if isinstance(value, (int, float)) else (1, 0.0, str(value))


def format_value(value) -> str:
    if isinstance(value, float):
        return f"{value:g}"
    return str(value)


def _rate(x: float | None) -> str:
    return "" if x is None else f"{x:.6f}"


@dataclass(frozen=True)
class _Job:
    spec: SweepSpec
    value: object
    run_index: int
    eventlog_dir: str | None


def _run_job(job: _Job) -> RunResult:
    config = job.spec.config_for(job.value, job.run_index)
    if job.eventlog_dir is None:
        return run_scenario(config, param_name=job.spec.param, param_value=job.value)
    path = os.path.join(
        job.eventlog_dir, f"{job.spec.name}_eventlog_{format_value(job.value)}_{config.seed}.csv".replace(":", "-")
    )
    with open(path, "w", newline="") as fh:
        return run_scenario(config, param_name=job.spec.param, param_value=job.value, eventlog=fh)


def run_points(spec: SweepSpec, jobs: int = 1, eventlog_dir: str | None = None) -> dict[object, list[RunResult]]:
    """All runs of ``spec`` grouped by parameter value, each group sorted by seed."""
    work = [_Job(spec, v, i, eventlog_dir) for v in spec.values for i in range(spec.repetitions)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_job, work))
    else:
        results = []
        for job in work:
            log.info("%s: %s=%s run %d", spec.name, spec.param, job.value, job.run_index)
            results.append(_run_job(job))
    grouped: dict[object, list[RunResult]] = {}
    for r in results:
        grouped.setdefault(r.param_value, []).append(r)
    ordered = {}
    for v in sorted(grouped, key=_sort_key):
        ordered[v] = sorted(grouped[v], key=lambda r: r.seed)
    return ordered


def raw_rows(points: dict[object, list[RunResult]]) -> Iterable[list[str]]:
    for runs in points.values():
        for r in runs:
            for label in DETECTOR_LABELS:
                c = r.counts[label]
                yield [
                    label,
                    r.param_name,
                    format_value(r.param_value),
                    str(r.seed),
                    f"{r.realized_attacker_fraction:.6f}",
                    str(c.received_benign),
                    str(c.received_malicious),
                    _rate(fp_rate(c) if c.received_benign else None),
                    _rate(tp_rate(c)),
                    _rate(fn_rate(c) if c.received_malicious else None),
                ]


def aggregate_rows(points: dict[object, list[RunResult]], weighted: bool = True) -> Iterable[list[str]]:
    for runs in points.values():
        summary = aggregate(runs, weighted=weighted)
        for label in DETECTOR_LABELS:
            row: AggregateRow = summary[label]
            yield [
                label,
                row.param_name,
                format_value(row.param_value),
                f"{row.realized_attacker_fraction:.6f}",
                str(row.counts.received_benign),
                str(row.counts.received_malicious),
                _rate(row.fp_rate),
                _rate(row.tp_rate),
                _rate(row.fn_rate),
                str(row.runs),
                "1" if row.weighted else "0",
            ]


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def run_sweep(spec: SweepSpec, out_dir: str, jobs: int = 1, emit_eventlog: bool = False) -> tuple[str, str]:
    """Run ``spec`` and write its raw and aggregate CSVs; returns both paths."""
    os.makedirs(out_dir, exist_ok=True)
    points = run_points(spec, jobs=jobs, eventlog_dir=out_dir if emit_eventlog else None)
    raw_path = os.path.join(out_dir, f"{spec.name}_raw.csv")
    agg_path = os.path.join(out_dir, f"{spec.name}_aggregate.csv")
    write_csv(raw_path, RAW_HEADER, raw_rows(points))
    write_csv(agg_path, AGGREGATE_HEADER, aggregate_rows(points, spec.weighted))
    return raw_path, agg_path


# presets ------------------------------------------------------------------

_FRACTIONS = (0.01, 0.1, 0.2, 0.3)


def _calibration_base(base: ScenarioConfig) -> ScenarioConfig:
    return base.replace(density="low", strategy="fixed:300,300", attacker_probability=0.01)


def preset(name: str, base: ScenarioConfig | None = None, repetitions: int = 5) -> list[SweepSpec]:
    """Sweeps reproducing one figure of the reference evaluation.

    ``fig_parameters``: ART threshold, exchange threshold and sigma sweeps.
    ``fig_random``: random-position attackers at low and high density.
    ``fig_random_offset`` / ``fig_fixed_offset``: the (300,300) and (50,50)
    extremes of each modification strategy. Fraction sweeps vary the
    attacker probability over the reference set.
    """
    base = base or ScenarioConfig()
    if name == "fig_parameters":
        cal = _calibration_base(base)
        return [
            SweepSpec(f"{name}_art_threshold", "art_threshold", (200.0, 250.0, 300.0, 350.0, 400.0, 450.0, 500.0), repetitions, cal),
            SweepSpec(f"{name}_exchange_threshold", "exchange_threshold", (200.0, 250.0, 300.0, 350.0, 400.0, 450.0), repetitions, cal),
            SweepSpec(f"{name}_sigma", "sigma", (25.0, 50.0, 75.0, 100.0, 125.0, 150.0), repetitions, cal),
        ]
    if name == "fig_random":
        return [
            SweepSpec(
                f"{name}_{density}",
                "attacker_probability",
                _FRACTIONS,
                repetitions,
                base.replace(density=density, strategy="random_position"),
            )
            for density in ("low", "high")
        ]
    if name in ("fig_random_offset", "fig_fixed_offset"):
        specs = []
        for extreme in (300, 50):
            strategy = f"random_offset:{extreme}" if name == "fig_random_offset" else f"fixed:{extreme},{extreme}"
            specs.append(
                SweepSpec(f"{name}_{extreme}", "attacker_probability", _FRACTIONS, repetitions, base.replace(strategy=strategy))
            )
        return specs
    raise KeyError(f"unknown sweep preset {name!r}; choose from {', '.join(PRESETS)}")


PRESETS = ("fig_parameters", "fig_random", "fig_random_offset", "fig_fixed_offset")
