"""``simulate`` command line entry point.

Exit codes: 0 success, 2 invalid configuration, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .config import ConfigError, ScenarioConfig, SweepSpec, parse_config
from .sweep import PRESETS, preset, run_sweep

log = logging.getLogger("vanetsl")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="simulate",
        description="Run VANET position-verification scenarios and sweeps, writing CSV results.",
    )
    p.add_argument("--config", metavar="FILE", help="key=value config file (defaults apply when omitted)")
    p.add_argument("--sweep", metavar="NAME", choices=PRESETS, help="figure preset to run instead of the config's own sweep")
    p.add_argument("--out", metavar="DIR", default="results", help="output directory (default: results)")
    p.add_argument("--jobs", metavar="N", type=int, default=1, help="concurrent runs (default: 1)")
    p.add_argument("--seed", metavar="S", type=int, help="base seed; run i uses S + i")
    p.add_argument("--emit-eventlog", action="store_true", help="write one CSV line per reception for every run")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def load_specs(args) -> list[SweepSpec]:
    text = ""
    if args.config:
        with open(args.config) as fh:
            text = fh.read()
    parsed = parse_config(text)
    if isinstance(parsed, ScenarioConfig):
        base, spec = parsed, None
    else:
        base, spec = parsed.base, parsed
    if args.seed is not None:
        base = base.replace(seed=args.seed)
    if args.sweep:
        reps = spec.repetitions if spec is not None else 5
        return preset(args.sweep, base, repetitions=reps)
    if spec is None:
        return [SweepSpec.single(base)]
    return [SweepSpec(spec.name, spec.param, spec.values, spec.repetitions, base, spec.weighted)]


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.jobs < 1:
        print("simulate: --jobs must be >= 1", file=sys.stderr)
        return 2
    try:
        specs = load_specs(args)
    except ConfigError as exc:
        print(f"simulate: invalid config: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"simulate: cannot read config: {exc}", file=sys.stderr)
        return 3
    try:
        for spec in specs:
            raw, agg = run_sweep(spec, args.out, jobs=args.jobs, emit_eventlog=args.emit_eventlog)
            log.info("wrote %s and %s", raw, agg)
    except OSError as exc:
        print(f"simulate: I/O failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
