"""Scenario and sweep configuration, parsed from ``key=value`` text.

Blank lines and ``#`` comments are ignored. Unknown keys, type mismatches
and constraint violations raise :class:`ConfigError` carrying the line
number. Any key may also be overridden from the environment as
``VANETSL_<KEY>`` (upper case).
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field, fields
from typing import Any, Mapping

from .attackers import parse_strategy

ENV_PREFIX = "VANETSL_"

#: attacker probabilities evaluated in the original study
REFERENCE_ATTACKER_PROBABILITIES = (0.01, 0.1, 0.2, 0.3)

#: density label -> (initial vehicles, arrivals per second)
DENSITY_PRESETS = {
    "low": (120, 0.2),
    "medium": (240, 0.4),
    "high": (360, 0.6),
}

SWEEPABLE = ("art_threshold", "exchange_threshold", "sigma", "density", "attacker_probability", "strategy")
NO_PARAM = "none"


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class ScenarioConfig:
    # world and traffic
    world_width: float = 4000.0
    world_height: float = 4000.0
    grid_spacing: float = 250.0
    density: str = "medium"
    arrival_rate: float | None = None
    initial_vehicles: int | None = None
    speed_min: float = 10.0
    speed_max: float = 17.0
    # attackers
    attacker_probability: float = 0.1
    strategy: str = "fixed:300,300"
    # timing
    duration: float = 360.0
    time_step: float = 0.1
    beacon_rate: float = 1.0
    seed: int = 1
    # radio
    r_full: float = 300.0
    r_cut: float = 500.0
    radio_spread: float = 50.0
    # detectors
    art_threshold: float = 400.0
    sigma: float = 100.0
    exchange_threshold: float = 350.0
    decay_constant: float = 10.0
    table_ttl: float = 3.0
    decision_threshold: float = 0.5
    exchange_enabled: bool = True
    strict_mode: bool = False

    def __post_init__(self):
        check_scenario(self)

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        return (0.0, 0.0, self.world_width, self.world_height)

    @property
    def resolved_arrival_rate(self) -> float:
        return DENSITY_PRESETS[self.density][1] if self.arrival_rate is None else self.arrival_rate

    @property
    def resolved_initial_vehicles(self) -> int:
        return DENSITY_PRESETS[self.density][0] if self.initial_vehicles is None else self.initial_vehicles

    @property
    def ticks_per_beacon(self) -> int:
        return ticks_per_beacon(self.beacon_rate, self.time_step)

    @property
    def n_ticks(self) -> int:
        return int(round(self.duration / self.time_step))

    def replace(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)


def ticks_per_beacon(beacon_rate: float, time_step: float) -> int:
    ticks = 1.0 / (beacon_rate * time_step)
    n = int(round(ticks))
    if n < 1 or abs(ticks - n) > 1e-6:
        raise ConfigError(f"beacon interval {1 / beacon_rate} s is not a multiple of time_step {time_step} s")
    return n


def check_scenario(c: ScenarioConfig) -> None:
    def need(ok: bool, msg: str):
        if not ok:
            raise ConfigError(msg)

    need(c.world_width > 0 and c.world_height > 0, "world dimensions must be positive")
    need(0 < c.grid_spacing <= min(c.world_width, c.world_height), "grid_spacing must fit the world")
    need(c.density in DENSITY_PRESETS, f"density must be one of {sorted(DENSITY_PRESETS)}")
    need(c.arrival_rate is None or c.arrival_rate >= 0, "arrival_rate must be >= 0")
    need(c.initial_vehicles is None or c.initial_vehicles >= 0, "initial_vehicles must be >= 0")
    need(0 < c.speed_min <= c.speed_max, "need 0 < speed_min <= speed_max")
    need(0.0 <= c.attacker_probability <= 1.0, "attacker_probability must be in [0, 1]")
    if c.strict_mode:
        need(
            any(abs(c.attacker_probability - p) < 1e-12 for p in REFERENCE_ATTACKER_PROBABILITIES),
            f"attacker_probability must be one of {REFERENCE_ATTACKER_PROBABILITIES} in strict_mode mode",
        )
    need(c.duration > 0, "duration must be positive")
    need(c.time_step > 0, "time_step must be positive")
    need(c.beacon_rate > 0, "beacon_rate must be positive")
    need(not c.strict_mode or c.beacon_rate == 1.0, "beacon_rate is fixed at 1 Hz in strict_mode mode")
    ticks_per_beacon(c.beacon_rate, c.time_step)
    need(0 < c.r_full < c.r_cut, "need 0 < r_full < r_cut")
    need(c.radio_spread > 0, "radio_spread must be positive")
    need(c.art_threshold > 0, "art_threshold must be positive")
    need(c.sigma > 0, "sigma must be positive")
    need(c.exchange_threshold > 0, "exchange_threshold must be positive")
    need(c.decay_constant > 0, "decay_constant must be positive")
    need(c.table_ttl > 0, "table_ttl must be positive")
    need(0 < c.decision_threshold < 1, "decision_threshold must be in (0, 1)")
    try:
        parse_strategy(c.strategy)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


@dataclass(frozen=True)
class SweepSpec:
    name: str
    param: str
    values: tuple
    repetitions: int = 5
    base: ScenarioConfig = field(default_factory=ScenarioConfig)
    weighted: bool = True

    def __post_init__(self):
        if self.param not in SWEEPABLE and self.param != NO_PARAM:
            raise ConfigError(f"cannot sweep {self.param!r}; choose from {', '.join(SWEEPABLE)}")
        if not self.values:
            raise ConfigError("sweep value list is empty")
        if self.repetitions < 1:
            raise ConfigError("repetitions must be >= 1")
        for v in self.values:
            self.config_for(v, 0)

    def seed_for(self, run_index: int) -> int:
        return self.base.seed + run_index

    def config_for(self, value, run_index: int) -> ScenarioConfig:
        if self.param == NO_PARAM:
            return self.base.replace(seed=self.seed_for(run_index))
        return self.base.replace(**{self.param: value, "seed": self.seed_for(run_index)})

    @classmethod
    def single(cls, base: ScenarioConfig, repetitions: int = 1, name: str = "scenario") -> "SweepSpec":
        """A one-point "sweep" that just repeats ``base``."""
        return cls(name, NO_PARAM, ("",), repetitions, base)


# parsing ------------------------------------------------------------------

_SCENARIO_TYPES = {f.name: f.type for f in fields(ScenarioConfig)}
_SWEEP_KEYS = {"sweep_name", "sweep_param", "sweep_values", "repetitions", "weighted_average"}


def _to_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _coerce(key: str, text: str) -> Any:
    kind = _SCENARIO_TYPES[key]
    text = text.strip()
    if "None" in kind and text.lower() in ("", "none", "auto"):
        return None
    if kind.startswith("bool"):
        return _to_bool(text)
    if kind.startswith("int"):
        return int(text)
    if kind.startswith("float"):
        return float(text)
    return text


def _coerce_value(param: str, text: str):
    if param in ("density", "strategy"):
        return text.strip()
    return float(text)


def parse_pairs(text: str) -> list[tuple[int, str, str]]:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"expected key=value, got {raw.strip()!r}", lineno)
        pairs.append((lineno, key.strip(), value.strip()))
    return pairs


def parse_config(text: str, env: Mapping[str, str] | None = None, sweep: bool = False):
    """Parse config text into a :class:`ScenarioConfig`, or a :class:`SweepSpec`
    when ``sweep`` is set or any ``sweep_*`` key is present.

    ``env`` defaults to ``os.environ``; pass ``{}`` to ignore overrides.
    """
    env = os.environ if env is None else env
    pairs = parse_pairs(text)
    for key in sorted(_SCENARIO_TYPES.keys() | _SWEEP_KEYS):
        env_key = ENV_PREFIX + key.upper()
        if env_key in env:
            pairs.append((None, key, env[env_key]))

    scenario: dict[str, Any] = {}
    sweep_kv: dict[str, tuple[int | None, str]] = {}
    key_lines: dict[str, int | None] = {}
    for lineno, key, value in pairs:
        if key in _SWEEP_KEYS:
            sweep_kv[key] = (lineno, value)
            continue
        if key not in _SCENARIO_TYPES:
            raise ConfigError(f"unknown key {key!r}", lineno)
        try:
            scenario[key] = _coerce(key, value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {exc}", lineno) from None
        key_lines[key] = lineno
    try:
        base = ScenarioConfig(**scenario)
    except ConfigError as exc:
        blamed = [ln for k, ln in key_lines.items() if k in str(exc) and ln is not None]
        raise ConfigError(str(exc), max(blamed) if blamed else None) from None
    if not (sweep or sweep_kv):
        return base

    def get(key, default=None):
        return sweep_kv.get(key, (None, default))

    line, param = get("sweep_param")
    if param is None:
        raise ConfigError("sweep_param is required for a sweep")
    vline, raw_values = get("sweep_values", "")
    try:
        sep = ";" if param == "strategy" else ","  # strategy specs contain commas
        values = tuple(_coerce_value(param, v) for v in raw_values.split(sep) if v.strip())
    except ValueError as exc:
        raise ConfigError(f"bad sweep value: {exc}", vline) from None
    rline, reps = get("repetitions", "5")
    wline, weighted = get("weighted_average", "true")
    try:
        return SweepSpec(
            name=get("sweep_name", param)[1],
            param=param,
            values=values,
            repetitions=int(reps),
            base=base,
            weighted=_to_bool(weighted),
        )
    except ConfigError as exc:
        raise ConfigError(str(exc), line) from None
    except ValueError as exc:
        raise ConfigError(str(exc), rline or wline) from None
