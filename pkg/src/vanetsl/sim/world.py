"""Vehicles, beacons and the single-hop broadcast medium."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

from ..attackers import RandomPosition, Strategy, parse_strategy
from ..config import ScenarioConfig
from ..detectors import Evidence
from ..neighbors import NeighborTable
from .mobility import GridMobility
from .radio import RadioModel


@dataclass(frozen=True)
class Beacon:
    sender_id: int
    claimed_position: tuple[float, float]
    timestamp: float
    neighbor_ids: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.sender_id in self.neighbor_ids:
            raise ValueError(f"beacon of {self.sender_id} lists its own id")


@dataclass(slots=True, eq=False)
class Vehicle:
    id: int
    x: float
    y: float
    hx: int
    hy: int
    speed: float
    tx: float = 0.0  # next intersection
    ty: float = 0.0
    is_attacker: bool = False
    strategy: Strategy | None = None
    next_beacon_tick: int = 0
    table: NeighborTable = field(default_factory=NeighborTable)

    @property
    def true_position(self) -> tuple[float, float]:
        return (self.x, self.y)

    @property
    def velocity(self) -> tuple[float, float]:
        return (self.hx * self.speed, self.hy * self.speed)


class Reception(NamedTuple):
    receiver_id: int
    true_distance: float
    evidence: Evidence


class World:
    """Mutable simulation state advanced in fixed ticks of ``config.time_step``.

    Randomness comes from independent streams spawned from the config seed
    (mobility, radio, spawning, attacks), so a config fully determines a run.
    """

    def __init__(self, config: ScenarioConfig, populate: bool = True):
        self.config = config
        self.dt = config.time_step
        self.period = config.ticks_per_beacon
        self.mobility = GridMobility(config.bounds, config.grid_spacing)
        self.radio = RadioModel(config.r_full, config.r_cut, config.radio_spread)
        strategy = parse_strategy(config.strategy)
        if isinstance(strategy, RandomPosition):
            strategy = strategy.within(config.bounds)
        self.strategy = strategy
        ss = np.random.SeedSequence(config.seed)
        self.rng_move, self.rng_radio, self.rng_spawn, self.rng_attack = (
            np.random.Generator(np.random.PCG64(s)) for s in ss.spawn(4)
        )
        self.tick = 0
        self.vehicles: dict[int, Vehicle] = {}
        self.spawned = 0
        self.spawned_attackers = 0
        self._next_id = 0
        self._cache: tuple[np.ndarray, np.ndarray, list[Vehicle]] | None = None
        if populate:
            for _ in range(config.resolved_initial_vehicles):
                self._spawn(*self.mobility.random_road_point(self.rng_spawn))

    @property
    def now(self) -> float:
        return self.tick * self.dt

    # population ---------------------------------------------------------

    def _spawn(self, x, y, hx, hy, speed=None, is_attacker=None, strategy=None, phase=None) -> Vehicle:
        rng = self.rng_spawn
        if speed is None:
            speed = float(rng.uniform(self.config.speed_min, self.config.speed_max))
        if is_attacker is None:
            is_attacker = bool(rng.random() < self.config.attacker_probability)
        if phase is None:
            phase = int(rng.integers(self.period))
        x, y = self.mobility.snap(x, y, hx, hy)
        v = Vehicle(
            id=self._next_id,
            x=x,
            y=y,
            hx=hx,
            hy=hy,
            speed=speed,
            is_attacker=is_attacker,
            strategy=(strategy or self.strategy) if is_attacker else None,
            next_beacon_tick=self.tick + phase,
            table=NeighborTable(self.config.table_ttl),
        )
        v.tx, v.ty = self.mobility.next_node(x, y, hx, hy)
        self._next_id += 1
        self.vehicles[v.id] = v
        self.spawned += 1
        self.spawned_attackers += is_attacker
        self._cache = None
        return v

    def add_vehicle(self, position, velocity, is_attacker=False, strategy=None, phase=0) -> Vehicle:
        """Place a vehicle explicitly; ``velocity`` must be axis-aligned."""
        vx, vy = velocity
        if vx and vy:
            raise ValueError("grid vehicles move along one axis at a time")
        speed = abs(vx) + abs(vy)
        hx = int(math.copysign(1, vx)) if vx else 0
        hy = int(math.copysign(1, vy)) if vy else 0
        if not (hx or hy):
            hx = 1
        return self._spawn(position[0], position[1], hx, hy, speed, is_attacker, strategy, phase)

    def __len__(self) -> int:
        return len(self.vehicles)

    # time ---------------------------------------------------------------

    def step(self) -> "World":
        """Advance one tick: move, drop departed vehicles, admit arrivals."""
        self.tick += 1
        move_rng = self.rng_move
        for v in self.vehicles.values():
            self.mobility.advance(v, self.dt, move_rng)
        gone = [vid for vid, v in self.vehicles.items() if not self.mobility.inside(v.x, v.y)]
        for vid in gone:
            del self.vehicles[vid]
        rate = self.config.resolved_arrival_rate
        if rate > 0:
            for _ in range(int(self.rng_spawn.poisson(rate * self.dt))):
                self._spawn(*self.mobility.random_entry(self.rng_spawn))
        self._cache = None
        return self

    def due(self) -> list[Vehicle]:
        return [v for v in self.vehicles.values() if v.next_beacon_tick <= self.tick]

    # radio --------------------------------------------------------------

    def emit_beacon(self, v: Vehicle) -> Beacon:
        now = self.now
        if v.is_attacker and v.strategy is not None:
            claimed = v.strategy.apply((v.x, v.y), self.rng_attack)
        else:
            claimed = (v.x, v.y)
        ids = v.table.fresh_ids(now) - {v.id}
        v.next_beacon_tick += self.period
        return Beacon(v.id, claimed, now, ids)

    def _positions(self):
        if self._cache is None:
            vs = list(self.vehicles.values())
            pos = np.array([(v.x, v.y) for v in vs], dtype=float).reshape(-1, 2)
            ids = np.array([v.id for v in vs], dtype=np.int64)
            self._cache = (pos, ids, vs)
        return self._cache

    def broadcast(self, beacon: Beacon) -> list[Reception]:
        """Deliver ``beacon`` to every vehicle that receives it.

        Each reception carries the receiver's table as it was before this
        beacon; the receiver then stores the beacon's claimed data.
        """
        sender = self.vehicles[beacon.sender_id]
        pos, _, vs = self._positions()
        if len(vs) < 2:
            return []
        d = np.hypot(pos[:, 0] - sender.x, pos[:, 1] - sender.y)
        cand = np.flatnonzero(d < self.radio.r_cut)
        draws = self.rng_radio.random(len(cand))
        keep_tables = self.config.exchange_enabled
        now = beacon.timestamp
        out = []
        for idx, u in zip(cand.tolist(), draws.tolist()):
            rv = vs[idx]
            if rv is sender:
                continue
            dist = float(d[idx])
            if u >= self.radio.reception_probability(dist):
                continue
            snapshot = rv.table.fresh(now) if keep_tables else ()
            out.append(
                Reception(rv.id, dist, Evidence(beacon.sender_id, beacon.claimed_position, (rv.x, rv.y), snapshot, now))
            )
            if keep_tables:
                rv.table.update(beacon.sender_id, beacon.claimed_position, now, beacon.neighbor_ids)
        return out

    def beacons(self) -> Iterator[tuple[Vehicle, Beacon, list[Reception]]]:
        """Emit and deliver every beacon due at the current tick, by vehicle id."""
        for v in self.due():
            b = self.emit_beacon(v)
            yield v, b, self.broadcast(b)
