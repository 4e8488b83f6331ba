"""Position-falsification strategies used by attacking vehicles.

Config syntax: ``fixed:dx,dy`` | ``random_position`` | ``random_offset:w``.
Random strategies draw a fresh claim for every beacon.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FixedOffset:
    dx: float = 300.0
    dy: float = 300.0

    def apply(self, true_position, rng=None) -> tuple[float, float]:
        return (true_position[0] + self.dx, true_position[1] + self.dy)

    def __str__(self) -> str:
        return f"fixed:{self.dx:g},{self.dy:g}"


@dataclass(frozen=True)
class RandomPosition:
    """Uniform claim anywhere in ``(xmin, ymin, xmax, ymax)``."""

    bounds: tuple[float, float, float, float] | None = None

    def __post_init__(self):
        if self.bounds is not None:
            xmin, ymin, xmax, ymax = self.bounds
            if not (xmin < xmax and ymin < ymax):
                raise ValueError(f"degenerate area {self.bounds}")

    def within(self, world_bounds) -> "RandomPosition":
        """Bind to the world area if no explicit area was given."""
        if self.bounds is None:
            return RandomPosition(tuple(float(b) for b in world_bounds))
        xmin, ymin, xmax, ymax = self.bounds
        wx0, wy0, wx1, wy1 = world_bounds
        if xmin < wx0 or ymin < wy0 or xmax > wx1 or ymax > wy1:
            raise ValueError(f"attack area {self.bounds} exceeds world bounds {tuple(world_bounds)}")
        return self

    def apply(self, true_position, rng: np.random.Generator) -> tuple[float, float]:
        if self.bounds is None:
            raise ValueError("RandomPosition has no area; bind it with within(world_bounds)")
        xmin, ymin, xmax, ymax = self.bounds
        return (float(rng.uniform(xmin, xmax)), float(rng.uniform(ymin, ymax)))

    def __str__(self) -> str:
        return "random_position"


@dataclass(frozen=True)
class RandomOffset:
    half_width: float = 300.0

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")

    def apply(self, true_position, rng: np.random.Generator) -> tuple[float, float]:
        w = self.half_width
        return (
            true_position[0] + float(rng.uniform(-w, w)),
            true_position[1] + float(rng.uniform(-w, w)),
        )

    def __str__(self) -> str:
        return f"random_offset:{self.half_width:g}"


Strategy = FixedOffset | RandomPosition | RandomOffset


def apply(strategy: Strategy, true_position, rng: np.random.Generator | None = None) -> tuple[float, float]:
    return strategy.apply(true_position, rng)


def parse_strategy(text: str) -> Strategy:
    name, _, args = text.strip().partition(":")
    name = name.strip().lower()
    try:
        if name == "fixed":
            if not args:
                return FixedOffset()
            dx, dy = (float(v) for v in args.split(","))
            return FixedOffset(dx, dy)
        if name == "random_position":
            if not args:
                return RandomPosition()
            xmin, ymin, xmax, ymax = (float(v) for v in args.split(","))
            return RandomPosition((xmin, ymin, xmax, ymax))
        if name == "random_offset":
            return RandomOffset(float(args)) if args else RandomOffset()
    except ValueError as exc:
        raise ValueError(f"bad strategy {text!r}: {exc}") from None
    raise ValueError(f"unknown strategy {text!r}; expected fixed:dx,dy, random_position or random_offset:w")
