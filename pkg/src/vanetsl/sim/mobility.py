"""Manhattan-grid mobility.

Roads run along every grid line inside the world rectangle. Vehicles drive
at constant speed and pick straight/left/right uniformly at each
intersection; a vehicle that leaves the rectangle departs.
"""

from __future__ import annotations

import math

import numpy as np

_EPS = 1e-9


class GridMobility:
    def __init__(self, bounds, spacing: float):
        xmin, ymin, xmax, ymax = (float(b) for b in bounds)
        if not (xmin < xmax and ymin < ymax):
            raise ValueError(f"degenerate world bounds {bounds}")
        if not 0 < spacing <= min(xmax - xmin, ymax - ymin):
            raise ValueError(f"grid spacing {spacing} does not fit bounds {bounds}")
        self.bounds = (xmin, ymin, xmax, ymax)
        self.spacing = float(spacing)
        self.nx = int(math.floor((xmax - xmin) / spacing + _EPS))  # last line index along x
        self.ny = int(math.floor((ymax - ymin) / spacing + _EPS))

    # grid coordinates ---------------------------------------------------

    def line_x(self, i: int) -> float:
        return self.bounds[0] + i * self.spacing

    def line_y(self, j: int) -> float:
        return self.bounds[1] + j * self.spacing

    def inside(self, x: float, y: float) -> bool:
        xmin, ymin, xmax, ymax = self.bounds
        return xmin - _EPS <= x <= xmax + _EPS and ymin - _EPS <= y <= ymax + _EPS

    def next_node(self, x: float, y: float, hx: int, hy: int) -> tuple[float, float]:
        """The next intersection strictly ahead of ``(x, y)`` along the heading."""
        s = self.spacing
        if hx:
            k = (x - self.bounds[0]) / s
            idx = math.floor(k + _EPS) + 1 if hx > 0 else math.ceil(k - _EPS) - 1
            return (self.line_x(idx), y)
        k = (y - self.bounds[1]) / s
        idx = math.floor(k + _EPS) + 1 if hy > 0 else math.ceil(k - _EPS) - 1
        return (x, self.line_y(idx))

    def snap(self, x: float, y: float, hx: int, hy: int) -> tuple[float, float]:
        """Project a point onto the road it travels along."""
        s = self.spacing
        if hx:
            j = round((y - self.bounds[1]) / s)
            return (x, self.line_y(min(max(j, 0), self.ny)))
        i = round((x - self.bounds[0]) / s)
        return (self.line_x(min(max(i, 0), self.nx)), y)

    # placement ----------------------------------------------------------

    def random_road_point(self, rng: np.random.Generator) -> tuple[float, float, int, int]:
        """Uniform point on the road network with a random travel direction."""
        xmin, ymin, xmax, ymax = self.bounds
        horiz_len = (self.ny + 1) * (xmax - xmin)
        vert_len = (self.nx + 1) * (ymax - ymin)
        sign = 1 if rng.random() < 0.5 else -1
        if rng.random() * (horiz_len + vert_len) < horiz_len:
            j = int(rng.integers(self.ny + 1))
            return (float(rng.uniform(xmin, xmax)), self.line_y(j), sign, 0)
        i = int(rng.integers(self.nx + 1))
        return (self.line_x(i), float(rng.uniform(ymin, ymax)), 0, sign)

    def random_entry(self, rng: np.random.Generator) -> tuple[float, float, int, int]:
        """A boundary intersection and the inward heading from it."""
        side = int(rng.integers(4))
        if side in (0, 1):  # west, east
            j = int(rng.integers(self.ny + 1))
            x = self.bounds[0] if side == 0 else self.line_x(self.nx)
            return (x, self.line_y(j), 1 if side == 0 else -1, 0)
        i = int(rng.integers(self.nx + 1))
        y = self.bounds[1] if side == 2 else self.line_y(self.ny)
        return (self.line_x(i), y, 0, 1 if side == 2 else -1)

    # motion -------------------------------------------------------------

    def advance(self, v, dt: float, rng: np.random.Generator) -> None:
        """Move vehicle ``v`` (attrs x, y, hx, hy, speed, tx, ty) for ``dt`` seconds."""
        travel = v.speed * dt
        while travel > 0.0:
            remaining = abs(v.tx - v.x) + abs(v.ty - v.y)
            if travel < remaining:
                v.x += v.hx * travel
                v.y += v.hy * travel
                return
            travel -= remaining
            v.x, v.y = v.tx, v.ty
            if not self.inside(v.x, v.y):
                return
            turn = int(rng.integers(3))
            if turn == 1:
                v.hx, v.hy = -v.hy, v.hx
            elif turn == 2:
                v.hx, v.hy = v.hy, -v.hx
            v.tx, v.ty = self.next_node(v.x, v.y, v.hx, v.hy)
