"""Binomial subjective-logic opinions and cumulative fusion.

An opinion ``(b, d, u, a)`` holds belief, disbelief and uncertainty about a
single statement (here: "this beacon is benign") together with a base rate.
``b + d + u == 1`` always holds for a constructed :class:`Opinion`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_BASE_RATE = 0.5

#: tolerance used by :func:`validate`
VALID_TOL = 1e-9
#: sums within this distance of 1 are kept as given (rounding noise)
EXACT_TOL = 1e-12
#: sums within this distance of 1 are renormalized on construction
REPAIR_TOL = 1e-6


class OpinionError(ValueError):
    """Raised for malformed opinions or incompatible operands."""


@dataclass(frozen=True, slots=True)
class Opinion:
    belief: float
    disbelief: float
    uncertainty: float
    base_rate: float = DEFAULT_BASE_RATE

    def __post_init__(self) -> None:
        b, d, u, a = self.belief, self.disbelief, self.uncertainty, self.base_rate
        if (
            0.0 <= b <= 1.0
            and 0.0 <= d <= 1.0
            and 0.0 <= u <= 1.0
            and 0.0 <= a <= 1.0
            and abs(b + d + u - 1.0) <= EXACT_TOL
        ):
            return
        if not all(math.isfinite(x) for x in (b, d, u, a)):
            raise OpinionError(f"non-finite opinion component in {(b, d, u, a)}")
        for name, x in (("belief", b), ("disbelief", d), ("uncertainty", u), ("base_rate", a)):
            if x < -VALID_TOL or x > 1.0 + VALID_TOL:
                raise OpinionError(f"{name}={x!r} outside [0, 1]")
        total = b + d + u
        if abs(total - 1.0) > REPAIR_TOL:
            raise OpinionError(f"belief + disbelief + uncertainty = {total!r}, expected 1")
        if abs(total - 1.0) > EXACT_TOL or min(b, d, u, a) < 0.0 or max(b, d, u, a) > 1.0:
            b, d, u = (min(max(x, 0.0), 1.0) for x in (b, d, u))
            total = b + d + u
            object.__setattr__(self, "belief", b / total)
            object.__setattr__(self, "disbelief", d / total)
            object.__setattr__(self, "uncertainty", u / total)
            object.__setattr__(self, "base_rate", min(max(a, 0.0), 1.0))

    def __iter__(self):
        yield self.belief
        yield self.disbelief
        yield self.uncertainty
        yield self.base_rate

    @property
    def expectation(self) -> float:
        return expectation(self)

    @property
    def is_vacuous(self) -> bool:
        return self.uncertainty == 1.0

    @property
    def is_dogmatic(self) -> bool:
        return self.uncertainty == 0.0

    def to_fields(self) -> list[str]:
        """CSV text fields ``belief,disbelief,uncertainty,base_rate`` (9 significant digits)."""
        return [f"{x:.9g}" for x in self]

    @classmethod
    def from_fields(cls, fields: Sequence[str]) -> "Opinion":
        if len(fields) != 4:
            raise OpinionError(f"expected 4 opinion fields, got {len(fields)}")
        return cls(*(float(f) for f in fields))


def validate(op) -> bool:
    """Return True iff ``op`` is a well-formed opinion at tolerance 1e-9.

    Accepts an :class:`Opinion` or any 4-sequence ``(b, d, u, a)``, so raw
    candidate values can be checked before construction.
    """
    try:
        b, d, u, a = (float(x) for x in op)
    except (TypeError, ValueError):
        return False
    comps = (b, d, u, a)
    if not all(math.isfinite(x) for x in comps):
        return False
    if any(x < -VALID_TOL or x > 1.0 + VALID_TOL for x in comps):
        return False
    return abs(b + d + u - 1.0) <= VALID_TOL


def vacuous(base_rate: float = DEFAULT_BASE_RATE) -> Opinion:
    if not 0.0 <= base_rate <= 1.0:
        raise OpinionError(f"base rate {base_rate!r} outside [0, 1]")
    return Opinion(0.0, 0.0, 1.0, base_rate)


def expectation(op: Opinion) -> float:
    """Projected probability ``b + u * a``."""
    if not isinstance(op, Opinion):
        if not validate(op):
            raise OpinionError(f"invalid opinion {op!r}")
        op = Opinion(*op)
    return op.belief + op.uncertainty * op.base_rate


def fuse(x: Opinion, y: Opinion) -> Opinion:
    """Cumulative (consensus) fusion of two independent opinions.

    Two dogmatic operands (``u == 0`` for both) have no defined result; the
    componentwise mean is returned instead. A vacuous operand is an exact
    identity.
    """
    if x.base_rate != y.base_rate:
        raise OpinionError(f"base rates differ: {x.base_rate!r} vs {y.base_rate!r}")
    if y.uncertainty == 1.0:
        return x
    if x.uncertainty == 1.0:
        return y
    ua, ub = x.uncertainty, y.uncertainty
    if ua == 0.0 and ub == 0.0:
        return Opinion(
            (x.belief + y.belief) / 2,
            (x.disbelief + y.disbelief) / 2,
            0.0,
            x.base_rate,
        )
    k = ua + ub - ua * ub
    return Opinion(
        (x.belief * ub + y.belief * ua) / k,
        (x.disbelief * ub + y.disbelief * ua) / k,
        ua * ub / k,
        x.base_rate,
    )


def fuse_all(ops: Iterable[Opinion]) -> Opinion:
    """Left fold of :func:`fuse`; the empty collection gives ``vacuous(0.5)``."""
    it = iter(ops)
    try:
        acc = next(it)
    except StopIteration:
        return vacuous()
    for op in it:
        acc = fuse(acc, op)
    return acc
