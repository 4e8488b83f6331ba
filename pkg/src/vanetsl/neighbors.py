"""Per-vehicle table of direct neighbors, fed by received beacons."""

from __future__ import annotations

from typing import NamedTuple


class NeighborEntry(NamedTuple):
    neighbor_id: int
    position: tuple[float, float]  # last claimed position, possibly false
    timestamp: float
    neighbor_ids: frozenset[int]  # the neighbor's piggybacked list


class NeighborTable:
    """Latest beacon data per direct neighbor.

    Entries are immutable tuples, so a snapshot returned by :meth:`fresh`
    is unaffected by later updates.
    """

    __slots__ = ("ttl", "_entries")

    def __init__(self, ttl: float = 3.0):
        if ttl <= 0:
            raise ValueError(f"table ttl must be positive, got {ttl}")
        self.ttl = ttl
        self._entries: dict[int, NeighborEntry] = {}

    def __len__(self) -> int:
        return len(self._entries)

    def update(self, neighbor_id: int, position, timestamp: float, neighbor_ids) -> None:
        self._entries[neighbor_id] = NeighborEntry(
            neighbor_id, (float(position[0]), float(position[1])), timestamp, frozenset(neighbor_ids)
        )

    def expire(self, now: float) -> None:
        stale = [k for k, e in self._entries.items() if now - e.timestamp >= self.ttl]
        for k in stale:
            del self._entries[k]

    def fresh(self, now: float) -> tuple[NeighborEntry, ...]:
        """Entries strictly younger than the ttl."""
        self.expire(now)
        return tuple(self._entries.values())

    def fresh_ids(self, now: float) -> frozenset[int]:
        self.expire(now)
        return frozenset(self._entries)

    def clear(self) -> None:
        self._entries.clear()
