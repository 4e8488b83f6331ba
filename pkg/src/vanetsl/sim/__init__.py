"""Discrete-time beaconing simulator."""

from .mobility import GridMobility
from .radio import RadioModel
from .run import EVENTLOG_HEADER, run_scenario
from .world import Beacon, Reception, Vehicle, World

__all__ = ["Beacon", "EVENTLOG_HEADER", "GridMobility", "RadioModel", "Reception", "Vehicle", "World", "run_scenario"]
