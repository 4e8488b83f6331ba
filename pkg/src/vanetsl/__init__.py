"""Subjective-logic position verification for simulated VANET beaconing."""

from .opinion import Opinion, expectation, fuse, fuse_all, vacuous, validate

__version__ = "0.1.0"

__all__ = ["Opinion", "expectation", "fuse", "fuse_all", "vacuous", "validate"]
