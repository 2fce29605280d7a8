"""Configuration loading."""

from .loader import RunConfig, SweepRange, load_config

__all__ = ["RunConfig", "SweepRange", "load_config"]
