"""
Run configuration loading and validation for JSON inputs.
"""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.errors import ConfigError, WindowError
from src.distributions import DistributionHandle, GridSpec, TruncationWindow, make_distribution, parse_spec
from src.quadrature import QuadratureConfig, DEFAULT_QUADRATURE

logger = logging.getLogger(__name__)

Command = Literal["measure", "curve", "sweep", "verify", "reproduce"]
ExampleId = Literal["example1", "example2.1", "example3.1", "fig1", "fig2", "fig3"]


class SweepRange(BaseModel):
    """Shape parameter range for the ratio sweep."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    start: float = Field(0.2, gt=0)
    stop: float = Field(2.8, gt=0)
    step: float = Field(0.2, gt=0)
    families: Tuple[Literal["weibull", "gamma"], ...] = ("weibull", "gamma")

    @model_validator(mode="after")
    def _ordered(self) -> "SweepRange":
        if self.stop < self.start:
            raise ValueError(f"sweep stop ({self.stop}) is below start ({self.start})")
        return self


class RunConfig(BaseModel):
    """Everything one CLI invocation needs; flags override file values."""
    model_config = ConfigDict(extra="forbid")

    command: Optional[Command] = None
    distributions: Dict[str, Any] = Field(default_factory=dict)
    measures: List[str] = Field(default_factory=list)
    x: Optional[str] = None
    y: Optional[str] = None
    z: Optional[str] = None
    params: Dict[str, float] = Field(default_factory=dict)
    times: List[float] = Field(default_factory=list)
    grid: GridSpec = GridSpec(n=64)
    window: Optional[Tuple[float, float]] = None
    window_grid: int = Field(17, ge=2)
    quadrature: QuadratureConfig = DEFAULT_QUADRATURE
    sweep: SweepRange = SweepRange()
    propositions: List[str] = Field(default_factory=lambda: ["all"])
    trials: int = Field(100, ge=1)
    seeds: List[int] = Field(default_factory=lambda: [1])
    seed: Optional[int] = None
    example: Optional[ExampleId] = None
    tol: float = Field(1e-6, gt=0)
    strict: bool = False
    out: Optional[Path] = None

    @field_validator("distributions")
    @classmethod
    def _specs_parse(cls, value: Dict[str, Any]) -> Dict[str, Any]:
        for name, spec in value.items():
            try:
                parse_spec(spec)
            except ConfigError as exc:
                raise ValueError(f"distribution '{name}': {exc}") from exc
        return value

    @model_validator(mode="after")
    def _names_resolve(self) -> "RunConfig":
        for role in ("x", "y", "z"):
            name = getattr(self, role)
            if name is not None and name not in self.distributions:
                raise ValueError(f"{role} refers to unknown distribution '{name}'")
        if self.window is not None:
            try:
                TruncationWindow(*self.window)
            except WindowError as exc:
                raise ValueError(f"window: {exc}") from exc
        return self

    def distribution(self, name: str | None) -> DistributionHandle | None:
        if name is None:
            return None
        if name not in self.distributions:
            raise ConfigError(f"unknown distribution '{name}'")
        spec = dict(self.distributions[name]) if isinstance(self.distributions[name], dict) else self.distributions[name]
        if isinstance(spec, dict) and "name" not in spec and "family" not in spec:
            spec["name"] = name
        return make_distribution(spec)

    def truncation_window(self) -> TruncationWindow | None:
        return TruncationWindow(*self.window) if self.window is not None else None

    def seed_list(self) -> List[int]:
        return [self.seed] if self.seed is not None else list(self.seeds)

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        """Apply non-None CLI overrides; ``tol`` also tightens the quadrature rel_tol."""
        updates = {k: v for k, v in overrides.items() if v is not None and v is not False}
        if "tol" in updates:
            updates["quadrature"] = self.quadrature.model_copy(update={"rel_tol": updates["tol"]})
        try:
            return RunConfig(**{**self.model_dump(), **updates})
        except ValidationError as exc:
            raise ConfigError(str(exc)) from exc


def load_config(path: Path | str | None) -> RunConfig:
    """Read a JSON config; a missing path gives the defaults."""
    if path is None:
        return RunConfig()
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    try:
        cfg = RunConfig(**raw)
    except ValidationError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    except TypeError as exc:
        raise ConfigError(f"{path}: top level must be an object") from exc
    logger.debug("loaded config %s with %d distributions", path, len(cfg.distributions))
    return cfg
