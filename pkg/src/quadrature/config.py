"""
Quadrature settings and the integral result record.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Dict, Any

from pydantic import BaseModel, ConfigDict, Field


class QuadratureConfig(BaseModel):
    """Tolerances and limits shared by every integral in a run."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    abs_tol: float = Field(1e-10, gt=0)
    rel_tol: float = Field(1e-8, gt=0)
    max_subdivisions: int = Field(2000, ge=10)
    tail_cut_survival: float = Field(1e-14, gt=0, lt=1)
    divergence_growth_factor: float = Field(1.5, gt=1)
    # Panels only count towards the growth rule once the envelope is below this level
    growth_check_survival: float = Field(1e-3, gt=0, le=1)
    growth_run_length: int = Field(5, ge=2)
    max_doublings: int = Field(60, ge=8)
    # Panel sums still above tolerance at the cut are extrapolated geometrically below this ratio
    max_tail_ratio: float = Field(0.95, gt=0, lt=1)

    def tolerance_for(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class IntegralResult:
    """
    Outcome of a numerical integral.

    ``value`` is always finite. When ``diverged`` is set it holds the
    partial sum reached before the divergence rule fired.
    """
    value: float
    error_estimate: float
    converged: bool
    diverged: bool

    def __post_init__(self):
        if self.converged and self.diverged:
            raise ValueError("IntegralResult cannot be both converged and diverged")
        if not math.isfinite(self.value) or not math.isfinite(self.error_estimate):
            raise ValueError(f"IntegralResult must hold finite numbers, got {self.value!r}")

    @classmethod
    def zero(cls) -> "IntegralResult":
        return cls(0.0, 0.0, True, False)

    @classmethod
    def divergent(cls, partial: float = 0.0, error_estimate: float = 0.0) -> "IntegralResult":
        return cls(float(partial), float(error_estimate), False, True)

    @classmethod
    def exact(cls, value: float) -> "IntegralResult":
        return cls(float(value), 0.0, True, False)

    @property
    def usable(self) -> bool:
        return not self.diverged

    def scaled(self, factor: float) -> "IntegralResult":
        return IntegralResult(self.value * factor, self.error_estimate * abs(factor), self.converged, self.diverged)

    def shifted(self, offset: float) -> "IntegralResult":
        return IntegralResult(self.value + offset, self.error_estimate, self.converged, self.diverged)

    def combined(self, other: "IntegralResult", cfg: QuadratureConfig | None = None) -> "IntegralResult":
        """Sum of two integrals; converged only if the summed error still meets the tolerance."""
        cfg = cfg or DEFAULT_QUADRATURE
        diverged = self.diverged or other.diverged
        value = self.value + other.value
        err = self.error_estimate + other.error_estimate
        converged = self.converged and other.converged and not diverged and err <= cfg.tolerance_for(value)
        return IntegralResult(value, err, converged, diverged)

    def __add__(self, other: "IntegralResult") -> "IntegralResult":
        return self.combined(other)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
