"""
Distribution handle: the uniform view every measure works against.

A handle bundles vectorised evaluators for the CDF and survival function,
optional density and log-scale evaluators, the support and the mean.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Any, Optional, Tuple

import numpy as np

from src.errors import CapabilityError

Evaluator = Callable[[Any], Any]


def _as_output(values: np.ndarray, like) -> Any:
    if np.ndim(like) == 0:
        return float(np.asarray(values).reshape(()))
    return values


@dataclass(frozen=True)
class DistributionHandle:
    """
    Nonnegative, absolutely continuous (or empirical) lifetime distribution.

    ``mean`` is ``math.inf`` for heavy tails. ``breakpoints`` lists
    points where the evaluators are not smooth; integrators split there.
    """
    name: str
    cdf_fn: Evaluator
    survival_fn: Evaluator
    support: Tuple[float, float]
    mean: float
    density_fn: Optional[Evaluator] = None
    log_survival_fn: Optional[Evaluator] = None
    log_cdf_fn: Optional[Evaluator] = None
    log_density_fn: Optional[Evaluator] = None
    breakpoints: Tuple[float, ...] = ()
    params: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        lo, hi = self.support
        if lo < 0 or not lo < hi:
            raise ValueError(f"{self.name}: support must satisfy 0 <= lo < hi, got {self.support}")

    # ------------------------------------------------------------------
    # Evaluators
    # ------------------------------------------------------------------
    def cdf(self, x):
        return _as_output(np.asarray(self.cdf_fn(np.asarray(x, dtype=float)), dtype=float), x)

    def survival(self, x):
        return _as_output(np.asarray(self.survival_fn(np.asarray(x, dtype=float)), dtype=float), x)

    def density(self, x):
        return _as_output(np.asarray(self.require_density()(np.asarray(x, dtype=float)), dtype=float), x)

    def log_survival(self, x):
        arr = np.asarray(x, dtype=float)
        if self.log_survival_fn is not None:
            out = self.log_survival_fn(arr)
        else:
            with np.errstate(divide="ignore"):
                out = np.log(self.survival_fn(arr))
        return _as_output(np.asarray(out, dtype=float), x)

    def log_cdf(self, x):
        arr = np.asarray(x, dtype=float)
        if self.log_cdf_fn is not None:
            out = self.log_cdf_fn(arr)
        else:
            with np.errstate(divide="ignore"):
                out = np.log(self.cdf_fn(arr))
        return _as_output(np.asarray(out, dtype=float), x)

    def log_density(self, x):
        arr = np.asarray(x, dtype=float)
        if self.log_density_fn is not None:
            out = self.log_density_fn(arr)
        else:
            with np.errstate(divide="ignore"):
                out = np.log(self.require_density()(arr))
        return _as_output(np.asarray(out, dtype=float), x)

    # ------------------------------------------------------------------
    # Capabilities
    # ------------------------------------------------------------------
    @property
    def lo(self) -> float:
        return self.support[0]

    @property
    def hi(self) -> float:
        return self.support[1]

    @property
    def has_density(self) -> bool:
        return self.density_fn is not None

    @property
    def has_finite_mean(self) -> bool:
        return math.isfinite(self.mean)

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.hi)

    def require_density(self) -> Evaluator:
        if self.density_fn is None:
            raise CapabilityError(f"{self.name} has no density")
        return self.density_fn

    def require_finite_mean(self) -> float:
        if not self.has_finite_mean:
            raise CapabilityError(f"{self.name} has an infinite mean")
        return self.mean

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "support": list(self.support),
            "mean": self.mean if self.has_finite_mean else None,
            "has_density": self.has_density,
            "breakpoints": list(self.breakpoints),
        }

    def __str__(self) -> str:
        return self.name
