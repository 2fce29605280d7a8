"""
Reliability functionals of a single distribution.

Hazard and reversed hazard rates accept scalars or arrays. The integral
functionals (mean residual life, mean inactivity time, truncated and
general conditional means) return an ``IntegralResult`` so divergence
stays visible to the caller.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Dict, Any

import numpy as np

from src.errors import DomainError, WindowError
from src.quadrature import QuadratureConfig, IntegralResult, integrate
from .handle import DistributionHandle


@dataclass(frozen=True)
class TruncationWindow:
    """Doubly truncated window (t1, t2); ``t2`` may be ``math.inf``."""
    t1: float
    t2: float

    def __post_init__(self):
        if self.t1 < 0 or not self.t1 < self.t2:
            raise WindowError(f"window requires 0 <= t1 < t2, got ({self.t1}, {self.t2})")

    def mass(self, d: DistributionHandle) -> float:
        """F(t2) - F(t1), computed from the survival side for accuracy in the right tail."""
        upper = 0.0 if math.isinf(self.t2) else d.survival(self.t2)
        return float(d.survival(self.t1) - upper)

    def validity(self, *dists: DistributionHandle) -> Dict[str, bool]:
        return {d.name: self.mass(d) > 0 for d in dists}

    def validate(self, *dists: DistributionHandle) -> "TruncationWindow":
        bad = [name for name, ok in self.validity(*dists).items() if not ok]
        if bad:
            raise WindowError(f"window ({self.t1}, {self.t2}) carries no mass under {', '.join(bad)}")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {"t1": self.t1, "t2": None if math.isinf(self.t2) else self.t2}


def _require_positive(value, what: str, d: DistributionHandle, t) -> None:
    if np.any(np.asarray(value) <= 0):
        raise DomainError(f"{what} of {d.name} vanishes at t={t}")


def hazard_rate(d: DistributionHandle, t):
    """f(t) / survival(t)."""
    d.require_density()
    s = d.survival(t)
    _require_positive(s, "survival", d, t)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.exp(np.asarray(d.log_density(t)) - np.asarray(d.log_survival(t)))
    return float(out) if np.ndim(t) == 0 else out


def reversed_hazard_rate(d: DistributionHandle, t):
    """f(t) / cdf(t)."""
    d.require_density()
    c = d.cdf(t)
    _require_positive(c, "cdf", d, t)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.exp(np.asarray(d.log_density(t)) - np.asarray(d.log_cdf(t)))
    return float(out) if np.ndim(t) == 0 else out


def _normalised_survival(d: DistributionHandle, t: float):
    log_st = d.log_survival(t)

    def weight(x: float) -> float:
        return math.exp(min(d.log_survival(x) - log_st, 0.0))
    return weight


def mean_residual_life(d: DistributionHandle, t: float, cfg: QuadratureConfig | None = None) -> IntegralResult:
    """E[X - t | X > t] = integral of survival(x)/survival(t) over (t, hi)."""
    if d.survival(t) <= 0:
        raise DomainError(f"mean residual life of {d.name} undefined at t={t}: survival is zero")
    start = max(t, d.lo)
    head = IntegralResult.exact(start - t)
    weight = _normalised_survival(d, t)
    return head + integrate(weight, start, d.hi, cfg, envelope=weight, points=d.breakpoints)


def mean_inactivity_time(d: DistributionHandle, t: float, cfg: QuadratureConfig | None = None) -> IntegralResult:
    """E[t - X | X <= t] = integral of cdf(x)/cdf(t) over (lo, t)."""
    ct = d.cdf(t)
    if ct <= 0:
        raise DomainError(f"mean inactivity time of {d.name} undefined at t={t}: cdf is zero")
    end = min(t, d.hi)
    tail = IntegralResult.exact(t - end)
    log_ct = d.log_cdf(t)

    def weight(x: float) -> float:
        return math.exp(min(d.log_cdf(x) - log_ct, 0.0))
    return integrate(weight, d.lo, end, cfg, points=d.breakpoints) + tail


def truncated_mean(d: DistributionHandle, t: float, cfg: QuadratureConfig | None = None) -> IntegralResult:
    """E[X | X <= t] = t - mean inactivity time."""
    mit = mean_inactivity_time(d, t, cfg)
    return mit.scaled(-1.0).shifted(t)


def general_conditional_mean(
    d: DistributionHandle,
    window: TruncationWindow,
    cfg: QuadratureConfig | None = None,
) -> IntegralResult:
    """E[X | t1 < X < t2] from the density."""
    density = d.require_density()
    mass = window.validate(d).mass(d)
    lo, hi = max(window.t1, d.lo), min(window.t2, d.hi)

    def integrand(x: float) -> float:
        return x * float(density(x))
    envelope = (lambda x: float(d.survival(x)) * max(x, 1.0)) if math.isinf(hi) else None
    return integrate(integrand, lo, hi, cfg, envelope=envelope, points=d.breakpoints).scaled(1.0 / mass)


@dataclass(frozen=True)
class GfrPair:
    """Generalized failure rates of a window: f(t1)/mass and f(t2)/mass."""
    h1: float
    h2: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def generalized_failure_rates(d: DistributionHandle, window: TruncationWindow) -> GfrPair:
    density = d.require_density()
    mass = window.validate(d).mass(d)
    f2 = 0.0 if math.isinf(window.t2) else float(density(window.t2))
    return GfrPair(h1=float(density(window.t1)) / mass, h2=f2 / mass)


gfr = generalized_failure_rates


def second_moment(d: DistributionHandle, cfg: QuadratureConfig | None = None) -> IntegralResult:
    """E[X^2] = 2 * integral of x * survival(x)."""
    def integrand(x: float) -> float:
        return 2.0 * x * float(d.survival(x))
    head = IntegralResult.exact(d.lo ** 2)
    return head + integrate(integrand, d.lo, d.hi, cfg, envelope=d.survival, points=d.breakpoints)
