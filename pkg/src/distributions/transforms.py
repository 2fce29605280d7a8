"""
Combinators that derive new handles from existing ones.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.errors import CapabilityError, DomainError
from src.quadrature import QuadratureConfig
from .catalogue import quadrature_mean
from .functionals import mean_residual_life
from .handle import DistributionHandle


def _log(values):
    with np.errstate(divide="ignore"):
        return np.log(values)


def equilibrium(d: DistributionHandle, cfg: QuadratureConfig | None = None) -> DistributionHandle:
    """
    Equilibrium (stationary renewal) distribution: density survival(x) / E(X).

    Its survival function is survival(x) * mrl(x) / E(X).
    """
    mean = d.require_finite_mean()
    if mean <= 0:
        raise CapabilityError(f"{d.name} needs a positive mean for its equilibrium distribution")
    log_mean = math.log(mean)

    def _sf_scalar(x: float) -> float:
        if x <= d.lo:
            return 1.0 - max(x, 0.0) / mean
        if x >= d.hi or d.survival(x) <= 0:
            return 0.0
        mrl = mean_residual_life(d, x, cfg)
        return min(1.0, max(0.0, float(d.survival(x)) * mrl.value / mean))

    sf_vec = np.vectorize(_sf_scalar, otypes=[float])

    def density(x):
        return np.asarray(d.survival(x), dtype=float) / mean

    def log_density(x):
        return np.asarray(d.log_survival(x), dtype=float) - log_mean

    def sf(x):
        return sf_vec(np.asarray(x, dtype=float))

    def cdf(x):
        return 1.0 - sf(x)

    second = quadrature_mean(lambda x: 2.0 * x * float(d.survival(x)), 0.0, d.hi, d.breakpoints)
    return DistributionHandle(
        name=f"equilibrium[{d.name}]", cdf_fn=cdf, survival_fn=sf, support=(0.0, d.hi),
        mean=second / (2.0 * mean) if math.isfinite(second) else math.inf,
        density_fn=density, log_density_fn=log_density, breakpoints=d.breakpoints,
    )


def affine(d: DistributionHandle, a: float, b: float) -> DistributionHandle:
    """Law of a*X + b for a > 0, b >= 0."""
    if a <= 0 or b < 0:
        raise ValueError(f"affine map needs a > 0 and b >= 0, got a={a}, b={b}")

    def back(x):
        return (np.asarray(x, dtype=float) - b) / a

    density = None
    log_density = None
    if d.has_density:
        def density(x):
            return np.asarray(d.density(back(x)), dtype=float) / a

        def log_density(x):
            return np.asarray(d.log_density(back(x)), dtype=float) - math.log(a)

    return DistributionHandle(
        name=f"{a:g}*{d.name}+{b:g}",
        cdf_fn=lambda x: d.cdf(back(x)),
        survival_fn=lambda x: d.survival(back(x)),
        support=(a * d.lo + b, a * d.hi + b),
        mean=a * d.mean + b,
        density_fn=density,
        log_survival_fn=lambda x: d.log_survival(back(x)),
        log_cdf_fn=lambda x: d.log_cdf(back(x)),
        log_density_fn=log_density,
        breakpoints=tuple(a * p + b for p in d.breakpoints),
    )


def power_survival(d: DistributionHandle, alpha: float) -> DistributionHandle:
    """Proportional hazards: survival(x) ** alpha."""
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")

    def log_sf(x):
        return alpha * np.asarray(d.log_survival(x), dtype=float)

    def sf(x):
        return np.exp(log_sf(x))

    def cdf(x):
        return -np.expm1(log_sf(x))

    density = log_density = None
    if d.has_density:
        def log_density(x):
            return math.log(alpha) + (alpha - 1.0) * np.asarray(d.log_survival(x)) + np.asarray(d.log_density(x))

        def density(x):
            return np.exp(log_density(x))

    return DistributionHandle(
        name=f"{d.name}^ph({alpha:g})", cdf_fn=cdf, survival_fn=sf, support=d.support,
        mean=quadrature_mean(sf, d.lo, d.hi, d.breakpoints),
        density_fn=density, log_survival_fn=log_sf, log_cdf_fn=lambda x: _log(cdf(x)),
        log_density_fn=log_density, breakpoints=d.breakpoints,
    )


def power_cdf(d: DistributionHandle, theta: float) -> DistributionHandle:
    """Proportional reversed hazards: cdf(x) ** theta."""
    if theta <= 0:
        raise ValueError(f"theta must be > 0, got {theta}")

    def log_cdf(x):
        return theta * np.asarray(d.log_cdf(x), dtype=float)

    def cdf(x):
        return np.exp(log_cdf(x))

    def sf(x):
        return -np.expm1(log_cdf(x))

    density = log_density = None
    if d.has_density:
        def log_density(x):
            return math.log(theta) + (theta - 1.0) * np.asarray(d.log_cdf(x)) + np.asarray(d.log_density(x))

        def density(x):
            return np.exp(log_density(x))

    return DistributionHandle(
        name=f"{d.name}^prh({theta:g})", cdf_fn=cdf, survival_fn=sf, support=d.support,
        mean=quadrature_mean(sf, d.lo, d.hi, d.breakpoints),
        density_fn=density, log_survival_fn=lambda x: _log(sf(x)), log_cdf_fn=log_cdf,
        log_density_fn=log_density, breakpoints=d.breakpoints,
    )


@dataclass(frozen=True)
class MonotoneMap:
    """Strictly monotone, differentiable map of [0, inf) into itself."""
    forward: Callable
    inverse: Callable
    derivative: Callable
    increasing: bool = True
    label: str = "phi"

    def __call__(self, x):
        return self.forward(x)


def monotone_image(d: DistributionHandle, phi: MonotoneMap) -> DistributionHandle:
    """Law of phi(X)."""
    with np.errstate(invalid="ignore", over="ignore"):
        ends = sorted((float(phi(d.lo)), float(phi(d.hi))))
    if math.isnan(ends[0]) or ends[0] < 0:
        raise ValueError(f"{phi.label} maps the support of {d.name} below zero")

    def pre(y):
        y = np.asarray(y, dtype=float)
        clipped = np.clip(y, ends[0], ends[1])
        return phi.inverse(clipped)

    def below(y):
        return np.asarray(y, dtype=float) < ends[0]

    def above(y):
        return np.asarray(y, dtype=float) > ends[1]

    if phi.increasing:
        def cdf(y):
            return np.where(below(y), 0.0, np.where(above(y), 1.0, d.cdf(pre(y))))

        def sf(y):
            return np.where(below(y), 1.0, np.where(above(y), 0.0, d.survival(pre(y))))
    else:
        def cdf(y):
            return np.where(below(y), 0.0, np.where(above(y), 1.0, d.survival(pre(y))))

        def sf(y):
            return np.where(below(y), 1.0, np.where(above(y), 0.0, d.cdf(pre(y))))

    density = None
    if d.has_density:
        def density(y):
            x = pre(y)
            inside = ~(below(y) | above(y))
            with np.errstate(divide="ignore", invalid="ignore"):
                val = np.asarray(d.density(x), dtype=float) / np.abs(np.asarray(phi.derivative(x), dtype=float))
            return np.where(inside, np.nan_to_num(val, nan=0.0, posinf=0.0), 0.0)

    bps = tuple(sorted(float(phi(p)) for p in d.breakpoints))
    return DistributionHandle(
        name=f"{phi.label}({d.name})", cdf_fn=cdf, survival_fn=sf, support=(ends[0], ends[1]),
        mean=quadrature_mean(sf, ends[0], ends[1], bps), density_fn=density, breakpoints=bps,
    )


def mixture(x: DistributionHandle, y: DistributionHandle, p: float) -> DistributionHandle:
    """Two-component mixture with survival p*survival_X + (1-p)*survival_Y."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"mixture weight must lie strictly inside (0, 1), got {p}")
    q = 1.0 - p

    def sf(t):
        return p * np.asarray(x.survival(t)) + q * np.asarray(y.survival(t))

    def cdf(t):
        return p * np.asarray(x.cdf(t)) + q * np.asarray(y.cdf(t))

    density = None
    if x.has_density and y.has_density:
        def density(t):
            return p * np.asarray(x.density(t)) + q * np.asarray(y.density(t))

    return DistributionHandle(
        name=f"mix({p:g};{x.name},{y.name})", cdf_fn=cdf, survival_fn=sf,
        support=(min(x.lo, y.lo), max(x.hi, y.hi)),
        mean=p * x.mean + q * y.mean,
        density_fn=density, breakpoints=tuple(sorted(set(x.breakpoints) | set(y.breakpoints))),
    )
