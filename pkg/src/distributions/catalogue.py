"""
Construct distribution handles from specs.

Parametric families are backed by frozen ``scipy.stats`` distributions,
which already provide accurate log-scale survival and CDF evaluators.
"""
from __future__ import annotations

import logging
import math
from typing import Any

import numpy as np
from scipy import stats

from src.quadrature import integrate
from .handle import DistributionHandle
from .specs import ParametricSpec, PiecewiseSpec, EmpiricalSpec, parse_spec

logger = logging.getLogger(__name__)


def _frozen(spec: ParametricSpec):
    family = spec.family
    if family == "exponential":
        return stats.expon(scale=1.0 / spec.param("rate"))
    if family == "weibull":
        return stats.weibull_min(c=spec.param("shape"), scale=spec.param("scale"))
    if family == "gamma":
        return stats.gamma(a=spec.param("shape"), scale=spec.param("scale"))
    if family == "erlang":
        return stats.erlang(a=int(spec.param("k")), scale=1.0 / spec.param("rate"))
    if family == "pareto1":
        return stats.pareto(b=spec.param("alpha", 1.0), scale=spec.param("scale", 1.0))
    if family == "uniform":
        lo, hi = spec.param("lo"), spec.param("hi")
        return stats.uniform(loc=lo, scale=hi - lo)
    raise ValueError(f"no scipy backing for family '{family}'")


def from_scipy(name: str, dist, params: dict | None = None) -> DistributionHandle:
    """Wrap a frozen scipy.stats continuous distribution."""
    lo, hi = (float(v) for v in dist.support())
    mean = float(dist.mean())
    return DistributionHandle(
        name=name,
        cdf_fn=dist.cdf,
        survival_fn=dist.sf,
        support=(lo, hi),
        mean=mean if math.isfinite(mean) else math.inf,
        density_fn=dist.pdf,
        log_survival_fn=dist.logsf,
        log_cdf_fn=dist.logcdf,
        log_density_fn=dist.logpdf,
        params=params or {},
    )


def _smoothstep(spec: ParametricSpec) -> DistributionHandle:
    lo, hi = spec.param("lo"), spec.param("hi")
    width = hi - lo

    def u(x):
        return np.clip((np.asarray(x, dtype=float) - lo) / width, 0.0, 1.0)

    def cdf(x):
        v = u(x)
        return v * v * (3.0 - 2.0 * v)

    def sf(x):
        v = 1.0 - u(x)
        return v * v * (3.0 - 2.0 * v)

    def pdf(x):
        v = u(x)
        return 6.0 * v * (1.0 - v) / width

    return DistributionHandle(
        name=spec.label, cdf_fn=cdf, survival_fn=sf, support=(lo, hi),
        mean=0.5 * (lo + hi), density_fn=pdf, params={"lo": lo, "hi": hi},
    )


def quadrature_mean(survival, lo: float, hi: float, breakpoints=()) -> float:
    """E[X] = lo + integral of survival over (lo, hi); inf when the tail diverges."""
    res = integrate(lambda x: float(survival(x)), lo, hi, envelope=lambda x: float(survival(x)), points=breakpoints)
    if res.diverged:
        return math.inf
    return lo + res.value


def _piecewise(spec: PiecewiseSpec) -> DistributionHandle:
    segs = spec.segments
    bps = tuple(float(b) for b in spec.breakpoints)
    is_survival = spec.function == "survival"
    boundary = 1.0 if is_survival else 0.0
    # support: a leading segment equal to the boundary value carries no mass
    lo = bps[0] if bps and segs[0].kind == "constant" and segs[0].c == boundary else 0.0
    hi = bps[-1] if bps and segs[-1].kind == "constant" and segs[-1].c == 1.0 - boundary else math.inf

    def main(x):
        x = np.asarray(x, dtype=float)
        out = spec.evaluate(np.maximum(x, 1e-300)).reshape(x.shape)
        return np.where(x <= 0, boundary, out)

    def log_main(x):
        x = np.asarray(x, dtype=float)
        out = spec.log_eval(np.maximum(x, 1e-300)).reshape(x.shape)
        return np.where(x <= 0, math.log(boundary) if boundary > 0 else -np.inf, out)

    def other(x):
        return 1.0 - main(x)

    def log_other(x):
        with np.errstate(divide="ignore"):
            return np.log1p(-main(x))

    def density(x):
        x = np.asarray(x, dtype=float)
        d = spec.derivative(np.maximum(x, 1e-300)).reshape(x.shape)
        d = -d if is_survival else d
        return np.where(x <= 0, 0.0, np.nan_to_num(d, nan=0.0, posinf=0.0, neginf=0.0))

    def log_density(x):
        with np.errstate(divide="ignore"):
            return np.log(density(x))

    if is_survival:
        sf, cdf, log_sf, log_cdf = main, other, log_main, log_other
    else:
        sf, cdf, log_sf, log_cdf = other, main, log_other, log_main
    handle_mean = quadrature_mean(sf, lo, hi, bps)
    return DistributionHandle(
        name=spec.label, cdf_fn=cdf, survival_fn=sf, support=(lo, hi), mean=handle_mean,
        density_fn=None if spec.allow_jumps else density,
        log_survival_fn=log_sf, log_cdf_fn=log_cdf,
        log_density_fn=None if spec.allow_jumps else log_density,
        breakpoints=bps,
    )


def _empirical(spec: EmpiricalSpec) -> DistributionHandle:
    samples = np.asarray(spec.samples, dtype=float)
    n = samples.size

    def cdf(x):
        return np.searchsorted(samples, np.asarray(x, dtype=float), side="right") / n

    def sf(x):
        return 1.0 - cdf(x)

    return DistributionHandle(
        name=spec.label, cdf_fn=cdf, survival_fn=sf,
        support=(float(samples[0]), float(samples[-1])), mean=float(samples.mean()),
        breakpoints=tuple(float(s) for s in np.unique(samples)),
    )


def make_distribution(spec: Any) -> DistributionHandle:
    """Build a handle from a spec model or its JSON form."""
    spec = parse_spec(spec)
    if isinstance(spec, PiecewiseSpec):
        handle = _piecewise(spec)
    elif isinstance(spec, EmpiricalSpec):
        handle = _empirical(spec)
    elif spec.family == "smoothstep":
        handle = _smoothstep(spec)
    else:
        handle = from_scipy(spec.label, _frozen(spec), params=dict(zip(("p0", "p1"), spec.params)))
    logger.debug("built %s on support %s with mean %s", handle.name, handle.support, handle.mean)
    return handle


def exponential(rate: float) -> DistributionHandle:
    return make_distribution({"family": "exponential", "params": [rate]})


def weibull(scale: float, shape: float) -> DistributionHandle:
    return make_distribution({"family": "weibull", "params": [scale, shape]})


def gamma(scale: float, shape: float) -> DistributionHandle:
    return make_distribution({"family": "gamma", "params": [scale, shape]})


def erlang(k: int, rate: float) -> DistributionHandle:
    return make_distribution({"family": "erlang", "params": [k, rate]})


def pareto1(alpha: float = 1.0, scale: float = 1.0) -> DistributionHandle:
    return make_distribution({"family": "pareto1", "params": [alpha, scale]})


def uniform(lo: float, hi: float) -> DistributionHandle:
    return make_distribution({"family": "uniform", "params": [lo, hi]})


def smoothstep(lo: float, hi: float) -> DistributionHandle:
    return make_distribution({"family": "smoothstep", "params": [lo, hi]})
