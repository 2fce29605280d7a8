"""
Static information measures of nonnegative lifetimes.

Every measure returns a ``MeasureValue``. Support pre-checks flag the
cases where the log term is infinite on a set of positive weight, so
those integrals are reported as divergent without being attempted.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional

from src.errors import ConfigError
from src.distributions import DistributionHandle, equilibrium
from src.quadrature import QuadratureConfig, IntegralResult, integrate
from .results import MeasureValue, PropositionReport, identity_report, worst

logger = logging.getLogger(__name__)


def _points(*dists: DistributionHandle) -> tuple:
    return tuple(sorted({p for d in dists for p in d.breakpoints}))


def _divergent(name: str, inputs: tuple, reason: str) -> MeasureValue:
    logger.debug("%s%s divergent: %s", name, inputs, reason)
    return MeasureValue(name, inputs, IntegralResult.divergent())


def _support_contained(x: DistributionHandle, y: DistributionHandle) -> bool:
    return y.lo <= x.lo and x.hi <= y.hi


# ----------------------------------------------------------------------
# Density based
# ----------------------------------------------------------------------
def shannon_entropy(x: DistributionHandle, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """Differential entropy -E[ln f(X)]."""
    x.require_density()

    def integrand(t: float) -> float:
        f = x.density(t)
        return 0.0 if f <= 0 else -f * x.log_density(t)

    res = integrate(integrand, x.lo, x.hi, cfg, envelope=x.survival, points=x.breakpoints)
    return MeasureValue("shannon", (x.name,), res)


def kerridge_inaccuracy(x: DistributionHandle, y: DistributionHandle, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """-E[ln g(X)]: inaccuracy of asserting density g when f is true."""
    x.require_density()
    y.require_density()
    inputs = (x.name, y.name)
    if not _support_contained(x, y):
        return _divergent("kerridge", inputs, "support of X exceeds support of Y")

    def integrand(t: float) -> float:
        f = x.density(t)
        return 0.0 if f <= 0 else -f * y.log_density(t)

    res = integrate(integrand, x.lo, x.hi, cfg, envelope=x.survival, points=_points(x, y))
    return MeasureValue("kerridge", inputs, res)


def kl_divergence(x: DistributionHandle, y: DistributionHandle, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """Kullback-Leibler divergence E[ln f(X)/g(X)] (nonnegative)."""
    x.require_density()
    y.require_density()
    inputs = (x.name, y.name)
    if not _support_contained(x, y):
        return _divergent("kl", inputs, "support of X exceeds support of Y")

    def integrand(t: float) -> float:
        f = x.density(t)
        return 0.0 if f <= 0 else f * (x.log_density(t) - y.log_density(t))

    res = integrate(integrand, x.lo, x.hi, cfg, envelope=x.survival, points=_points(x, y))
    return MeasureValue("kl", inputs, res)


def kl_divergence_equilibrium(x: DistributionHandle, y: DistributionHandle, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """KL divergence between the equilibrium distributions of X and Y."""
    mv = kl_divergence(equilibrium(x, cfg), equilibrium(y, cfg), cfg)
    return MeasureValue("kl_equilibrium", (x.name, y.name), mv.result)


# ----------------------------------------------------------------------
# Cumulative (survival / cdf based)
# ----------------------------------------------------------------------
def cre(x: DistributionHandle, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """Cumulative residual entropy -int S ln S."""
    def integrand(t: float) -> float:
        s = x.survival(t)
        return 0.0 if s <= 0 or s >= 1 else -s * x.log_survival(t)

    res = integrate(integrand, x.lo, x.hi, cfg, envelope=x.survival, points=x.breakpoints)
    return MeasureValue("cre", (x.name,), res)


def cpe(x: DistributionHandle, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """Cumulative past entropy -int F ln F."""
    def integrand(t: float) -> float:
        c = x.cdf(t)
        return 0.0 if c <= 0 or c >= 1 else -c * x.log_cdf(t)

    res = integrate(integrand, x.lo, x.hi, cfg, envelope=x.survival, points=x.breakpoints)
    return MeasureValue("cpe", (x.name,), res)


def cri(x: DistributionHandle, y: DistributionHandle, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """Cumulative residual inaccuracy -int S_X ln S_Y."""
    inputs = (x.name, y.name)
    if y.hi < x.hi:
        return _divergent("cri", inputs, "survival of Y vanishes where survival of X does not")

    def integrand(t: float) -> float:
        s = x.survival(t)
        return 0.0 if s <= 0 else -s * y.log_survival(t)

    res = integrate(integrand, y.lo, x.hi, cfg, envelope=x.survival, points=_points(x, y))
    return MeasureValue("cri", inputs, res)


def cpi(x: DistributionHandle, y: DistributionHandle, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """Cumulative past inaccuracy -int F_X ln F_Y."""
    inputs = (x.name, y.name)
    if y.lo > x.lo:
        return _divergent("cpi", inputs, "cdf of Y vanishes where cdf of X does not")

    def integrand(t: float) -> float:
        c = x.cdf(t)
        return 0.0 if c <= 0 else -c * y.log_cdf(t)

    res = integrate(integrand, x.lo, y.hi, cfg, envelope=y.survival, points=_points(x, y))
    return MeasureValue("cpi", inputs, res)


def _ratio(name: str, inputs: tuple, num: MeasureValue, den: MeasureValue) -> MeasureValue:
    if num.diverged or den.diverged or abs(den.result.value) < 1e-300:
        return MeasureValue(name, inputs, IntegralResult.divergent())
    value = num.result.value / den.result.value
    err = abs(value) * (num.error_estimate / max(abs(num.result.value), 1e-300)
                        + den.error_estimate / abs(den.result.value))
    converged = num.result.converged and den.result.converged
    return MeasureValue(name, inputs, IntegralResult(value, err, converged, False))


def crir(x: DistributionHandle, y: DistributionHandle, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """cri(X, Y) / cre(X); undefined (flagged divergent) when cre(X) is zero or divergent."""
    return _ratio("crir", (x.name, y.name), cri(x, y, cfg), cre(x, cfg))


def cpir(x: DistributionHandle, y: DistributionHandle, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """cpi(X, Y) / cpe(X)."""
    return _ratio("cpir", (x.name, y.name), cpi(x, y, cfg), cpe(x, cfg))


def cumulative_hazard_integral(y: DistributionHandle, a: float, b: float, cfg: QuadratureConfig | None = None) -> IntegralResult:
    """-int_a^b ln S_Y, the integrated cumulative hazard of Y over (a, b)."""
    if b > y.hi:
        return IntegralResult.divergent()
    start = max(a, y.lo)
    return integrate(lambda t: -y.log_survival(t), start, b, cfg, points=y.breakpoints)


def cumulative_reversed_hazard_integral(y: DistributionHandle, a: float, b: float, cfg: QuadratureConfig | None = None) -> IntegralResult:
    """-int_a^b ln F_Y over (a, b)."""
    if a < y.lo:
        return IntegralResult.divergent()
    end = min(b, y.hi)
    return integrate(lambda t: -y.log_cdf(t), a, end, cfg, envelope=y.survival, points=y.breakpoints)


@dataclass(frozen=True)
class CumulativeHazardTransforms:
    """r2(x) = -int_0^x ln S_Y and t2(x) = -int_x^inf ln F_Y, with divergence flags."""
    distribution: DistributionHandle
    cfg: Optional[QuadratureConfig] = None

    def r2(self, x: float) -> IntegralResult:
        return cumulative_hazard_integral(self.distribution, 0.0, x, self.cfg)

    def t2(self, x: float) -> IntegralResult:
        return cumulative_reversed_hazard_integral(self.distribution, x, math.inf, self.cfg)


def cumulative_hazard_transforms(y: DistributionHandle, cfg: QuadratureConfig | None = None) -> CumulativeHazardTransforms:
    return CumulativeHazardTransforms(y, cfg)


def _expectation(x: DistributionHandle, transform: Callable[[float], IntegralResult], lo: float, hi: float,
                 cfg: QuadratureConfig | None) -> IntegralResult:
    density = x.require_density()
    inner_error = [0.0]

    def integrand(t: float) -> float:
        f = float(density(t))
        if f <= 0:
            return 0.0
        r = transform(t)
        inner_error[0] = max(inner_error[0], r.error_estimate)
        return f * r.value

    res = integrate(integrand, lo, hi, cfg, envelope=x.survival, points=x.breakpoints)
    return IntegralResult(res.value, res.error_estimate + inner_error[0], res.converged, res.diverged)


def cri_as_expectation(x: DistributionHandle, y: DistributionHandle, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """E[r2_Y(X)]; equals cri(X, Y) whenever both are finite."""
    inputs = (x.name, y.name)
    if y.hi < x.hi:
        return _divergent("cri_expectation", inputs, "survival of Y vanishes inside support of X")
    h = cumulative_hazard_transforms(y, cfg)
    return MeasureValue("cri_expectation", inputs, _expectation(x, h.r2, x.lo, x.hi, cfg))


def cpi_as_expectation(x: DistributionHandle, y: DistributionHandle, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """E[t2_Y(X)]; equals cpi(X, Y) whenever both are finite."""
    inputs = (x.name, y.name)
    if y.lo > x.lo:
        return _divergent("cpi_expectation", inputs, "cdf of Y vanishes inside support of X")
    h = cumulative_hazard_transforms(y, cfg)
    return MeasureValue("cpi_expectation", inputs, _expectation(x, h.t2, x.lo, x.hi, cfg))


def equilibrium_identity_check(
    x: DistributionHandle,
    y: DistributionHandle | None = None,
    cfg: QuadratureConfig | None = None,
    tol: float = 1e-6,
) -> PropositionReport:
    """
    Check the equilibrium representations

        cre(X) = E(X) * (H(X_e) - ln E(X))
        cri(X, Y) = E(X) * (H(X_e, Y_e) - ln E(Y))
        KL(X_e, Y_e) = ln(E(Y)/E(X)) + (cri(X, Y) - cre(X)) / E(X)

    the last two only when ``y`` is given.
    """
    mx = x.require_finite_mean()
    xe = equilibrium(x, cfg)
    c = cre(x, cfg)
    h = shannon_entropy(xe, cfg)
    names = (x.name,) if y is None else (x.name, y.name)
    reports = [identity_report(
        "equilibrium-cre", names, c.result.value, mx * (h.result.value - math.log(mx)),
        tol + 5 * (c.error_estimate + mx * h.error_estimate),
    )]
    if y is not None:
        my = y.require_finite_mean()
        ye = equilibrium(y, cfg)
        ch = cri(x, y, cfg)
        k = kerridge_inaccuracy(xe, ye, cfg)
        kl = kl_divergence(xe, ye, cfg)
        if not (ch.diverged or k.diverged or kl.diverged):
            reports.append(identity_report(
                "equilibrium-cri", names, ch.result.value, mx * (k.result.value - math.log(my)),
                tol + 5 * (ch.error_estimate + mx * k.error_estimate),
            ))
            reports.append(identity_report(
                "equilibrium-kl", names, kl.result.value,
                math.log(my / mx) + (ch.result.value - c.result.value) / mx,
                tol + 5 * (kl.error_estimate + (ch.error_estimate + c.error_estimate) / mx),
            ))
    return worst(reports, "equilibrium-identity")


PAIR_MEASURES: Dict[str, Callable] = {
    "kerridge": kerridge_inaccuracy,
    "kl": kl_divergence,
    "kl_equilibrium": kl_divergence_equilibrium,
    "cri": cri,
    "cpi": cpi,
    "crir": crir,
    "cpir": cpir,
    "cri_expectation": cri_as_expectation,
    "cpi_expectation": cpi_as_expectation,
}

SINGLE_MEASURES: Dict[str, Callable] = {
    "shannon": shannon_entropy,
    "cre": cre,
    "cpe": cpe,
}


def measure_by_name(name: str, x: DistributionHandle, y: DistributionHandle | None = None,
                    cfg: QuadratureConfig | None = None) -> MeasureValue:
    if name in SINGLE_MEASURES:
        return SINGLE_MEASURES[name](x, cfg)
    if name in PAIR_MEASURES:
        if y is None:
            raise ConfigError(f"measure '{name}' needs a second distribution")
        return PAIR_MEASURES[name](x, y, cfg)
    known = sorted(SINGLE_MEASURES) + sorted(PAIR_MEASURES)
    raise ConfigError(f"unknown measure '{name}'; choose from {', '.join(known)}")
