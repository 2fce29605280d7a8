"""
Interval (doubly truncated) measures on a window (t1, t2).

The window (t, inf) reduces the residual measures to their dynamic
forms and (0, t) does the same for the past measures.
"""
from __future__ import annotations

import logging
import math
from typing import Callable, Literal, Tuple

import numpy as np

from src.errors import DomainError, WindowError
from src.distributions import (
    DistributionHandle, TruncationWindow, MonotoneMap, GfrPair, affine, monotone_image,
    generalized_failure_rates, general_conditional_mean, hazard_rate, near_breakpoint,
)
from src.quadrature import QuadratureConfig, IntegralResult, integrate
from .results import (
    MeasureValue, PropositionReport, identity_report, inequality_report, precondition_report, worst,
)
from .static import cumulative_hazard_integral, cumulative_reversed_hazard_integral

logger = logging.getLogger(__name__)

__all__ = [
    "TruncationWindow", "GfrPair", "generalized_failure_rates", "interval_inaccuracy", "icre", "icpe", "icri",
    "icpi", "icri_decomposition", "icpi_decomposition", "icri_partial_t1", "icri_partial_t1_printed",
    "icpi_partial_t2", "monotone_transform_bounds", "scale_identity",
]


def _points(*dists: DistributionHandle) -> tuple:
    return tuple(sorted({p for d in dists for p in d.breakpoints}))


def _inputs(w: TruncationWindow, *dists: DistributionHandle) -> Tuple[str, ...]:
    return tuple(d.name for d in dists) + (f"window=({w.t1:g},{w.t2:g})",)


def _log_mass(w: TruncationWindow, d: DistributionHandle) -> float:
    return math.log(w.mass(d))


# ----------------------------------------------------------------------
# Integrands
# ----------------------------------------------------------------------
def _icri_integrand(x: DistributionHandle, y: DistributionHandle, w: TruncationWindow) -> Callable[[float], float]:
    lx, ly = _log_mass(w, x), _log_mass(w, y)

    def k(u: float) -> float:
        s = x.survival(u)
        if s <= 0:
            return 0.0
        return -math.exp(x.log_survival(u) - lx) * (y.log_survival(u) - ly)
    return k


def _icpi_integrand(x: DistributionHandle, y: DistributionHandle, w: TruncationWindow) -> Callable[[float], float]:
    lx, ly = _log_mass(w, x), _log_mass(w, y)

    def k(u: float) -> float:
        c = x.cdf(u)
        if c <= 0:
            return 0.0
        return -math.exp(x.log_cdf(u) - lx) * (y.log_cdf(u) - ly)
    return k


# ----------------------------------------------------------------------
# Measures
# ----------------------------------------------------------------------
def interval_inaccuracy(x: DistributionHandle, y: DistributionHandle, w: TruncationWindow,
                        cfg: QuadratureConfig | None = None) -> MeasureValue:
    """Density-based inaccuracy of the doubly truncated laws."""
    fx, fy = x.require_density(), y.require_density()
    w.validate(x, y)
    inputs = _inputs(w, x, y)
    lo, hi = max(w.t1, x.lo), min(w.t2, x.hi)
    if lo < y.lo or hi > y.hi:
        return MeasureValue("interval_inaccuracy", inputs, IntegralResult.divergent())
    mx, ly = w.mass(x), _log_mass(w, y)

    def integrand(u: float) -> float:
        f = float(fx(u))
        return 0.0 if f <= 0 else -(f / mx) * (y.log_density(u) - ly)

    res = integrate(integrand, lo, hi, cfg, envelope=x.survival, points=_points(x, y))
    return MeasureValue("interval_inaccuracy", inputs, res)


def icre(x: DistributionHandle, w: TruncationWindow, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """Interval cumulative residual entropy."""
    w.validate(x)
    lx = _log_mass(w, x)

    def integrand(u: float) -> float:
        if x.survival(u) <= 0:
            return 0.0
        ls = x.log_survival(u) - lx
        return -math.exp(ls) * ls

    res = integrate(integrand, w.t1, min(w.t2, x.hi), cfg, envelope=x.survival, points=x.breakpoints)
    return MeasureValue("icre", _inputs(w, x), res)


def icpe(x: DistributionHandle, w: TruncationWindow, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """Interval cumulative past entropy."""
    w.validate(x)
    lx = _log_mass(w, x)

    def integrand(u: float) -> float:
        if x.cdf(u) <= 0:
            return 0.0
        lc = x.log_cdf(u) - lx
        return -math.exp(lc) * lc

    res = integrate(integrand, max(w.t1, x.lo), w.t2, cfg, points=x.breakpoints)
    return MeasureValue("icpe", _inputs(w, x), res)


def icri(x: DistributionHandle, y: DistributionHandle, w: TruncationWindow,
         cfg: QuadratureConfig | None = None) -> MeasureValue:
    """Interval cumulative residual inaccuracy."""
    w.validate(x, y)
    inputs = _inputs(w, x, y)
    if min(w.t2, x.hi) > y.hi:
        return MeasureValue("icri", inputs, IntegralResult.divergent())
    res = integrate(_icri_integrand(x, y, w), w.t1, min(w.t2, x.hi), cfg,
                    envelope=x.survival, points=_points(x, y))
    return MeasureValue("icri", inputs, res)


def icpi(x: DistributionHandle, y: DistributionHandle, w: TruncationWindow,
         cfg: QuadratureConfig | None = None) -> MeasureValue:
    """Interval cumulative past inaccuracy."""
    w.validate(x, y)
    inputs = _inputs(w, x, y)
    start = max(w.t1, x.lo)
    if start < y.lo:
        return MeasureValue("icpi", inputs, IntegralResult.divergent())
    res = integrate(_icpi_integrand(x, y, w), start, w.t2, cfg, points=_points(x, y))
    return MeasureValue("icpi", inputs, res)


# ----------------------------------------------------------------------
# Decompositions
# ----------------------------------------------------------------------
def _conditional_expectation(x: DistributionHandle, w: TruncationWindow, transform: Callable[[float], IntegralResult],
                             cfg: QuadratureConfig | None) -> IntegralResult:
    density = x.require_density()
    mass = w.mass(x)
    inner = [0.0]

    def integrand(u: float) -> float:
        f = float(density(u))
        if f <= 0:
            return 0.0
        r = transform(u)
        inner[0] = max(inner[0], r.error_estimate)
        return f * r.value

    res = integrate(integrand, max(w.t1, x.lo), min(w.t2, x.hi), cfg, envelope=x.survival, points=x.breakpoints)
    return IntegralResult(res.value / mass, (res.error_estimate + inner[0]) / mass, res.converged, res.diverged)


def _boundary_term(d: DistributionHandle, w: TruncationWindow, side: Literal["survival", "cdf"]) -> float:
    """(t2 S(t2) - t1 S(t1)) / mass, with the survival or cdf as S."""
    fn = d.survival if side == "survival" else d.cdf
    upper = 0.0 if math.isinf(w.t2) else w.t2 * fn(w.t2)
    return (upper - w.t1 * fn(w.t1)) / w.mass(d)


def icri_decomposition(x: DistributionHandle, y: DistributionHandle, w: TruncationWindow,
                       cfg: QuadratureConfig | None = None, tol: float = 1e-6) -> PropositionReport:
    """
    icri = (S_X(t2)/dS_X) L(t1, t2) + E[L(t1, X) | window]
           + ln(dS_Y) * (m_X + (t2 S_X(t2) - t1 S_X(t1)) / dS_X)

    with L(a, b) = -int_a^b ln S_Y and m_X the general conditional mean.
    """
    inputs = _inputs(w, x, y)
    direct = icri(x, y, w, cfg)
    if direct.diverged:
        return precondition_report("icri-decomposition", inputs, "icri diverges")
    mass = w.mass(x)
    head = IntegralResult.zero()
    if not math.isinf(w.t2) and x.survival(w.t2) > 0:
        head = cumulative_hazard_integral(y, w.t1, w.t2, cfg).scaled(float(x.survival(w.t2)) / mass)
    middle = _conditional_expectation(x, w, lambda u: cumulative_hazard_integral(y, w.t1, u, cfg), cfg)
    m = general_conditional_mean(x, w, cfg)
    tail = math.log(w.mass(y)) * (m.value + _boundary_term(x, w, "survival"))
    alt = head.value + middle.value + tail
    return identity_report(
        "icri-decomposition", inputs, direct.result.value, alt,
        tol + 5 * (direct.error_estimate + head.error_estimate + middle.error_estimate + m.error_estimate),
    )


def icpi_decomposition(x: DistributionHandle, y: DistributionHandle, w: TruncationWindow,
                       cfg: QuadratureConfig | None = None, tol: float = 1e-6) -> PropositionReport:
    """
    icpi = (F_X(t1)/dF_X) T(t1, t2) + E[T(X, t2) | window]
           + ln(dF_Y) * ((t2 F_X(t2) - t1 F_X(t1)) / dF_X - m_X)

    with T(a, b) = -int_a^b ln F_Y.
    """
    inputs = _inputs(w, x, y)
    if math.isinf(w.t2):
        return precondition_report("icpi-decomposition", inputs, "needs a bounded window")
    direct = icpi(x, y, w, cfg)
    if direct.diverged:
        return precondition_report("icpi-decomposition", inputs, "icpi diverges")
    mass = w.mass(x)
    head = IntegralResult.zero()
    if x.cdf(w.t1) > 0:
        head = cumulative_reversed_hazard_integral(y, w.t1, w.t2, cfg).scaled(float(x.cdf(w.t1)) / mass)
    middle = _conditional_expectation(x, w, lambda u: cumulative_reversed_hazard_integral(y, u, w.t2, cfg), cfg)
    m = general_conditional_mean(x, w, cfg)
    tail = math.log(w.mass(y)) * (_boundary_term(x, w, "cdf") - m.value)
    alt = head.value + middle.value + tail
    return identity_report(
        "icpi-decomposition", inputs, direct.result.value, alt,
        tol + 5 * (direct.error_estimate + head.error_estimate + middle.error_estimate + m.error_estimate),
    )


# ----------------------------------------------------------------------
# Window derivatives
# ----------------------------------------------------------------------
def _window_difference(func: Callable[[float], float], at: float, dists, lower_limit: float, upper_limit: float) -> float:
    h = 1e-3 * max(abs(at), 1e-2)
    if near_breakpoint(at, dists):
        logger.warning("window end %.6g sits on a breakpoint; using a one-sided difference", at)
        if at + h < upper_limit:
            return (func(at + h) - func(at)) / h
        return (func(at) - func(at - h)) / h
    if at - h <= lower_limit:
        return (func(at + h) - func(at)) / h
    if at + h >= upper_limit:
        return (func(at) - func(at - h)) / h
    return (func(at + h) - func(at - h)) / (2.0 * h)


def _value(mv: MeasureValue) -> float:
    if mv.diverged:
        raise DomainError(f"{mv.name}{mv.inputs} diverges")
    return mv.result.value


def icri_partial_t1(x: DistributionHandle, y: DistributionHandle, w: TruncationWindow,
                    cfg: QuadratureConfig | None = None) -> float:
    """d icri / d t1 by finite differences."""
    w.validate(x, y)
    return _window_difference(
        lambda t1: _value(icri(x, y, TruncationWindow(t1, w.t2), cfg)), w.t1, (x, y), 0.0, w.t2,
    )


def icpi_partial_t2(x: DistributionHandle, y: DistributionHandle, w: TruncationWindow,
                    cfg: QuadratureConfig | None = None) -> float:
    """d icpi / d t2 by finite differences."""
    w.validate(x, y)
    if math.isinf(w.t2):
        raise WindowError("icpi_partial_t2 needs a bounded window")
    return _window_difference(
        lambda t2: _value(icpi(x, y, TruncationWindow(w.t1, t2), cfg)), w.t2, (x, y), w.t1, math.inf,
    )


def icri_partial_t1_printed(x: DistributionHandle, y: DistributionHandle, w: TruncationWindow,
                            cfg: QuadratureConfig | None = None) -> float:
    """
    Closed form

        h1_X * [icri - (h1_Y/h1_X)(m_X + (t2 S_X(t2) - t1 S_X(t1))/dS_X)
                + ln(S_Y(t1)/dS_Y) / hazard_X(t1)]
    """
    gx = generalized_failure_rates(x, w)
    gy = generalized_failure_rates(y, w)
    if gx.h1 <= 0:
        raise DomainError(f"generalized failure rate of {x.name} vanishes at t1={w.t1}")
    value = _value(icri(x, y, w, cfg))
    m = general_conditional_mean(x, w, cfg).value
    lam = hazard_rate(x, w.t1)
    log_ratio = y.log_survival(w.t1) - math.log(w.mass(y))
    return gx.h1 * (value - (gy.h1 / gx.h1) * (m + _boundary_term(x, w, "survival")) + log_ratio / lam)


# ----------------------------------------------------------------------
# Transform bounds
# ----------------------------------------------------------------------
def scale_identity(x: DistributionHandle, y: DistributionHandle, b: float, w: TruncationWindow,
                   cfg: QuadratureConfig | None = None, tol: float = 1e-6,
                   measure: Literal["icri", "icpi"] = "icri") -> PropositionReport:
    """measure(bX, bY; t1, t2) = b * measure(X, Y; t1/b, t2/b)."""
    fn = icri if measure == "icri" else icpi
    inputs = _inputs(w, x, y) + (f"b={b:g}",)
    try:
        lhs = fn(affine(x, b, 0.0), affine(y, b, 0.0), w, cfg)
        rhs = fn(x, y, TruncationWindow(w.t1 / b, w.t2 / b), cfg)
    except WindowError as exc:
        return precondition_report("scale-identity", inputs, str(exc))
    if lhs.diverged or rhs.diverged:
        return precondition_report("scale-identity", inputs, f"{measure} diverges")
    return identity_report("scale-identity", inputs, lhs.result.value, b * rhs.result.value,
                           tol + 5 * (lhs.error_estimate + b * rhs.error_estimate), notes=measure)


def monotone_transform_bounds(
    x: DistributionHandle, y: DistributionHandle, phi: MonotoneMap, a: float, b: float, w: TruncationWindow,
    cfg: QuadratureConfig | None = None, tol: float = 1e-6, measure: Literal["icri", "icpi"] = "icri",
) -> PropositionReport:
    """
    Sandwich the image measure between a and b times the base measure on the
    preimage window, given a <= |phi'| <= b there.

    Increasing phi: image ``measure`` vs base ``measure``. Decreasing phi:
    image icri vs base icpi. The bound direction follows the sign of the base
    integrand; a sign change makes the sandwich inapplicable. The scale
    identity with factor b is checked alongside.
    """
    inputs = _inputs(w, x, y) + (phi.label, f"a={a:g}", f"b={b:g}")
    if not 0 < a <= b:
        return precondition_report("monotone-transform", inputs, "need 0 < a <= b")
    ends = sorted((float(phi.inverse(w.t1)), float(phi.inverse(w.t2))))
    pre = TruncationWindow(max(ends[0], 0.0), ends[1])
    grid = np.linspace(pre.t1, pre.t2 if math.isfinite(pre.t2) else pre.t1 + 50.0, 131)[1:-1]
    slopes = np.abs(np.asarray(phi.derivative(grid), dtype=float))
    if np.any(slopes < a * (1 - 1e-9)) or np.any(slopes > b * (1 + 1e-9)):
        return precondition_report("monotone-transform", inputs, "|phi'| leaves [a, b] on the preimage window")

    reports = [scale_identity(x, y, b, w, cfg, tol, measure if phi.increasing else "icri")]
    if phi.increasing:
        base_fn = icri if measure == "icri" else icpi
        integrand = (_icri_integrand if measure == "icri" else _icpi_integrand)
        image_fn = base_fn
    else:
        base_fn, integrand, image_fn = icpi, _icpi_integrand, icri

    try:
        base = base_fn(x, y, pre, cfg)
        image = image_fn(monotone_image(x, phi), monotone_image(y, phi), w, cfg)
    except WindowError as exc:
        reports.append(precondition_report("monotone-transform", inputs, str(exc)))
        return worst(reports, "monotone-transform")
    if base.diverged or image.diverged:
        reports.append(precondition_report("monotone-transform", inputs, "divergent measure"))
        return worst(reports, "monotone-transform")

    k = integrand(x, y, pre)
    signs = np.array([k(float(u)) for u in grid])
    if np.all(signs >= -1e-12):
        lower, upper = a * base.result.value, b * base.result.value
    elif np.all(signs <= 1e-12):
        lower, upper = b * base.result.value, a * base.result.value
    else:
        reports.append(precondition_report("monotone-transform", inputs, "base integrand changes sign"))
        return worst(reports, "monotone-transform")

    t = image.result.value
    slack = tol + 5 * (image.error_estimate + b * base.error_estimate)
    reports.append(inequality_report("monotone-transform", inputs, t, lower, slack, notes="lower bound"))
    reports.append(inequality_report("monotone-transform", inputs, upper, t, slack, notes="upper bound"))
    return worst(reports, "monotone-transform")
