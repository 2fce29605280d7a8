"""
Dynamic (residual and past) cumulative measures.

Residual measures condition on X > t and integrate over (t, hi); past
measures condition on X <= t and integrate over (lo, t). Integrands are
evaluated as exp(log S(x) - log S(t)) so far tails stay accurate.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.errors import DomainError, NonDifferentiableError, CapabilityError, PreconditionError
from src.distributions import (
    DistributionHandle, GridSpec, time_grid, near_breakpoint, hazard_rate, reversed_hazard_rate,
    mean_residual_life, mean_inactivity_time, truncated_mean, affine,
)
from src.quadrature import QuadratureConfig, IntegralResult, integrate
from .results import (
    MeasureValue, PropositionReport, identity_report, precondition_report, worst,
)

logger = logging.getLogger(__name__)

MIN_CLASSIFY_POINTS = 8

CurveKind = Literal["dcre", "dcri", "dcpe", "dcpi"]


def _points(*dists: DistributionHandle) -> tuple:
    return tuple(sorted({p for d in dists for p in d.breakpoints}))


def _require_survival(d: DistributionHandle, t: float) -> float:
    if not d.survival(t) > 0:
        raise DomainError(f"residual measure of {d.name} undefined at t={t}: survival is zero")
    return d.log_survival(t)


def _require_cdf(d: DistributionHandle, t: float) -> float:
    if not d.cdf(t) > 0:
        raise DomainError(f"past measure of {d.name} undefined at t={t}: cdf is zero")
    return d.log_cdf(t)


# ----------------------------------------------------------------------
# Residual side
# ----------------------------------------------------------------------
def dcre(x: DistributionHandle, t: float, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """Dynamic cumulative residual entropy of X at age t."""
    log_st = _require_survival(x, t)

    def integrand(u: float) -> float:
        ls = x.log_survival(u) - log_st
        return 0.0 if ls == -math.inf else -math.exp(ls) * ls

    def envelope(u: float) -> float:
        return math.exp(min(x.log_survival(u) - log_st, 0.0))

    res = integrate(integrand, max(t, x.lo), x.hi, cfg, envelope=envelope, points=x.breakpoints)
    return MeasureValue("dcre", (x.name, f"t={t:g}"), res)


def dcri(x: DistributionHandle, y: DistributionHandle, t: float, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """Dynamic cumulative residual inaccuracy: -int_t S_X(u)/S_X(t) ln(S_Y(u)/S_Y(t)) du."""
    log_sx = _require_survival(x, t)
    log_sy = _require_survival(y, t)
    inputs = (x.name, y.name, f"t={t:g}")
    if y.hi < x.hi:
        return MeasureValue("dcri", inputs, IntegralResult.divergent())

    def integrand(u: float) -> float:
        lx = x.log_survival(u) - log_sx
        if lx == -math.inf:
            return 0.0
        return -math.exp(lx) * (y.log_survival(u) - log_sy)

    def envelope(u: float) -> float:
        return math.exp(min(x.log_survival(u) - log_sx, 0.0))

    res = integrate(integrand, max(t, y.lo), x.hi, cfg, envelope=envelope, points=_points(x, y))
    return MeasureValue("dcri", inputs, res)


# ----------------------------------------------------------------------
# Past side
# ----------------------------------------------------------------------
def dcpe(x: DistributionHandle, t: float, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """Dynamic cumulative past entropy of X at time t."""
    log_ft = _require_cdf(x, t)

    def integrand(u: float) -> float:
        lc = x.log_cdf(u) - log_ft
        return 0.0 if lc == -math.inf else -math.exp(lc) * lc

    res = integrate(integrand, x.lo, min(t, x.hi), cfg, points=x.breakpoints)
    return MeasureValue("dcpe", (x.name, f"t={t:g}"), res)


def dcpi(x: DistributionHandle, y: DistributionHandle, t: float, cfg: QuadratureConfig | None = None) -> MeasureValue:
    """Dynamic cumulative past inaccuracy: -int^t F_X(u)/F_X(t) ln(F_Y(u)/F_Y(t)) du."""
    log_fx = _require_cdf(x, t)
    log_fy = _require_cdf(y, t)
    inputs = (x.name, y.name, f"t={t:g}")
    if y.lo > x.lo:
        return MeasureValue("dcpi", inputs, IntegralResult.divergent())

    def integrand(u: float) -> float:
        lx = x.log_cdf(u) - log_fx
        if lx == -math.inf:
            return 0.0
        return -math.exp(lx) * (y.log_cdf(u) - log_fy)

    res = integrate(integrand, x.lo, min(t, y.hi), cfg, points=_points(x, y))
    return MeasureValue("dcpi", inputs, res)


# ----------------------------------------------------------------------
# Derivatives
# ----------------------------------------------------------------------
def central_difference(func: Callable[[float], float], t: float, rel_step: float = 1e-4) -> float:
    h = rel_step * max(abs(t), 1e-2)
    return (func(t + h) - func(t - h)) / (2.0 * h)


def _check_smooth(t: float, *dists: DistributionHandle) -> None:
    if near_breakpoint(t, dists):
        raise NonDifferentiableError(f"t={t} sits on a breakpoint or support end")


def _finite(mv: MeasureValue | IntegralResult, what: str) -> float:
    result = mv.result if isinstance(mv, MeasureValue) else mv
    if result.diverged:
        raise DomainError(f"{what} diverges")
    return result.value


def dcri_derivative(x: DistributionHandle, y: DistributionHandle, t: float, cfg: QuadratureConfig | None = None) -> float:
    """
    d/dt dcri(X, Y; t) = hazard_X(t) * dcri(t) - hazard_Y(t) * mrl_X(t).
    """
    _check_smooth(t, x, y)
    value = _finite(dcri(x, y, t, cfg), "dcri")
    mrl = _finite(mean_residual_life(x, t, cfg), "mean residual life")
    return hazard_rate(x, t) * value - hazard_rate(y, t) * mrl


def dcri_derivative_printed(x: DistributionHandle, y: DistributionHandle, t: float, cfg: QuadratureConfig | None = None) -> float:
    """Variant using the mean residual life of Y; kept for comparison reports."""
    _check_smooth(t, x, y)
    value = _finite(dcri(x, y, t, cfg), "dcri")
    mrl = _finite(mean_residual_life(y, t, cfg), "mean residual life")
    return hazard_rate(x, t) * value - hazard_rate(y, t) * mrl


def dcpi_derivative(x: DistributionHandle, y: DistributionHandle, t: float, cfg: QuadratureConfig | None = None) -> float:
    """
    d/dt dcpi(X, Y; t) = rhazard_Y(t) * mit_X(t) - rhazard_X(t) * dcpi(t).
    """
    _check_smooth(t, x, y)
    value = _finite(dcpi(x, y, t, cfg), "dcpi")
    mit = _finite(mean_inactivity_time(x, t, cfg), "mean inactivity time")
    return reversed_hazard_rate(y, t) * mit - reversed_hazard_rate(x, t) * value


# ----------------------------------------------------------------------
# Curves
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class DynamicMeasureCurve:
    kind: str
    inputs: Tuple[str, ...]
    t_grid: np.ndarray
    values: np.ndarray
    diverged_at: Tuple[float, ...] = ()

    def finite(self) -> Tuple[np.ndarray, np.ndarray]:
        mask = np.isfinite(self.values)
        return self.t_grid[mask], self.values[mask]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "t": self.t_grid,
            "value": self.values,
            "diverged": np.isin(self.t_grid, np.asarray(self.diverged_at, dtype=float)),
        })


@dataclass(frozen=True)
class MonotonicityVerdict:
    classification: Literal["increasing", "decreasing", "constant", "non-monotone"]
    witness_points: Tuple[float, ...] = ()

    def to_dict(self) -> Dict[str, object]:
        return {"classification": self.classification, "witness_points": list(self.witness_points)}


def _curve_point(kind: str, x: DistributionHandle, y: Optional[DistributionHandle], t: float,
                 cfg: QuadratureConfig | None) -> MeasureValue:
    if kind == "dcre":
        return dcre(x, t, cfg)
    if kind == "dcpe":
        return dcpe(x, t, cfg)
    if y is None:
        raise CapabilityError(f"{kind} needs a second distribution")
    if kind == "dcri":
        return dcri(x, y, t, cfg)
    if kind == "dcpi":
        return dcpi(x, y, t, cfg)
    raise ValueError(f"unknown curve kind '{kind}'")


def dynamic_curve(
    kind: CurveKind,
    x: DistributionHandle,
    y: DistributionHandle | None = None,
    grid: GridSpec | Sequence[float] | None = None,
    cfg: QuadratureConfig | None = None,
) -> DynamicMeasureCurve:
    """Evaluate a dynamic measure over a time grid, dropping points outside its domain."""
    dists = (x,) if y is None else (x, y)
    ts = np.asarray(grid, dtype=float) if grid is not None and not isinstance(grid, GridSpec) \
        else time_grid(grid or GridSpec(n=64), *dists)
    kept: List[float] = []
    values: List[float] = []
    diverged: List[float] = []
    for t in ts:
        try:
            mv = _curve_point(kind, x, y, float(t), cfg)
        except DomainError:
            continue
        kept.append(float(t))
        if mv.diverged:
            diverged.append(float(t))
            values.append(np.nan)
        else:
            values.append(mv.result.value)
    names = tuple(d.name for d in dists)
    logger.debug("%s curve for %s: %d points, %d divergent", kind, names, len(kept), len(diverged))
    return DynamicMeasureCurve(kind, names, np.asarray(kept), np.asarray(values), tuple(diverged))


def classify_monotonicity(curve: DynamicMeasureCurve, band: float = 1e-9) -> MonotonicityVerdict:
    """Classify with a relative noise band; witnesses bracket the first opposite moves."""
    if curve.t_grid.size < MIN_CLASSIFY_POINTS:
        raise PreconditionError(
            f"monotonicity needs at least {MIN_CLASSIFY_POINTS} grid points, got {curve.t_grid.size}"
        )
    ts, vs = curve.finite()
    if ts.size < 2:
        return MonotonicityVerdict("constant")
    scale = max(1.0, float(np.max(np.abs(vs))))
    steps = np.diff(vs)
    up = np.where(steps > band * scale)[0]
    down = np.where(steps < -band * scale)[0]
    if up.size and down.size:
        witnesses = (float(ts[up[0]]), float(ts[up[0] + 1]), float(ts[down[0]]), float(ts[down[0] + 1]))
        return MonotonicityVerdict("non-monotone", witnesses)
    if up.size:
        return MonotonicityVerdict("increasing")
    if down.size:
        return MonotonicityVerdict("decreasing")
    return MonotonicityVerdict("constant")


# ----------------------------------------------------------------------
# Identities
# ----------------------------------------------------------------------
def _tol(base: float, *results: MeasureValue | IntegralResult) -> float:
    total = 0.0
    for r in results:
        total += r.error_estimate
    return base + 5.0 * total


def proportional_hazards_identity(
    x: DistributionHandle, y: DistributionHandle, alpha: float, t_grid: Sequence[float],
    cfg: QuadratureConfig | None = None, tol: float = 1e-6,
) -> PropositionReport:
    """
    When S_X = S_Y ** alpha: alpha * dcri(X, Y; t) = dcre(X; t) for every t.

    The note records the deviation of the reading dcri = alpha * dcre.
    """
    names = (x.name, y.name, f"alpha={alpha:g}")
    ts = np.asarray(t_grid, dtype=float)
    gap = np.max(np.abs(np.asarray(x.survival(ts)) - np.asarray(y.survival(ts)) ** alpha))
    if gap > 1e-9:
        return precondition_report("proportional-hazards", names, f"S_X != S_Y^alpha (gap {gap:.3g})")
    reports = []
    alt = 0.0
    for t in ts:
        a = dcri(x, y, float(t), cfg)
        b = dcre(x, float(t), cfg)
        if a.diverged or b.diverged:
            reports.append(precondition_report("proportional-hazards", names, f"divergent measure at t={t:g}"))
            continue
        alt = max(alt, abs(a.result.value - alpha * b.result.value))
        reports.append(identity_report(
            "proportional-hazards", names + (f"t={t:g}",), alpha * a.result.value, b.result.value,
            _tol(tol, a.result.scaled(alpha), b),
        ))
    return worst(reports).with_note(f"alternative reading dcri = alpha*dcre deviates by {alt:.3g}")


def proportional_reversed_hazards_identity(
    x: DistributionHandle, y: DistributionHandle, theta: float, t_grid: Sequence[float],
    cfg: QuadratureConfig | None = None, tol: float = 1e-6,
) -> PropositionReport:
    """When F_X = F_Y ** theta: theta * dcpi(X, Y; t) = dcpe(X; t)."""
    names = (x.name, y.name, f"theta={theta:g}")
    ts = np.asarray(t_grid, dtype=float)
    gap = np.max(np.abs(np.asarray(x.cdf(ts)) - np.asarray(y.cdf(ts)) ** theta))
    if gap > 1e-9:
        return precondition_report("proportional-reversed-hazards", names, f"F_X != F_Y^theta (gap {gap:.3g})")
    reports = []
    alt = 0.0
    for t in ts:
        a = dcpi(x, y, float(t), cfg)
        b = dcpe(x, float(t), cfg)
        if a.diverged or b.diverged:
            reports.append(precondition_report("proportional-reversed-hazards", names, f"divergent measure at t={t:g}"))
            continue
        alt = max(alt, abs(a.result.value - theta * b.result.value))
        reports.append(identity_report(
            "proportional-reversed-hazards", names + (f"t={t:g}",), theta * a.result.value, b.result.value,
            _tol(tol, a.result.scaled(theta), b),
        ))
    return worst(reports).with_note(f"alternative reading dcpi = theta*dcpe deviates by {alt:.3g}")


def linear_transform_identity(
    x: DistributionHandle, y: DistributionHandle, a: float, b: float, t: float,
    cfg: QuadratureConfig | None = None, tol: float = 1e-6,
) -> PropositionReport:
    """
    For a > 0 and 0 <= b < t:
        dcri(aX+b, aY+b; t) = a * dcri(X, Y; (t-b)/a)
        dcpi(aX+b, aY+b; t) = a * dcpi(X, Y; (t-b)/a)
    Halves whose base time is outside the domain are skipped.
    """
    names = (x.name, y.name, f"a={a:g}", f"b={b:g}", f"t={t:g}")
    if not (a > 0 and 0 <= b < t):
        return precondition_report("linear-transform", names, "need a > 0 and 0 <= b < t")
    ax, ay = affine(x, a, b), affine(y, a, b)
    s = (t - b) / a
    reports = []
    for label, fn in (("dcri", dcri), ("dcpi", dcpi)):
        try:
            lhs = fn(ax, ay, t, cfg)
            rhs = fn(x, y, s, cfg)
        except DomainError as exc:
            reports.append(precondition_report("linear-transform", names, f"{label}: {exc}"))
            continue
        if lhs.diverged or rhs.diverged:
            reports.append(precondition_report("linear-transform", names, f"{label} diverges"))
            continue
        reports.append(identity_report(
            "linear-transform", names, lhs.result.value, a * rhs.result.value,
            _tol(tol, lhs, rhs.result.scaled(a)), notes=label,
        ))
    return worst(reports)


def symmetric_identity(
    x: DistributionHandle, y: DistributionHandle, b: float, t: float,
    cfg: QuadratureConfig | None = None, tol: float = 1e-6,
) -> PropositionReport:
    """For laws symmetric on [0, b]: dcpi(X, Y; t) = dcri(X, Y; b - t)."""
    names = (x.name, y.name, f"b={b:g}", f"t={t:g}")
    xs = np.linspace(0.0, b, 101)
    for d in (x, y):
        gap = np.max(np.abs(np.asarray(d.cdf(xs)) - np.asarray(d.survival(b - xs))))
        if gap > 1e-9:
            return precondition_report("symmetric", names, f"{d.name} is not symmetric on [0, {b:g}]")
    if not 0 < t < b:
        return precondition_report("symmetric", names, "need 0 < t < b")
    lhs = dcpi(x, y, t, cfg)
    rhs = dcri(x, y, b - t, cfg)
    if lhs.diverged or rhs.diverged:
        return precondition_report("symmetric", names, "divergent measure")
    return identity_report("symmetric", names, lhs.result.value, rhs.result.value, _tol(tol, lhs, rhs))


# ----------------------------------------------------------------------
# Past inaccuracy as an expectation
# ----------------------------------------------------------------------
def tau2(x: DistributionHandle, u: float, t: float, cfg: QuadratureConfig | None = None) -> IntegralResult:
    """-int_u^t ln(F_X(s)/F_X(t)) ds; divergent when F_X vanishes on part of (u, t)."""
    if not 0 <= u < t:
        raise DomainError(f"tau2 needs 0 <= u < t, got u={u}, t={t}")
    log_ft = _require_cdf(x, t)
    if u < x.lo:
        return IntegralResult.divergent()
    end = min(t, x.hi)
    return integrate(lambda s: -(x.log_cdf(s) - log_ft), u, end, cfg, points=x.breakpoints)


def dcpi_as_conditional_expectation(
    x: DistributionHandle, y: DistributionHandle, t: float, cfg: QuadratureConfig | None = None,
) -> MeasureValue:
    """
    E[tau2_X(Y, t) | Y <= t], which equals dcpi(Y, X; t).
    """
    density = y.require_density()
    log_gt = _require_cdf(y, t)
    _require_cdf(x, t)
    inputs = (x.name, y.name, f"t={t:g}")
    if y.lo < x.lo:
        return MeasureValue("dcpi_expectation", inputs, IntegralResult.divergent())
    inner_error = [0.0]

    def integrand(u: float) -> float:
        g = float(density(u))
        if g <= 0:
            return 0.0
        r = tau2(x, u, t, cfg)
        inner_error[0] = max(inner_error[0], r.error_estimate)
        return g * math.exp(-log_gt) * r.value

    res = integrate(integrand, y.lo, min(t, y.hi), cfg, points=_points(x, y))
    res = IntegralResult(res.value, res.error_estimate + inner_error[0], res.converged, res.diverged)
    return MeasureValue("dcpi_expectation", inputs, res)


def zt_identity(
    x: DistributionHandle, y: DistributionHandle, t: float,
    cfg: QuadratureConfig | None = None, tol: float = 1e-6,
) -> PropositionReport:
    """
    For X <=rh Y with E[X | X <= t] < E[Y | Y <= t]:

        dcpi(Y, X; t) = dcpe(X; t) + (mu_Y - mu_X) * E[ln(F_X(Z)/F_X(t))]

    where Z has density (F_X(z)/F_X(t) - F_Y(z)/F_Y(t)) / (mu_Y - mu_X) on (0, t).
    Also checks that this density integrates to one.
    """
    names = (x.name, y.name, f"t={t:g}")
    log_fx = _require_cdf(x, t)
    log_fy = _require_cdf(y, t)
    lo = max(x.lo, y.lo)
    grid = np.linspace(lo, t, 66)[1:-1]
    grid = grid[(np.asarray(x.cdf(grid)) > 0) & (np.asarray(y.cdf(grid)) > 0)]
    if grid.size == 0 or np.any(reversed_hazard_rate(x, grid) > reversed_hazard_rate(y, grid) * (1 + 1e-9) + 1e-12):
        return precondition_report("zt-identity", names, "X <=rh Y not certified on (0, t)")
    mu_x = _finite(truncated_mean(x, t, cfg), "truncated mean")
    mu_y = _finite(truncated_mean(y, t, cfg), "truncated mean")
    gap = mu_y - mu_x
    if not gap > 0:
        return precondition_report("zt-identity", names, "need E[X | X <= t] < E[Y | Y <= t]")

    def weight(z: float) -> float:
        fx = math.exp(x.log_cdf(z) - log_fx) if x.cdf(z) > 0 else 0.0
        fy = math.exp(y.log_cdf(z) - log_fy) if y.cdf(z) > 0 else 0.0
        return fx - fy

    start = min(x.lo, y.lo)
    norm = integrate(lambda z: weight(z) / gap, start, t, cfg, points=_points(x, y))

    def log_term(z: float) -> float:
        w = weight(z)
        if w == 0 or x.cdf(z) <= 0:
            return 0.0
        return w * (x.log_cdf(z) - log_fx)

    expect = integrate(log_term, start, t, cfg, points=_points(x, y))
    lhs = dcpi(y, x, t, cfg)
    base = dcpe(x, t, cfg)
    if lhs.diverged or base.diverged or expect.diverged:
        return precondition_report("zt-identity", names, "divergent measure")
    reports = [
        identity_report("zt-identity", names, lhs.result.value, base.result.value + expect.value,
                        _tol(tol, lhs, base, expect), notes="decomposition"),
        identity_report("zt-identity", names, norm.value, 1.0, _tol(tol, norm), notes="density normalisation"),
    ]
    return worst(reports)
