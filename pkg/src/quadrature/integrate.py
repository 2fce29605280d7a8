"""
Adaptive integration over finite and semi-infinite intervals.

Finite intervals go straight to ``scipy.integrate.quad``. Semi-infinite
intervals are covered by geometrically growing panels [a + h(2^k - 1),
a + h(2^(k+1) - 1)], each integrated with ``quad``, so that panel
contributions can be watched for divergence.
"""
from __future__ import annotations

import logging
import math
import warnings
from typing import Callable, Iterable, List, Optional, Sequence

import numpy as np
from scipy.integrate import quad, IntegrationWarning
from scipy.special import xlogy as _xlogy

from src.errors import QuadratureEvaluationError
from .config import QuadratureConfig, IntegralResult, DEFAULT_QUADRATURE

logger = logging.getLogger(__name__)

Integrand = Callable[[float], float]


def _guard(f: Integrand) -> Integrand:
    def wrapped(x: float) -> float:
        y = float(f(x))
        if not math.isfinite(y):
            raise QuadratureEvaluationError(x, y)
        return y
    return wrapped


def _interior(points: Optional[Iterable[float]], a: float, b: float) -> List[float]:
    if not points:
        return []
    width = b - a
    return sorted({float(p) for p in points if a + 1e-12 * width < p < b - 1e-12 * width})


def integrate_finite(
    f: Integrand,
    a: float,
    b: float,
    cfg: QuadratureConfig | None = None,
    points: Optional[Sequence[float]] = None,
) -> IntegralResult:
    """
    Integrate ``f`` over [a, b].

    ``points`` are known kinks or jumps (breakpoints, sample points);
    those inside (a, b) are handed to ``quad`` as split points.
    """
    cfg = cfg or DEFAULT_QUADRATURE
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError(f"finite bounds required, got [{a}, {b}]")
    if b < a:
        raise ValueError(f"lower bound {a} exceeds upper bound {b}")
    if b == a:
        return IntegralResult.zero()

    inner = _interior(points, a, b)
    limit = max(cfg.max_subdivisions, 2 * len(inner) + 10)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        out = quad(
            _guard(f), a, b,
            epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=limit,
            points=inner or None, full_output=1,
        )
    value, error = float(out[0]), float(out[1])
    converged = error <= cfg.tolerance_for(value)
    if not converged:
        message = out[3] if len(out) > 3 else "tolerance not met"
        logger.debug("quad on [%.6g, %.6g] short of tolerance (err=%.3g): %s", a, b, error, message)
    return IntegralResult(value, error, converged, False)


def _initial_width(a: float, envelope: Optional[Integrand]) -> float:
    if envelope is None:
        return 1.0
    start = float(envelope(a))
    if not start > 0:
        return 1.0
    for j in range(-20, 41):
        h = 2.0 ** j
        if float(envelope(a + h)) <= 0.5 * start:
            return h
    return 1.0


def _recent_ratios(contributions: Sequence[float], cfg: QuadratureConfig) -> Optional[np.ndarray]:
    """Successive panel ratios over the last run, or None when the run is too short or hits zero."""
    run = cfg.growth_run_length
    if len(contributions) <= run:
        return None
    recent = np.asarray(contributions[-(run + 1):], dtype=float)
    if np.any(recent[:-1] <= 0):
        return None
    return recent[1:] / recent[:-1]


def _close_tail(total: IntegralResult, last: float, contributions: Sequence[float],
                cfg: QuadratureConfig, where: float) -> IntegralResult:
    """
    Finish a panel sum whose contributions are still above tolerance.

    Panels that shrink by a steady ratio r < ``cfg.max_tail_ratio`` per
    doubling (power-law tails) have their remainder summed as a geometric
    series. A ratio at or above the ceiling is reported as divergent.
    """
    ratios = _recent_ratios(contributions, cfg)
    if ratios is None:
        return IntegralResult(total.value, total.error_estimate, total.converged, False)
    r = float(np.exp(np.mean(np.log(ratios))))
    if r >= cfg.max_tail_ratio:
        logger.debug("panel ratio %.4f at x=%.6g without decay: divergent", r, where)
        return IntegralResult.divergent(total.value, total.error_estimate)
    remainder = last * r / (1.0 - r)
    spread = float(np.ptp(ratios))
    value = total.value + remainder
    err = total.error_estimate + abs(remainder) * spread / (1.0 - r)
    logger.debug("geometric tail r=%.4f from x=%.6g adds %.3g", r, where, remainder)
    return IntegralResult(value, err, total.converged and err <= cfg.tolerance_for(value), False)


def integrate_semi_infinite(
    f: Integrand,
    a: float,
    cfg: QuadratureConfig | None = None,
    envelope: Optional[Integrand] = None,
    points: Optional[Sequence[float]] = None,
) -> IntegralResult:
    """
    Integrate ``f`` over [a, inf).

    ``envelope`` is a non-increasing function dominating the tail of the
    integrand's weight (normally a survival function). It sets the first
    panel width and allows stopping once it drops below
    ``cfg.tail_cut_survival``.
    """
    cfg = cfg or DEFAULT_QUADRATURE
    if not math.isfinite(a):
        raise ValueError(f"finite lower bound required, got {a}")

    h = _initial_width(a, envelope)
    total = IntegralResult.zero()
    contributions: List[float] = []
    growth_run = 0
    seen_mass = False
    lo = a
    for k in range(cfg.max_doublings):
        hi = a + h * (2.0 ** (k + 1) - 1.0)
        panel = integrate_finite(f, lo, hi, cfg, points)
        total = total.combined(panel, cfg)
        c = abs(panel.value)
        seen_mass = seen_mass or c > 0
        tol_now = cfg.tolerance_for(total.value)
        tail = float(envelope(hi)) if envelope is not None else None

        counts = tail is None or tail <= cfg.growth_check_survival
        if counts and contributions and c > tol_now and c >= cfg.divergence_growth_factor * contributions[-1]:
            growth_run += 1
        else:
            growth_run = 0
        contributions.append(c)

        if growth_run >= cfg.growth_run_length:
            logger.debug("panel growth for %d doublings up to x=%.6g: divergent", growth_run, hi)
            return IntegralResult.divergent(total.value, total.error_estimate)

        decaying = len(contributions) >= 2 and c <= contributions[-2]
        if seen_mass and c <= tol_now and decaying:
            return IntegralResult(total.value, total.error_estimate, total.converged, False)
        if tail is not None and tail <= cfg.tail_cut_survival:
            if c > tol_now:
                return _close_tail(total, panel.value, contributions, cfg, hi)
            return IntegralResult(total.value, total.error_estimate, total.converged, False)
        lo = hi

    if not seen_mass:
        return IntegralResult.zero()
    if _recent_ratios(contributions, cfg) is not None:
        return _close_tail(total, panel.value, contributions, cfg, hi)
    logger.debug("semi-infinite integral from %.6g exhausted %d doublings", a, cfg.max_doublings)
    return IntegralResult(total.value, total.error_estimate, False, False)


def integrate(
    f: Integrand,
    a: float,
    b: float,
    cfg: QuadratureConfig | None = None,
    envelope: Optional[Integrand] = None,
    points: Optional[Sequence[float]] = None,
) -> IntegralResult:
    """Dispatch to the finite or semi-infinite routine depending on ``b``."""
    if b <= a:
        return IntegralResult.zero()
    if math.isinf(b):
        return integrate_semi_infinite(f, a, cfg, envelope, points)
    return integrate_finite(f, a, b, cfg, points)


def xlogy(x, y):
    """x * ln(y) with the convention 0 * ln(0) = 0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return _xlogy(x, y)


def weighted_log(weight: float, log_value: float) -> float:
    """weight * log_value where a zero weight wins over an infinite log."""
    if weight == 0.0:
        return 0.0
    return weight * log_value
