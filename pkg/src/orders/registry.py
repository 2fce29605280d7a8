"""
Registry of ordering-conditioned results and their numerical checks.

Each entry pairs a check (bindings -> PropositionReport) with a sampler
that draws bindings likely to meet its preconditions. Preconditions are
always re-certified inside the check; unmet ones produce a
``precondition_failed`` report, never a failure.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.errors import CapabilityError, DomainError, RegistryError
from src.distributions import (
    DistributionHandle, TruncationWindow, MonotoneMap, GridSpec, exponential, weibull, gamma, uniform,
    smoothstep, power_cdf, power_survival, mixture, generalized_failure_rates, general_conditional_mean,
    hazard_rate, reversed_hazard_rate, near_breakpoint, mean_residual_life, mean_inactivity_time,
)
from src.measures import (
    MeasureValue, PropositionReport, identity_report, inequality_report, precondition_report, worst,
    cre, cpe, cri, cpi, dcre, dcri, dcpe, dcpi, icre, icpe, icri, icpi,
    proportional_hazards_identity, proportional_reversed_hazards_identity, linear_transform_identity,
    symmetric_identity, dcpi_as_conditional_expectation, zt_identity, icri_partial_t1,
    icri_partial_t1_printed, monotone_transform_bounds,
)
from src.quadrature import QuadratureConfig, DEFAULT_QUADRATURE
from .certificates import OrderCertificate, certify_order, certify_ageing

logger = logging.getLogger(__name__)


class HarnessConfig(BaseModel):
    """Settings for proposition checks and randomized sweeps."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    tol: float = Field(1e-6, gt=0)
    order_tol: float = Field(1e-9, gt=0)
    quadrature: QuadratureConfig = DEFAULT_QUADRATURE
    order_grid: GridSpec = GridSpec()
    window_points: int = Field(33, ge=4)
    mixture_weights: Tuple[float, ...] = (0.25, 0.5, 0.75)
    max_draws: int = Field(25, ge=1)


@dataclass(frozen=True)
class Bindings:
    """Distribution assignments and scalar parameters for one check."""
    x: DistributionHandle
    y: DistributionHandle
    z: Optional[DistributionHandle] = None
    times: Tuple[float, ...] = ()
    window: Optional[TruncationWindow] = None
    params: Mapping[str, float] = field(default_factory=dict)

    def names(self) -> Tuple[str, ...]:
        out = [f"X={self.x.name}", f"Y={self.y.name}"]
        if self.z is not None:
            out.append(f"Z={self.z.name}")
        if self.times:
            out.append("t=" + ",".join(f"{t:.6g}" for t in self.times))
        if self.window is not None:
            out.append(f"window=({self.window.t1:.6g},{self.window.t2:.6g})")
        out.extend(f"{k}={v:.6g}" for k, v in sorted(self.params.items()))
        return tuple(out)


class _Skip(Exception):
    """Raised inside a check when a precondition is not met."""


class _Check:
    """Helpers shared by the check functions."""

    def __init__(self, pid: str, b: Bindings, cfg: HarnessConfig):
        self.pid = pid
        self.b = b
        self.cfg = cfg
        self.q = cfg.quadrature
        self.inputs = b.names()
        self._orders: Dict[tuple, OrderCertificate] = {}

    @property
    def x(self) -> DistributionHandle:
        return self.b.x

    @property
    def y(self) -> DistributionHandle:
        return self.b.y

    @property
    def z(self) -> DistributionHandle:
        if self.b.z is None:
            raise _Skip("needs a third distribution Z")
        return self.b.z

    def skip(self, reason: str):
        raise _Skip(reason)

    def v(self, mv: MeasureValue) -> float:
        if mv.diverged:
            raise _Skip(f"{mv.name}{mv.inputs} diverges")
        return mv.result.value

    def num(self, res) -> float:
        if res.diverged:
            raise _Skip("auxiliary functional diverges")
        return res.value

    def tol(self, *mvs: MeasureValue) -> float:
        return self.cfg.tol + 5.0 * sum(m.error_estimate for m in mvs)

    def ge(self, lhs: float, rhs: float, note: str, *mvs: MeasureValue) -> PropositionReport:
        return inequality_report(self.pid, self.inputs, lhs, rhs, self.tol(*mvs), note)

    def eq(self, lhs: float, rhs: float, note: str, *mvs: MeasureValue) -> PropositionReport:
        return identity_report(self.pid, self.inputs, lhs, rhs, self.tol(*mvs), note)

    def order(self, a: DistributionHandle, b: DistributionHandle, relation: str) -> OrderCertificate:
        key = (id(a), id(b), relation)
        if key not in self._orders:
            self._orders[key] = certify_order(a, b, relation, self.cfg.order_grid, self.cfg.order_tol)
        return self._orders[key]

    def le(self, a: DistributionHandle, b: DistributionHandle, relation: str) -> bool:
        return self.order(a, b, relation).holds("X<=Y")

    def finite_means(self, *dists: DistributionHandle) -> None:
        for d in dists:
            if not d.has_finite_mean:
                self.skip(f"{d.name} has an infinite mean")

    def times(self) -> Tuple[float, ...]:
        if not self.b.times:
            self.skip("needs evaluation times")
        return self.b.times

    def window(self) -> TruncationWindow:
        if self.b.window is None:
            self.skip("needs a truncation window")
        return self.b.window

    def param(self, name: str) -> float:
        if name not in self.b.params:
            self.skip(f"needs parameter '{name}'")
        return float(self.b.params[name])


CheckResult = Union[PropositionReport, List[PropositionReport]]


# ======================================================================
# Cumulative residual inaccuracy
# ======================================================================
def _p2_1i(c: _Check) -> CheckResult:
    c.finite_means(c.x, c.y)
    ch, e = cri(c.x, c.y, c.q), cre(c.x, c.q)
    mx, my = c.x.mean, c.y.mean
    return c.ge(c.v(ch), c.v(e) + mx * math.log(mx / my), "cri >= cre + E(X) ln(E(X)/E(Y))", ch, e)


def _p2_1ii(c: _Check) -> CheckResult:
    c.finite_means(c.x, c.y)
    ch, e = cri(c.x, c.y, c.q), cre(c.x, c.q)
    return c.ge(c.v(ch), c.v(e) + c.x.mean - c.y.mean, "cri >= cre + E(X) - E(Y)", ch, e)


def _min_max_sandwich(c: _Check, ch: MeasureValue, ex: MeasureValue, ey: MeasureValue,
                      le: bool, ge: bool, label: str) -> List[PropositionReport]:
    out = []
    if le:
        out.append(c.ge(min(c.v(ex), c.v(ey)), c.v(ch), f"X<={label} Y: measure <= min", ch, ex, ey))
    if ge:
        out.append(c.ge(c.v(ch), max(c.v(ex), c.v(ey)), f"X>={label} Y: measure >= max", ch, ex, ey))
    if not out:
        c.skip(f"X and Y not {label} comparable")
    return out


def _p2_2(c: _Check) -> CheckResult:
    cert = c.order(c.x, c.y, "st")
    ch, ex, ey = cri(c.x, c.y, c.q), cre(c.x, c.q), cre(c.y, c.q)
    return _min_max_sandwich(c, ch, ex, ey, cert.holds("X<=Y"), cert.holds("X>=Y"), "st")


def _three_variable(c: _Check, measure: Callable[[DistributionHandle, DistributionHandle], MeasureValue],
                    relation: str, larger_is_le: bool) -> List[PropositionReport]:
    """
    (i)  second argument ordered: m(X, Y) >= m(X, Z)
    (ii) first argument ordered:  m(X, Z) <= m(Y, Z)

    ``larger_is_le`` selects whether the residual (True) or past (False)
    direction of the order applies.
    """
    x, y, z = c.x, c.y, c.z
    out = []
    cond_i = c.le(y, z, relation) if larger_is_le else c.le(z, y, relation)
    cond_ii = c.le(x, y, relation) if larger_is_le else c.le(y, x, relation)
    if cond_i:
        a, b = measure(x, y), measure(x, z)
        out.append(c.ge(c.v(a), c.v(b), "second argument ordered", a, b))
    if cond_ii:
        a, b = measure(x, z), measure(y, z)
        out.append(c.ge(c.v(b), c.v(a), "first argument ordered", a, b))
    if not out:
        c.skip(f"no {relation} ordering among Y, Z or X, Y")
    return out


def _max_theorem(c: _Check, x: DistributionHandle, z: DistributionHandle, y: DistributionHandle,
                 measure: Callable, note: str) -> List[PropositionReport]:
    """For the chain x <= z <= y: m(y, x) >= max(m(y, z), m(z, x))."""
    yx, yz, zx = measure(y, x), measure(y, z), measure(z, x)
    return [
        c.ge(c.v(yx), c.v(yz), f"{note}: m(Y,X) >= m(Y,Z)", yx, yz),
        c.ge(c.v(yx), c.v(zx), f"{note}: m(Y,X) >= m(Z,X)", yx, zx),
    ]


def _p2_3(c: _Check) -> CheckResult:
    return _three_variable(c, lambda a, b: cri(a, b, c.q), "st", True)


def _t2_1(c: _Check) -> CheckResult:
    if not (c.le(c.x, c.z, "st") and c.le(c.z, c.y, "st")):
        c.skip("X <=st Z <=st Y not certified")
    return _max_theorem(c, c.x, c.z, c.y, lambda a, b: cri(a, b, c.q), "chain")


def _mixture_corollary(c: _Check, relation: str, measure: Callable, residual: bool) -> List[PropositionReport]:
    x, y = c.x, c.y
    if c.le(x, y, relation):
        low, high = x, y
    elif c.le(y, x, relation):
        low, high = y, x
    else:
        c.skip(f"X and Y not {relation} comparable")
    out = []
    for p in c.cfg.mixture_weights:
        zm = mixture(low, high, p)
        if residual:
            out.extend(_max_theorem(c, low, zm, high, measure, f"mixture p={p:g}"))
        else:
            out.extend(_max_theorem(c, high, zm, low, measure, f"mixture p={p:g}"))
    return out


def _c2_1(c: _Check) -> CheckResult:
    return _mixture_corollary(c, "st", lambda a, b: cri(a, b, c.q), residual=True)


def _triangle(c: _Check, measure: Callable, relation: str, strong: bool = False) -> CheckResult:
    """m(X,Y) + m(Y,Z) >= m(X,Z) when X, Z <= Y or Y <= X, Z in the given relation."""
    x, y, z = c.x, c.y, c.z
    ok = (c.le(x, y, relation) and c.le(z, y, relation)) or (c.le(y, x, relation) and c.le(y, z, relation))
    if not ok:
        c.skip(f"triangle conditions on the {relation} order not met")
    xy, yz, xz = measure(x, y), measure(y, z), measure(x, z)
    rhs = c.v(xz)
    mvs = [xy, yz, xz]
    if strong:
        ey = measure(y, None)
        rhs += c.v(ey)
        mvs.append(ey)
    return c.ge(c.v(xy) + c.v(yz), rhs, "triangle", *mvs)


def _cri_or_cre(c: _Check):
    return lambda a, b: cre(a, c.q) if b is None else cri(a, b, c.q)


def _t2_2(c: _Check) -> CheckResult:
    return _triangle(c, _cri_or_cre(c), "st")


def _t2_2_strong(c: _Check) -> CheckResult:
    return _triangle(c, _cri_or_cre(c), "st", strong=True)


def _t2_3(c: _Check) -> CheckResult:
    report = linear_transform_identity(c.x, c.y, c.param("a"), c.param("b"), c.param("t"), c.q, c.cfg.tol)
    return report.with_id(c.pid)


def _p2_4(c: _Check) -> CheckResult:
    c.finite_means(c.x, c.y)
    nwue = certify_ageing(c.x, "NWUE", cfg=c.q).holds
    nbue = certify_ageing(c.y, "NBUE", cfg=c.q).holds
    out = []
    for t in c.times():
        d, e = dcri(c.x, c.y, t, c.q), dcre(c.x, t, c.q)
        mx = c.num(mean_residual_life(c.x, t, c.q))
        my = c.num(mean_residual_life(c.y, t, c.q))
        out.append(c.ge(c.v(d), c.v(e) + mx * math.log(mx / my), f"t={t:g}: log-sum bound", d, e))
        if nwue and nbue:
            out.append(c.ge(c.v(d), c.v(e) + c.x.mean - c.y.mean, f"t={t:g}: NWUE/NBUE bound", d, e))
    return out


def _p2_5(c: _Check) -> CheckResult:
    if not certify_ageing(c.x, "NWU").holds:
        c.skip("X not certified NWU")
    if not certify_ageing(c.y, "NBU").holds:
        c.skip("Y not certified NBU")
    ch, e = cri(c.x, c.y, c.q), cre(c.x, c.q)
    out = []
    for t in c.times():
        dt, et = dcri(c.x, c.y, t, c.q), dcre(c.x, t, c.q)
        out.append(c.ge(c.v(e) - c.v(et), c.v(ch) - c.v(dt), f"t={t:g}", ch, e, dt, et))
    return out


def _p2_6(c: _Check) -> CheckResult:
    cert = c.order(c.x, c.y, "hr")
    out = []
    for t in c.times():
        d, ex, ey = dcri(c.x, c.y, t, c.q), dcre(c.x, t, c.q), dcre(c.y, t, c.q)
        out.extend(_min_max_sandwich(c, d, ex, ey, cert.holds("X<=Y"), cert.holds("X>=Y"), "hr"))
    return out


def _p2_7(c: _Check) -> CheckResult:
    out: List[PropositionReport] = []
    for t in c.times():
        m = (lambda a, b, t=t: dcri(a, b, t, c.q))
        try:
            out.extend(_three_variable(c, m, "hr", True))
        except _Skip as exc:
            out.append(precondition_report(c.pid, c.inputs, str(exc)))
        if c.le(c.x, c.z, "hr") and c.le(c.z, c.y, "hr"):
            out.extend(_max_theorem(c, c.x, c.z, c.y, m, f"t={t:g} hr chain"))
        try:
            out.extend(_mixture_corollary(c, "hr", m, residual=True))
        except _Skip as exc:
            out.append(precondition_report(c.pid, c.inputs, str(exc)))
    return out


def _p2_8(c: _Check) -> CheckResult:
    report = proportional_hazards_identity(c.x, c.y, c.param("alpha"), c.times(), c.q, c.cfg.tol)
    return report.with_id(c.pid)


def _t2_4(c: _Check) -> CheckResult:
    out = []
    for t in c.times():
        out.append(_triangle(c, lambda a, b, t=t: dcri(a, b, t, c.q), "hr"))
    return out


# ======================================================================
# Cumulative past inaccuracy
# ======================================================================
def _upper_end(c: _Check, *dists: DistributionHandle) -> float:
    b = max(d.hi for d in dists)
    if not math.isfinite(b):
        c.skip("needs bounded supports")
    return b


def _p3_1(c: _Check) -> CheckResult:
    b = _upper_end(c, c.x, c.y)
    ci, ex = cpi(c.x, c.y, c.q), cpe(c.x, c.q)
    mx, my = b - c.x.mean, b - c.y.mean
    out = [
        c.ge(c.v(ci), c.v(ex) + mx * math.log(mx / my), "log-sum bound", ci, ex),
        c.ge(c.v(ci), c.v(ex) + c.y.mean - c.x.mean, "mean bound", ci, ex),
    ]
    cert = c.order(c.x, c.y, "st")
    ey = cpe(c.y, c.q)
    # past side: X <=st Y means F_X >= F_Y, which makes cpi at least both entropies
    if cert.holds("X<=Y"):
        out.append(c.ge(c.v(ci), max(c.v(ex), c.v(ey)), "X<=st Y: cpi >= max", ci, ex, ey))
    if cert.holds("X>=Y"):
        out.append(c.ge(min(c.v(ex), c.v(ey)), c.v(ci), "X>=st Y: cpi <= min", ci, ex, ey))
    return out


def _cpi_or_cpe(c: _Check):
    return lambda a, b: cpe(a, c.q) if b is None else cpi(a, b, c.q)


def _p3_2(c: _Check) -> CheckResult:
    _upper_end(c, c.x, c.y, c.z)
    m = (lambda a, b: cpi(a, b, c.q))
    out: List[PropositionReport] = []
    for part in (
        lambda: _three_variable(c, m, "st", False),
        lambda: _max_theorem(c, c.x, c.z, c.y, m, "chain") if c.le(c.y, c.z, "st") and c.le(c.z, c.x, "st")
        else c.skip("X >=st Z >=st Y not certified"),
        lambda: _mixture_corollary(c, "st", m, residual=False),
        lambda: [_triangle(c, _cpi_or_cpe(c), "st")],
    ):
        try:
            out.extend(part())
        except _Skip as exc:
            out.append(precondition_report(c.pid, c.inputs, str(exc)))
    return out


def _t3_2(c: _Check) -> CheckResult:
    b = c.param("b")
    return [symmetric_identity(c.x, c.y, b, t, c.q, c.cfg.tol).with_id(c.pid) for t in c.times()]


def _p3_5(c: _Check) -> CheckResult:
    cert = c.order(c.x, c.y, "rh")
    out = []
    for t in c.times():
        d, ex, ey = dcpi(c.x, c.y, t, c.q), dcpe(c.x, t, c.q), dcpe(c.y, t, c.q)
        mx = c.num(mean_inactivity_time(c.x, t, c.q))
        my = c.num(mean_inactivity_time(c.y, t, c.q))
        out.append(c.ge(c.v(d), c.v(ex) + mx * math.log(mx / my), f"t={t:g}: log-sum bound", d, ex))
        out.append(c.ge(c.v(d), c.v(ex) + mx - my, f"t={t:g}: mean bound", d, ex))
        if cert.holds("X>=Y"):
            out.append(c.ge(min(c.v(ex), c.v(ey)), c.v(d), f"t={t:g}: X>=rh Y: dcpi <= min", d, ex, ey))
        if cert.holds("X<=Y"):
            out.append(c.ge(c.v(d), max(c.v(ex), c.v(ey)), f"t={t:g}: X<=rh Y: dcpi >= max", d, ex, ey))
    return out


def _p3_6(c: _Check) -> CheckResult:
    out: List[PropositionReport] = []
    for t in c.times():
        m = (lambda a, b, t=t: dcpi(a, b, t, c.q))
        mm = (lambda a, b, t=t: dcpe(a, t, c.q) if b is None else dcpi(a, b, t, c.q))
        for part in (
            lambda: _three_variable(c, m, "rh", False),
            lambda: _max_theorem(c, c.x, c.z, c.y, m, f"t={t:g} rh chain")
            if c.le(c.y, c.z, "rh") and c.le(c.z, c.x, "rh") else c.skip("X >=rh Z >=rh Y not certified"),
            lambda: _mixture_corollary(c, "rh", m, residual=False),
            lambda: [_triangle(c, mm, "rh")],
        ):
            try:
                out.extend(part())
            except _Skip as exc:
                out.append(precondition_report(c.pid, c.inputs, str(exc)))
    return out


def _t3_3(c: _Check) -> CheckResult:
    out = []
    for t in c.times():
        direct = dcpi(c.y, c.x, t, c.q)
        dual = dcpi_as_conditional_expectation(c.x, c.y, t, c.q)
        out.append(c.eq(c.v(direct), c.v(dual), f"t={t:g}: expectation route", direct, dual))
        out.append(zt_identity(c.x, c.y, t, c.q, c.cfg.tol).with_id(c.pid))
    return out


def _p3_7(c: _Check) -> CheckResult:
    report = proportional_reversed_hazards_identity(c.x, c.y, c.param("theta"), c.times(), c.q, c.cfg.tol)
    return report.with_id(c.pid)


# ======================================================================
# Interval measures
# ======================================================================
def _t4_1(c: _Check) -> CheckResult:
    w = c.window()
    if math.isinf(w.t2):
        c.skip("needs a bounded window")
    n = c.cfg.window_points
    out = []

    t2 = w.t2
    t1s = np.concatenate([np.linspace(0.0, t2, n, endpoint=False)[1:], t2 * (1 - np.logspace(-2, -4, 3))])
    vals = []
    for t1 in np.unique(t1s):
        win = TruncationWindow(float(t1), t2)
        if all(win.validity(c.x, c.y).values()):
            vals.append(icri(c.x, c.y, win, c.q))
    if len(vals) >= 2:
        diffs = np.diff([c.v(m) for m in vals])
        slack = 1e-9 + 5 * max(m.error_estimate for m in vals)
        out.append(inequality_report(c.pid, c.inputs, -float(np.min(diffs)), 0.0, slack,
                                     "icri has a non-increasing step in t1"))

    t1 = w.t1
    span = t2 - t1
    t2s = np.concatenate([t1 + span * np.logspace(-4, -2, 3), np.linspace(t1, t1 + 2 * span, n)[1:]])
    vals = []
    for end in np.unique(t2s):
        win = TruncationWindow(t1, float(end))
        if all(win.validity(c.x, c.y).values()):
            mv = icpi(c.x, c.y, win, c.q)
            if not mv.diverged:
                vals.append(mv)
    if len(vals) >= 2:
        diffs = np.diff([m.result.value for m in vals])
        slack = 1e-9 + 5 * max(m.error_estimate for m in vals)
        out.append(inequality_report(c.pid, c.inputs, float(np.max(diffs)), 0.0, slack,
                                     "icpi has a non-decreasing step in t2"))
    if not out:
        c.skip("too few valid windows")
    return out


def _t4_2(c: _Check) -> CheckResult:
    w = c.window()
    if math.isinf(w.t2):
        c.skip("needs a bounded window")
    w.validate(c.x, c.y)
    out = []
    width = w.t2 - w.t1
    gx, gy = generalized_failure_rates(c.x, w), generalized_failure_rates(c.y, w)
    ci = icri(c.x, c.y, w, c.q)
    if c.x.survival(w.t1) > 0 and c.y.survival(w.t1) > 0 and gx.h1 > 0 and gy.h1 > 0:
        rhs = -width * (gx.h1 / hazard_rate(c.x, w.t1)) * math.log(gy.h1 / hazard_rate(c.y, w.t1))
        out.append(c.ge(c.v(ci), rhs, "icri lower bound", ci))
    cp = icpi(c.x, c.y, w, c.q)
    if gx.h2 > 0 and gy.h2 > 0:
        rhs = -width * (gx.h2 / reversed_hazard_rate(c.x, w.t2)) * math.log(gy.h2 / reversed_hazard_rate(c.y, w.t2))
        out.append(c.ge(c.v(cp), rhs, "icpi lower bound", cp))
    if not near_breakpoint(w.t1, (c.x, c.y)) and gx.h1 > 0:
        fd = icri_partial_t1(c.x, c.y, w, c.q)
        closed = icri_partial_t1_printed(c.x, c.y, w, c.q)
        out.append(identity_report(c.pid, c.inputs, closed, fd, 1e-4 * max(1.0, abs(fd)),
                                   "t1-derivative closed form vs finite difference"))
    if not out:
        c.skip("densities vanish at the window ends")
    return out


def _t4_5(c: _Check) -> CheckResult:
    w = c.window()
    if math.isinf(w.t2):
        c.skip("needs a bounded window")
    w.validate(c.x, c.y)
    mx = c.num(general_conditional_mean(c.x, w, c.q))
    my = c.num(general_conditional_mean(c.y, w, c.q))

    def boundary(d: DistributionHandle, fn) -> float:
        return (w.t2 * fn(w.t2) - w.t1 * fn(w.t1)) / w.mass(d)

    ci, ce = icri(c.x, c.y, w, c.q), icre(c.x, w, c.q)
    residual = (mx + boundary(c.x, c.x.survival)) - (my + boundary(c.y, c.y.survival))
    cp, cq = icpi(c.x, c.y, w, c.q), icpe(c.x, w, c.q)
    past = (boundary(c.x, c.x.cdf) - mx) - (boundary(c.y, c.y.cdf) - my)
    return [
        c.ge(c.v(ci), c.v(ce) + residual, "icri >= icre + mean terms", ci, ce),
        c.ge(c.v(cp), c.v(cq) + past, "icpi >= icpe + mean terms", cp, cq),
    ]


def quadratic_map(coef: float) -> MonotoneMap:
    """phi(x) = x + coef * x^2 with its inverse and derivative."""
    if coef <= 0:
        return MonotoneMap(lambda x: np.asarray(x, dtype=float), lambda y: np.asarray(y, dtype=float),
                           lambda x: np.ones_like(np.asarray(x, dtype=float)), True, "identity")
    return MonotoneMap(
        forward=lambda x: np.asarray(x, dtype=float) + coef * np.asarray(x, dtype=float) ** 2,
        inverse=lambda y: (-1.0 + np.sqrt(1.0 + 4.0 * coef * np.asarray(y, dtype=float))) / (2.0 * coef),
        derivative=lambda x: 1.0 + 2.0 * coef * np.asarray(x, dtype=float),
        increasing=True,
        label=f"x+{coef:g}x^2",
    )


def reflection_map(k: float) -> MonotoneMap:
    """phi(x) = k - x on [0, k]."""
    return MonotoneMap(
        forward=lambda x: k - np.asarray(x, dtype=float),
        inverse=lambda y: k - np.asarray(y, dtype=float),
        derivative=lambda x: -np.ones_like(np.asarray(x, dtype=float)),
        increasing=False,
        label=f"{k:g}-x",
    )


def _t4_6(c: _Check) -> CheckResult:
    w = c.window()
    if math.isinf(w.t2):
        c.skip("needs a bounded window")
    phi = quadratic_map(c.param("coef"))
    s1, s2 = float(phi.inverse(w.t1)), float(phi.inverse(w.t2))
    a, b = float(phi.derivative(s1)), float(phi.derivative(s2))
    out = [
        monotone_transform_bounds(c.x, c.y, phi, a, b, w, c.q, c.cfg.tol, measure=m).with_id(c.pid)
        for m in ("icri", "icpi")
    ]
    k = max(c.x.hi, c.y.hi)
    if math.isfinite(k) and w.t2 < k:
        out.append(monotone_transform_bounds(c.x, c.y, reflection_map(k), 1.0, 1.0, w, c.q, c.cfg.tol)
                   .with_id(c.pid))
    return out


# ======================================================================
# Samplers
# ======================================================================
SHAPES = {"weibull": (0.6, 2.5), "gamma": (0.6, 3.0)}


def _family(scale: float, family: str, shape: float) -> DistributionHandle:
    if family == "exponential":
        return exponential(1.0 / scale)
    if family == "weibull":
        return weibull(scale, shape)
    return gamma(scale, shape)


def _unbounded(rng: np.random.Generator) -> DistributionHandle:
    family = str(rng.choice(["exponential", "weibull", "gamma"]))
    shape = float(rng.uniform(*SHAPES.get(family, (1.0, 1.0))))
    return _family(float(rng.uniform(0.5, 2.0)), family, shape)


def _scale_pair(rng: np.random.Generator, n: int = 2) -> List[DistributionHandle]:
    """Same family and shape, different scales: ordered in st, and usually in hr and rh."""
    family = str(rng.choice(["exponential", "weibull", "gamma"]))
    shape = float(rng.uniform(*SHAPES.get(family, (1.0, 1.0))))
    return [_family(float(rng.uniform(0.5, 2.0)), family, shape) for _ in range(n)]


def _bounded_family(rng: np.random.Generator, b: float, kind: str | None = None) -> DistributionHandle:
    kind = kind or str(rng.choice(["power_cdf", "power_survival", "smoothstep", "uniform"]))
    base = uniform(0.0, b)
    if kind == "power_cdf":
        return power_cdf(base, float(rng.uniform(0.5, 3.0)))
    if kind == "power_survival":
        return power_survival(base, float(rng.uniform(0.5, 3.0)))
    if kind == "smoothstep":
        return smoothstep(0.0, b)
    return base


def _bounded_pair(rng: np.random.Generator, n: int = 2) -> List[DistributionHandle]:
    b = float(rng.uniform(1.0, 3.0))
    kind = str(rng.choice(["power_cdf", "power_survival"]))
    return [_bounded_family(rng, b, kind) for _ in range(n)]


def _times(rng: np.random.Generator, *dists: DistributionHandle, k: int = 2) -> Tuple[float, ...]:
    if all(d.bounded for d in dists):
        b = min(d.hi for d in dists)
        return tuple(sorted(float(u) * b for u in rng.uniform(0.15, 0.85, k)))
    m = min(d.mean for d in dists)
    return tuple(sorted(float(u) * m for u in rng.uniform(0.2, 1.8, k)))


def _window(rng: np.random.Generator, *dists: DistributionHandle) -> TruncationWindow:
    if all(d.bounded for d in dists):
        b = min(d.hi for d in dists)
        t1 = float(rng.uniform(0.1, 0.5)) * b
        return TruncationWindow(t1, t1 + float(rng.uniform(0.2, 0.45)) * b)
    m = min(d.mean for d in dists)
    t1 = float(rng.uniform(0.2, 1.0)) * m
    return TruncationWindow(t1, t1 + float(rng.uniform(0.3, 1.5)) * m)


def _filtered(rng: np.random.Generator, draw: Callable[[], Bindings], ok: Callable[[Bindings], bool],
              max_draws: int = 25) -> Bindings:
    b = draw()
    for _ in range(max_draws - 1):
        try:
            if ok(b):
                return b
        except (CapabilityError, DomainError):
            pass
        b = draw()
    return b


def _order_ok(relation: str, *pairs: Tuple[int, int]) -> Callable[[Bindings], bool]:
    def ok(b: Bindings) -> bool:
        d = (b.x, b.y, b.z)
        for i, j in pairs:
            if certify_order(d[i], d[j], relation).direction == "incomparable":
                return False
        return True
    return ok


def _sample_pair(rng: np.random.Generator) -> Bindings:
    if rng.uniform() < 0.5:
        x, y = _scale_pair(rng)
    else:
        x, y = _unbounded(rng), _unbounded(rng)
    return Bindings(x, y)


def _sample_st_pair(rng: np.random.Generator) -> Bindings:
    return _filtered(rng, lambda: Bindings(*_scale_pair(rng)), _order_ok("st", (0, 1)))


def _sample_triple(rng: np.random.Generator) -> Callable[[], Bindings]:
    def draw() -> Bindings:
        x, y, z = _scale_pair(rng, 3)
        return Bindings(x, y, z, times=_times(rng, x, y, z, k=1))
    return draw


def _s_p2_3(rng):
    return _sample_triple(rng)()


def _s_t2_1(rng):
    x, z, y = sorted(_scale_pair(rng, 3), key=lambda d: d.mean)
    return Bindings(x, y, z)


def _s_t2_2(rng):
    low, mid, high = sorted(_scale_pair(rng, 3), key=lambda d: d.mean)
    # Y takes the st-largest or the st-smallest slot
    if rng.uniform() < 0.5:
        return Bindings(low, high, mid)
    return Bindings(high, low, mid)


def _s_t2_3(rng):
    x, y = _unbounded(rng), _unbounded(rng)
    a, b = float(rng.uniform(0.5, 2.0)), float(rng.uniform(0.0, 1.0))
    s = float(rng.uniform(0.3, 1.5)) * min(x.mean, y.mean)
    return Bindings(x, y, params={"a": a, "b": b, "t": b + a * s})


def _s_dynamic_pair(rng):
    b = _sample_pair(rng)
    return Bindings(b.x, b.y, times=_times(rng, b.x, b.y))


def _s_p2_5(rng):
    def draw():
        fx = str(rng.choice(["weibull", "gamma", "exponential"]))
        fy = str(rng.choice(["weibull", "gamma", "exponential"]))
        x = _family(float(rng.uniform(1.0, 2.0)), fx, float(rng.uniform(0.5, 1.0)))
        y = _family(float(rng.uniform(0.5, 1.0)), fy, float(rng.uniform(1.0, 2.5)))
        return Bindings(x, y, times=_times(rng, x, y))
    return _filtered(rng, draw, lambda b: certify_ageing(b.x, "NWU").holds and certify_ageing(b.y, "NBU").holds)


def _s_hr_pair(rng):
    def draw():
        x, y = _scale_pair(rng)
        return Bindings(x, y, times=_times(rng, x, y))
    return _filtered(rng, draw, _order_ok("hr", (0, 1)))


def _s_hr_triple(rng):
    return _filtered(rng, _sample_triple(rng), _order_ok("hr", (0, 1), (1, 2)))


def _s_p2_8(rng):
    y = _unbounded(rng)
    alpha = float(rng.uniform(0.3, 3.0))
    x = power_survival(y, alpha)
    return Bindings(x, y, times=_times(rng, y), params={"alpha": alpha})


def _s_bounded_pair(rng):
    x, y = _bounded_pair(rng)
    return Bindings(x, y, times=_times(rng, x, y))


def _s_bounded_triple(rng):
    x, y, z = _bounded_pair(rng, 3)
    return Bindings(x, y, z)


def _s_t3_2(rng):
    b = float(rng.uniform(1.0, 3.0))
    pick = lambda: smoothstep(0.0, b) if rng.uniform() < 0.5 else uniform(0.0, b)
    x, y = pick(), pick()
    return Bindings(x, y, times=_times(rng, x, y), params={"b": b})


def _s_rh_pair(rng):
    def draw():
        x, y = _bounded_pair(rng) if rng.uniform() < 0.5 else _scale_pair(rng)
        return Bindings(x, y, times=_times(rng, x, y))
    return _filtered(rng, draw, _order_ok("rh", (0, 1)))


def _s_rh_triple(rng):
    def draw():
        if rng.uniform() < 0.5:
            x, y, z = _bounded_pair(rng, 3)
        else:
            x, y, z = _scale_pair(rng, 3)
        return Bindings(x, y, z, times=_times(rng, x, y, z, k=1))
    return _filtered(rng, draw, _order_ok("rh", (0, 1), (1, 2)))


def _s_t3_3(rng):
    def draw():
        x, y = _bounded_pair(rng) if rng.uniform() < 0.5 else _scale_pair(rng)
        if certify_order(x, y, "rh").holds("X>=Y"):
            x, y = y, x
        return Bindings(x, y, times=_times(rng, x, y))
    return _filtered(rng, draw, lambda b: certify_order(b.x, b.y, "rh").holds("X<=Y"))


def _s_p3_7(rng):
    y = _bounded_family(rng, float(rng.uniform(1.0, 3.0))) if rng.uniform() < 0.5 else _unbounded(rng)
    theta = float(rng.uniform(0.3, 3.0))
    x = power_cdf(y, theta)
    return Bindings(x, y, times=_times(rng, y), params={"theta": theta})


def _s_window_pair(rng):
    x, y = _bounded_pair(rng) if rng.uniform() < 0.3 else (_unbounded(rng), _unbounded(rng))
    return Bindings(x, y, window=_window(rng, x, y))


def _s_t4_6(rng):
    b = _s_window_pair(rng)
    return Bindings(b.x, b.y, window=b.window, params={"coef": float(rng.uniform(0.0, 0.2))})


# ======================================================================
# Registry
# ======================================================================
@dataclass(frozen=True)
class Proposition:
    proposition_id: str
    statement: str
    check: Callable[[_Check], CheckResult]
    sampler: Callable[[np.random.Generator], Bindings]
    order_conditioned: bool = False
    exploratory: bool = False


_ENTRIES = [
    Proposition("P2.1i", "cri >= cre + E(X) ln(E(X)/E(Y))", _p2_1i, _s_dynamic_pair),
    Proposition("P2.1ii", "cri >= cre + E(X) - E(Y)", _p2_1ii, _s_dynamic_pair),
    Proposition("P2.2", "st order sandwiches cri between the residual entropies", _p2_2, _sample_st_pair, True),
    Proposition("P2.3", "cri monotone in each argument under the st order", _p2_3, _s_p2_3, True),
    Proposition("T2.1", "X <=st Z <=st Y: cri(Y,X) >= max(cri(Y,Z), cri(Z,X))", _t2_1, _s_t2_1, True),
    Proposition("C2.1", "mixture Z of st-ordered X, Y satisfies the max theorem", _c2_1, _sample_st_pair, True),
    Proposition("T2.2", "cri triangle inequality under st conditions", _t2_2, _s_t2_2, True),
    Proposition("T2.3", "linear transformation of dcri and dcpi", _t2_3, _s_t2_3),
    Proposition("P2.4", "dcri lower bounds via log-sum and NWUE/NBUE", _p2_4, _s_dynamic_pair),
    Proposition("P2.5", "X NWU, Y NBU: cri - dcri(t) <= cre - dcre(t)", _p2_5, _s_p2_5, True),
    Proposition("P2.6", "hr order sandwiches dcri between the dynamic residual entropies", _p2_6, _s_hr_pair, True),
    Proposition("P2.7", "hr three-variable, chain and mixture results for dcri", _p2_7, _s_hr_triple, True),
    Proposition("P2.8", "proportional hazards: alpha * dcri = dcre", _p2_8, _s_p2_8),
    Proposition("T2.4", "dcri triangle inequality under hr conditions", _t2_4, _s_hr_triple, True),
    Proposition("P3.1", "cpi bounds on a bounded support, st cases", _p3_1, _s_bounded_pair),
    Proposition("P3.2", "cpi three-variable, chain, mixture and triangle results", _p3_2, _s_bounded_triple, True),
    Proposition("T3.2", "symmetric laws: dcpi(t) = dcri(b - t)", _t3_2, _s_t3_2),
    Proposition("P3.5", "dcpi lower bounds and rh sandwich", _p3_5, _s_rh_pair),
    Proposition("P3.6", "rh three-variable, chain, mixture and triangle results for dcpi", _p3_6, _s_rh_triple, True),
    Proposition("T3.3", "dcpi as a conditional expectation and the Z_t decomposition", _t3_3, _s_t3_3, True),
    Proposition("P3.7", "proportional reversed hazards: theta * dcpi = dcpe", _p3_7, _s_p3_7),
    Proposition("T4.1", "icri not increasing in t1; icpi not decreasing in t2", _t4_1, _s_window_pair),
    Proposition("T4.2", "icri and icpi lower bounds; t1-derivative closed form", _t4_2, _s_window_pair),
    Proposition("T4.5", "icri and icpi versus interval entropies", _t4_5, _s_window_pair),
    Proposition("T4.6", "monotone transformation sandwich and scale identity", _t4_6, _s_t4_6),
    Proposition("T2.2-strong", "cri(X,Y) + cri(Y,Z) >= cre(Y) + cri(X,Z)", _t2_2_strong, _s_t2_2, True, True),
]

REGISTRY: Dict[str, Proposition] = {p.proposition_id: p for p in _ENTRIES}

ALIASES: Dict[str, str] = {
    "P2.2i": "P2.2", "P2.2ii": "P2.2", "P2.3i": "P2.3", "P2.3ii": "P2.3",
    "T3.1": "P3.2", "P3.4": "T3.3",
}


def core_ids() -> List[str]:
    return [p.proposition_id for p in _ENTRIES if not p.exploratory]


def resolve_id(pid: str) -> str:
    pid = ALIASES.get(pid, pid)
    if pid not in REGISTRY:
        raise RegistryError(f"unknown proposition '{pid}'; known: {', '.join(REGISTRY)}")
    return pid


def run_proposition(pid: str, bindings: Bindings, cfg: HarnessConfig | None = None) -> PropositionReport:
    """Certify preconditions, evaluate both sides and report."""
    cfg = cfg or HarnessConfig()
    canonical = resolve_id(pid)
    entry = REGISTRY[canonical]
    check = _Check(canonical, bindings, cfg)
    try:
        out = entry.check(check)
    except _Skip as exc:
        return precondition_report(canonical, check.inputs, str(exc))
    except (CapabilityError, DomainError) as exc:
        return precondition_report(canonical, check.inputs, f"{type(exc).__name__}: {exc}")
    reports = out if isinstance(out, list) else [out]
    report = worst(reports, canonical)
    if report.status == "failed":
        logger.warning("%s failed on %s (margin %.3g, tol %.3g)", canonical, check.inputs, report.margin, report.tolerance)
    return report


def canonical_bindings(pid: str) -> Bindings:
    """Fixed bindings used by the verify command alongside the random sweep."""
    canonical = resolve_id(pid)
    builder = CANONICAL.get(canonical)
    if builder is not None:
        return builder()
    return REGISTRY[canonical].sampler(np.random.default_rng(0))


CANONICAL: Dict[str, Callable[[], Bindings]] = {
    "P2.1i": lambda: Bindings(exponential(1.0), weibull(1.0, 2.0)),
    "P2.1ii": lambda: Bindings(exponential(1.0), weibull(1.0, 2.0)),
    "P2.2": lambda: Bindings(exponential(2.0), exponential(1.0)),
    "P2.3": lambda: Bindings(exponential(2.0), exponential(1.0), exponential(0.5)),
    "T2.1": lambda: Bindings(exponential(2.0), exponential(0.5), exponential(1.0)),
    "C2.1": lambda: Bindings(exponential(2.0), exponential(1.0)),
    "T2.2": lambda: Bindings(exponential(2.0), exponential(1.0), exponential(2.0)),
    "T2.2-strong": lambda: Bindings(exponential(2.0), exponential(1.0), exponential(2.0)),
    "T2.3": lambda: Bindings(exponential(1.0), weibull(1.0, 2.0), params={"a": 2.0, "b": 0.5, "t": 2.5}),
    "P2.4": lambda: Bindings(weibull(2.0, 0.7), weibull(1.0, 2.0), times=(0.5, 1.5)),
    "P2.5": lambda: Bindings(weibull(1.5, 0.7), weibull(1.0, 2.0), times=(0.5, 1.5)),
    "P2.6": lambda: Bindings(exponential(2.0), exponential(1.0), times=(0.5, 1.5)),
    "P2.7": lambda: Bindings(weibull(0.5, 2.0), weibull(2.0, 2.0), weibull(1.0, 2.0), times=(0.7,)),
    "P2.8": lambda: Bindings(power_survival(weibull(1.0, 2.0), 2.0), weibull(1.0, 2.0), times=(0.5, 1.0),
                             params={"alpha": 2.0}),
    "T2.4": lambda: Bindings(weibull(0.5, 2.0), weibull(2.0, 2.0), weibull(1.0, 2.0), times=(0.7,)),
    "P3.1": lambda: Bindings(power_cdf(uniform(0.0, 2.0), 2.0), uniform(0.0, 2.0)),
    "P3.2": lambda: Bindings(power_cdf(uniform(0.0, 2.0), 3.0), uniform(0.0, 2.0), power_cdf(uniform(0.0, 2.0), 2.0)),
    "T3.2": lambda: Bindings(uniform(0.0, 2.0), smoothstep(0.0, 2.0), times=(0.5, 1.2), params={"b": 2.0}),
    "P3.5": lambda: Bindings(power_cdf(uniform(0.0, 2.0), 2.0), uniform(0.0, 2.0), times=(0.6, 1.4)),
    "P3.6": lambda: Bindings(power_cdf(uniform(0.0, 2.0), 3.0), uniform(0.0, 2.0), power_cdf(uniform(0.0, 2.0), 2.0),
                             times=(1.0,)),
    "T3.3": lambda: Bindings(uniform(0.0, 1.0), power_cdf(uniform(0.0, 1.0), 2.0), times=(0.5, 0.9)),
    "P3.7": lambda: Bindings(power_cdf(exponential(1.0), 2.0), exponential(1.0), times=(0.5, 1.5),
                             params={"theta": 2.0}),
    "T4.1": lambda: Bindings(exponential(1.0), weibull(1.0, 2.0), window=TruncationWindow(0.5, 2.0)),
    "T4.2": lambda: Bindings(exponential(1.0), weibull(1.0, 2.0), window=TruncationWindow(0.5, 2.0)),
    "T4.5": lambda: Bindings(exponential(1.0), weibull(1.0, 2.0), window=TruncationWindow(0.5, 2.0)),
    "T4.6": lambda: Bindings(uniform(0.0, 1.0), power_cdf(uniform(0.0, 1.0), 2.0),
                             window=TruncationWindow(0.2, 0.8), params={"coef": 0.1}),
}
