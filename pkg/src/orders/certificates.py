"""
Grid certificates for stochastic orders and ageing classes.

Certificates are evidence on a finite grid, not proofs.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Literal, Tuple

import numpy as np

from src.errors import CapabilityError
from src.distributions import (
    DistributionHandle, GridSpec, time_grid, hazard_rate, reversed_hazard_rate, mean_residual_life,
)
from src.quadrature import QuadratureConfig

logger = logging.getLogger(__name__)

Relation = Literal["st", "hr", "rh"]
Direction = Literal["X<=Y", "X>=Y", "equal", "incomparable"]
AgeingClass = Literal["NBU", "NWU", "NBUE", "NWUE", "none"]

ORDER_TOL = 1e-9


@dataclass(frozen=True)
class OrderCertificate:
    relation: str
    direction: str
    grid: Tuple[float, ...]
    max_violation: float

    def holds(self, direction: Literal["X<=Y", "X>=Y"]) -> bool:
        return self.direction == direction or self.direction == "equal"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "relation": self.relation,
            "direction": self.direction,
            "grid_points": len(self.grid),
            "max_violation": self.max_violation,
        }


@dataclass(frozen=True)
class AgeingCertificate:
    ageing_class: str
    requested: str
    grid: Tuple[float, ...]
    max_violation: float

    @property
    def holds(self) -> bool:
        return self.ageing_class == self.requested

    def to_dict(self) -> Dict[str, Any]:
        return {
            "class": self.ageing_class,
            "requested": self.requested,
            "grid_points": len(self.grid),
            "max_violation": self.max_violation,
        }


def _rate_gap(rate_x: np.ndarray, rate_y: np.ndarray) -> np.ndarray:
    """Relative difference so large hazards do not swamp the tolerance."""
    return (rate_x - rate_y) / (1.0 + np.maximum(np.abs(rate_x), np.abs(rate_y)))


def _violations(x: DistributionHandle, y: DistributionHandle, relation: str, ts: np.ndarray) -> Tuple[float, float]:
    """
    Largest violation of X <= Y and of X >= Y in the given relation.

    st: X <= Y iff S_X <= S_Y.  hr: X <= Y iff hazard_X >= hazard_Y.
    rh: X <= Y iff rhazard_X <= rhazard_Y.
    """
    if relation == "st":
        gap = np.asarray(x.survival(ts)) - np.asarray(y.survival(ts))
        return float(np.max(gap, initial=0.0)), float(np.max(-gap, initial=0.0))

    if relation == "hr":
        le = 1.0 if x.hi > y.hi else 0.0
        ge = 1.0 if y.hi > x.hi else 0.0
        mask = (np.asarray(x.survival(ts)) > 0) & (np.asarray(y.survival(ts)) > 0)
        if mask.any():
            gap = _rate_gap(hazard_rate(x, ts[mask]), hazard_rate(y, ts[mask]))
            le = max(le, float(np.max(-gap, initial=0.0)))
            ge = max(ge, float(np.max(gap, initial=0.0)))
        return le, ge

    if relation == "rh":
        le = 1.0 if x.lo > y.lo else 0.0
        ge = 1.0 if y.lo > x.lo else 0.0
        mask = (np.asarray(x.cdf(ts)) > 0) & (np.asarray(y.cdf(ts)) > 0)
        if mask.any():
            gap = _rate_gap(reversed_hazard_rate(x, ts[mask]), reversed_hazard_rate(y, ts[mask]))
            le = max(le, float(np.max(gap, initial=0.0)))
            ge = max(ge, float(np.max(-gap, initial=0.0)))
        return le, ge

    raise ValueError(f"unknown relation '{relation}'; expected st, hr or rh")


def certify_order(
    x: DistributionHandle,
    y: DistributionHandle,
    relation: Relation,
    grid_spec: GridSpec | None = None,
    tol: float = ORDER_TOL,
) -> OrderCertificate:
    """Certify X <= Y, X >= Y, equality or incomparability on a grid."""
    ts = time_grid(grid_spec or GridSpec(), x, y)
    le, ge = _violations(x, y, relation, ts)
    if le <= tol and ge <= tol:
        direction, violation = "equal", max(le, ge)
    elif le <= tol:
        direction, violation = "X<=Y", le
    elif ge <= tol:
        direction, violation = "X>=Y", ge
    else:
        direction, violation = "incomparable", min(le, ge)
    logger.debug("%s order %s vs %s: %s (violation %.3g)", relation, x.name, y.name, direction, violation)
    return OrderCertificate(relation, direction, tuple(float(t) for t in ts), violation)


def certify_ageing(
    x: DistributionHandle,
    ageing_class: AgeingClass,
    grid_spec: GridSpec | None = None,
    cfg: QuadratureConfig | None = None,
    tol: float = ORDER_TOL,
) -> AgeingCertificate:
    """
    NBU / NWU on an (x, t) product grid; NBUE / NWUE by comparing the
    mean residual life with the mean.
    """
    if ageing_class in ("NBU", "NWU"):
        spec = grid_spec or GridSpec(n=24)
        ts = time_grid(spec, x)
        xx, tt = np.meshgrid(ts, ts)
        joint = np.asarray(x.survival(xx + tt))
        product = np.asarray(x.survival(xx)) * np.asarray(x.survival(tt))
        gap = joint - product if ageing_class == "NBU" else product - joint
        violation = float(np.max(gap, initial=0.0))
    elif ageing_class in ("NBUE", "NWUE"):
        if not x.has_finite_mean:
            raise CapabilityError(f"{ageing_class} needs a finite mean; {x.name} has none")
        spec = grid_spec or GridSpec(n=32)
        ts = np.array([t for t in time_grid(spec, x) if x.survival(t) > 0])
        mrl = np.array([mean_residual_life(x, float(t), cfg).value for t in ts])
        gap = (mrl - x.mean) if ageing_class == "NBUE" else (x.mean - mrl)
        # quadrature noise on mrl dominates the order tolerance
        tol = max(tol, 1e-7 * max(1.0, x.mean))
        violation = float(np.max(gap, initial=0.0))
    else:
        raise ValueError(f"unknown ageing class '{ageing_class}'")
    found = ageing_class if violation <= tol else "none"
    return AgeingCertificate(found, ageing_class, tuple(float(t) for t in ts), violation)
