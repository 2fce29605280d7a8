"""
Time grids over the effective range of one or more distributions.
"""
from __future__ import annotations

import math
from typing import Iterable, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .handle import DistributionHandle

TAIL_SURVIVAL = 1e-10
MAX_UPPER = 1e6


class GridSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(256, ge=2)
    lo: Optional[float] = Field(None, ge=0)
    hi: Optional[float] = Field(None, gt=0)
    spacing: Literal["auto", "uniform", "geometric"] = "auto"

    @model_validator(mode="after")
    def _ordered(self) -> "GridSpec":
        if self.lo is not None and self.hi is not None and not self.lo < self.hi:
            raise ValueError(f"grid lo ({self.lo}) must be below hi ({self.hi})")
        return self


def effective_upper(d: DistributionHandle, tail: float = TAIL_SURVIVAL) -> float:
    """Support end, or the first doubling point where survival drops below ``tail``."""
    if math.isfinite(d.hi):
        return d.hi
    x = max(1.0, 2.0 * d.lo)
    while x < MAX_UPPER and d.survival(x) > tail:
        x *= 2.0
    return min(x, MAX_UPPER)


def effective_range(*dists: DistributionHandle) -> Tuple[float, float]:
    return min(d.lo for d in dists), max(effective_upper(d) for d in dists)


def time_grid(spec: GridSpec | None, *dists: DistributionHandle) -> np.ndarray:
    """
    Interior evaluation points with breakpoint neighbours inserted.

    Geometric spacing is used for unbounded supports unless overridden.
    """
    spec = spec or GridSpec()
    lo_d, hi_d = effective_range(*dists)
    lo = spec.lo if spec.lo is not None else lo_d
    hi = spec.hi if spec.hi is not None else hi_d
    spacing = spec.spacing
    if spacing == "auto":
        spacing = "geometric" if any(not d.bounded for d in dists) else "uniform"
    width = hi - lo
    if spacing == "geometric":
        start = max(lo, 1e-3 * width)
        pts = np.geomspace(start, hi, spec.n)
        if lo < start:
            pts = np.concatenate([[lo + 0.5 * (start - lo)], pts[:-1]])
    else:
        pts = np.linspace(lo, hi, spec.n + 2)[1:-1]
    extra = _breakpoint_neighbours((bp for d in dists for bp in d.breakpoints), lo, hi)
    return np.unique(np.concatenate([pts, extra]))


def _breakpoint_neighbours(points: Iterable[float], lo: float, hi: float, eps: float = 1e-9) -> np.ndarray:
    out = []
    for p in points:
        for q in (p - eps, p + eps):
            if lo < q < hi:
                out.append(q)
    return np.asarray(out, dtype=float)


def near_breakpoint(t: float, dists: Iterable[DistributionHandle], rel: float = 1e-6) -> bool:
    for d in dists:
        for p in tuple(d.breakpoints) + (d.lo, d.hi):
            if math.isfinite(p) and abs(t - p) <= rel * max(1.0, abs(p)):
                return True
    return False
