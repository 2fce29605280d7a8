"""Numerical integration and root finding."""

from .config import QuadratureConfig, IntegralResult, DEFAULT_QUADRATURE
from .integrate import integrate, integrate_finite, integrate_semi_infinite, xlogy, weighted_log
from .roots import find_root

__all__ = [
    "QuadratureConfig",
    "IntegralResult",
    "DEFAULT_QUADRATURE",
    "integrate",
    "integrate_finite",
    "integrate_semi_infinite",
    "xlogy",
    "weighted_log",
    "find_root",
]
