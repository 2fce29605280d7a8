"""
Bracketed root finding.
"""
from __future__ import annotations

import numpy as np
from scipy.optimize import brentq

from src.errors import BracketingError


def find_root(f, lo: float, hi: float, tol: float = 1e-10, max_iter: int = 200) -> float:
    """
    Root of ``f`` on [lo, hi] via Brent's method.

    Raises BracketingError when f(lo) and f(hi) share a sign.
    """
    if not lo < hi:
        raise ValueError(f"bracket requires lo < hi, got [{lo}, {hi}]")
    f_lo, f_hi = float(f(lo)), float(f(hi))
    if f_lo == 0.0:
        return float(lo)
    if f_hi == 0.0:
        return float(hi)
    if np.sign(f_lo) == np.sign(f_hi):
        raise BracketingError(f"no sign change on [{lo}, {hi}]: f(lo)={f_lo:.6g}, f(hi)={f_hi:.6g}")
    root = brentq(f, lo, hi, xtol=min(tol, 1e-12), rtol=4 * np.finfo(float).eps, maxiter=max_iter)
    return float(root)
