"""
Unit tests for integration and root finding.
"""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.errors import BracketingError, QuadratureEvaluationError
from src.quadrature import (
    QuadratureConfig, IntegralResult, integrate, integrate_finite, integrate_semi_infinite, find_root, xlogy,
)


def test_finite_polynomial():
    res = integrate_finite(lambda x: x * x, 0.0, 1.0)
    assert res.converged and not res.diverged
    assert np.isclose(res.value, 1.0 / 3.0, rtol=1e-10)


def test_finite_split_points_handle_kink():
    res = integrate_finite(lambda x: abs(x - 0.3), 0.0, 1.0, points=[0.3])
    # 0.3^2/2 + 0.7^2/2
    assert np.isclose(res.value, 0.29, rtol=1e-10)


def test_empty_interval_is_zero():
    assert integrate(lambda x: 1.0, 2.0, 2.0).value == 0.0


def test_semi_infinite_exponential():
    res = integrate_semi_infinite(lambda x: math.exp(-x), 0.0, envelope=lambda x: math.exp(-x))
    assert not res.diverged
    assert np.isclose(res.value, 1.0, rtol=1e-8)


def test_semi_infinite_without_envelope():
    res = integrate(lambda x: 1.0 / (1.0 + x) ** 2, 0.0, math.inf)
    assert not res.diverged
    assert np.isclose(res.value, 1.0, atol=1e-6)


def test_harmonic_tail_diverges():
    res = integrate(lambda x: 1.0 / (1.0 + x), 0.0, math.inf)
    assert res.diverged
    assert not res.converged
    assert math.isfinite(res.value)


@pytest.mark.parametrize("alpha", [1.2, 1.5, 1.8])
def test_slow_power_tail_converges(alpha):
    def f(x):
        return x ** -alpha
    res = integrate_semi_infinite(f, 1.0, envelope=f)
    assert not res.diverged
    assert np.isclose(res.value, 1.0 / (alpha - 1.0), rtol=1e-6)


def test_log_tail_with_envelope_diverges():
    res = integrate_semi_infinite(lambda x: 1.0 / x, 1.0, envelope=lambda x: 1.0 / x)
    assert res.diverged


def test_non_finite_integrand_raises():
    with pytest.raises(QuadratureEvaluationError):
        integrate_finite(lambda x: math.nan, 0.0, 1.0)


def test_integral_result_invariants():
    with pytest.raises(ValueError):
        IntegralResult(1.0, 0.0, True, True)
    with pytest.raises(ValueError):
        IntegralResult(math.inf, 0.0, False, False)
    total = IntegralResult.exact(1.0) + IntegralResult.divergent(2.0)
    assert total.diverged and not total.converged
    assert total.value == 3.0


def test_sum_rechecks_tolerance():
    loose = IntegralResult(1.0, 1e-3, True, False)
    total = loose + loose
    assert total.value == 2.0 and not total.converged and not total.diverged
    assert loose.combined(loose, QuadratureConfig(abs_tol=1e-2)).converged
    assert (IntegralResult.exact(1.0) + IntegralResult.exact(2.0)).converged


def test_scaled_and_shifted():
    r = IntegralResult(2.0, 0.1, True, False).scaled(-2.0).shifted(1.0)
    assert r.value == -3.0
    assert np.isclose(r.error_estimate, 0.2)


def test_quadrature_config_is_strict():
    with pytest.raises(ValidationError):
        QuadratureConfig(rel_tol=-1.0)
    with pytest.raises(ValidationError):
        QuadratureConfig(unknown=1)
    cfg = QuadratureConfig()
    assert cfg.tolerance_for(1e6) == pytest.approx(1e-2)


def test_find_root():
    assert np.isclose(find_root(lambda x: x * x - 2.0, 0.0, 2.0), math.sqrt(2.0), atol=1e-12)


def test_find_root_needs_sign_change():
    with pytest.raises(BracketingError):
        find_root(lambda x: x * x - 2.0, 2.0, 3.0)


def test_xlogy_zero_convention():
    assert xlogy(0.0, 0.0) == 0.0
    assert np.isclose(xlogy(2.0, math.e), 2.0)
