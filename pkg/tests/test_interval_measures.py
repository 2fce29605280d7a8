"""
Unit tests for doubly truncated measures on a window (t1, t2).
"""
import math

import numpy as np
import pytest

from src.errors import WindowError
from src.distributions import TruncationWindow, exponential, weibull, uniform, power_cdf, gfr
from src.measures import (
    dcri, dcpi, dcpe, kerridge_inaccuracy, interval_inaccuracy, icre, icpe, icri, icpi, icri_decomposition,
    icpi_decomposition, icri_partial_t1, icri_partial_t1_printed, generalized_failure_rates, scale_identity,
)


@pytest.fixture
def pair():
    return exponential(1.0), weibull(1.0, 2.0)


@pytest.fixture
def window():
    return TruncationWindow(0.5, 2.0)


def test_unbounded_window_reduces_to_dynamic_residual(pair):
    x, y = pair
    assert np.isclose(icri(x, y, TruncationWindow(1.0, math.inf)).value, dcri(x, y, 1.0).value, rtol=1e-7)
    assert np.isclose(icre(exponential(2.0), TruncationWindow(1.0, math.inf)).value, 0.5, rtol=1e-7)


def test_window_from_zero_reduces_to_dynamic_past():
    bx, by = uniform(0.0, 1.0), power_cdf(uniform(0.0, 1.0), 2.0)
    assert np.isclose(icpi(bx, by, TruncationWindow(0.0, 0.6)).value, dcpi(bx, by, 0.6).value, rtol=1e-7)
    assert np.isclose(icpe(uniform(0.0, 2.0), TruncationWindow(0.0, 1.0)).value, dcpe(uniform(0.0, 2.0), 1.0).value,
                      rtol=1e-7)


def test_full_window_density_inaccuracy_is_kerridge():
    x, y = exponential(1.0), exponential(2.0)
    full = TruncationWindow(0.0, math.inf)
    assert np.isclose(interval_inaccuracy(x, y, full).value, kerridge_inaccuracy(x, y).value, rtol=1e-7)


def test_window_without_mass_raises():
    with pytest.raises(WindowError):
        icri(uniform(0.0, 1.0), uniform(0.0, 1.0), TruncationWindow(2.0, 3.0))


def test_support_mismatch_inside_window_diverges():
    mv = icri(exponential(1.0), uniform(0.0, 1.0), TruncationWindow(0.2, 3.0))
    assert mv.diverged and mv.value is None


def test_generalized_failure_rates(window):
    g = generalized_failure_rates(exponential(1.0), window)
    mass = math.exp(-0.5) - math.exp(-2.0)
    assert np.isclose(g.h1, math.exp(-0.5) / mass)
    assert np.isclose(g.h2, math.exp(-2.0) / mass)


def test_generalized_failure_rates_on_the_full_line():
    g = gfr(exponential(1.0), TruncationWindow(0.0, math.inf))
    assert np.isclose(g.h1, 1.0)
    assert g.h2 == 0.0


def test_decompositions(pair, window):
    for report in (icri_decomposition(*pair, window), icpi_decomposition(*pair, window)):
        assert report.status == "passed", report.to_dict()


def test_icpi_decomposition_needs_bounded_window(pair):
    report = icpi_decomposition(*pair, TruncationWindow(0.5, math.inf))
    assert report.status == "precondition_failed"


def test_t1_derivative_closed_form_matches_finite_difference(pair, window):
    fd = icri_partial_t1(*pair, window)
    closed = icri_partial_t1_printed(*pair, window)
    assert np.isclose(closed, fd, rtol=1e-4, atol=1e-6)


def test_scale_identity(pair, window):
    for measure in ("icri", "icpi"):
        report = scale_identity(*pair, 2.0, window, measure=measure)
        assert report.status == "passed", report.to_dict()
