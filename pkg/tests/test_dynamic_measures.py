"""
Unit tests for residual and past dynamic measures, their derivatives and identities.
"""
import numpy as np
import pytest

from src.errors import DomainError, NonDifferentiableError, PreconditionError
from src.distributions import GridSpec, exponential, weibull, uniform, smoothstep, power_cdf, power_survival
from src.measures import (
    cri, dcre, dcri, dcpe, dcpi, dcri_derivative, dcpi_derivative, central_difference, dynamic_curve,
    classify_monotonicity, DynamicMeasureCurve, proportional_hazards_identity,
    proportional_reversed_hazards_identity, linear_transform_identity, symmetric_identity,
    dcpi_as_conditional_expectation, zt_identity,
)
from src.pipeline import example_2_1_pair


@pytest.fixture
def residual_pair():
    # dcri(t) = 2t + 2 for X ~ exp(1), S_Y = exp(-x^2)
    return exponential(1.0), weibull(1.0, 2.0)


@pytest.fixture
def past_pair():
    # F_X = x, F_Y = x^2 on (0, 1): dcpi(X, Y; t) = t / 2
    return uniform(0.0, 1.0), power_cdf(uniform(0.0, 1.0), 2.0)


@pytest.mark.parametrize("t", [0.0, 0.5, 1.5])
def test_dcre_of_uniform(t):
    assert np.isclose(dcre(uniform(0.0, 2.0), t).value, (2.0 - t) / 4.0, rtol=1e-7)


def test_dcre_of_exponential_is_memoryless():
    for t in (0.0, 1.0, 5.0):
        assert np.isclose(dcre(exponential(2.0), t).value, 0.5, rtol=1e-7)


@pytest.mark.parametrize("t", [0.5, 1.0, 1.8])
def test_dcpe_of_uniform(t):
    assert np.isclose(dcpe(uniform(0.0, 2.0), t).value, t / 4.0, rtol=1e-7)


@pytest.mark.parametrize("t", [0.0, 0.5, 2.0])
def test_dcri_closed_form(residual_pair, t):
    x, y = residual_pair
    assert np.isclose(dcri(x, y, t).value, 2.0 * t + 2.0, rtol=1e-7)


@pytest.mark.parametrize("t", [0.2, 0.6, 0.9])
def test_dcpi_closed_form(past_pair, t):
    x, y = past_pair
    assert np.isclose(dcpi(x, y, t).value, t / 2.0, rtol=1e-7)


def test_dcri_at_time_zero_is_cri(residual_pair):
    x, y = residual_pair
    assert np.isclose(dcri(x, y, 0.0).value, cri(x, y).value, rtol=1e-8)


def test_evaluation_outside_domain_raises():
    with pytest.raises(DomainError):
        dcri(uniform(0.0, 1.0), uniform(0.0, 2.0), 1.5)
    with pytest.raises(DomainError):
        dcpi(uniform(1.0, 2.0), uniform(0.0, 2.0), 0.5)


def test_support_mismatch_diverges():
    assert dcri(exponential(1.0), uniform(0.0, 3.0), 1.0).diverged


def test_derivatives_match_closed_forms(residual_pair, past_pair):
    assert np.isclose(dcri_derivative(*residual_pair, 1.0), 2.0, atol=1e-6)
    assert np.isclose(dcpi_derivative(*past_pair, 0.4), 0.5, atol=1e-6)


def test_derivative_matches_central_difference():
    x, y = weibull(1.0, 1.5), weibull(2.0, 2.0)
    t = 0.8
    fd = central_difference(lambda s: dcri(x, y, s).value, t)
    assert np.isclose(dcri_derivative(x, y, t), fd, atol=1e-4)


def test_derivative_at_breakpoint_raises():
    x, y = example_2_1_pair()
    with pytest.raises(NonDifferentiableError):
        dcri_derivative(x, y, 3.0)


# ----------------------------------------------------------------------
# Curves
# ----------------------------------------------------------------------
def test_curve_drops_points_outside_domain():
    curve = dynamic_curve("dcri", uniform(0.0, 1.0), uniform(0.0, 2.0), [0.5, 1.5])
    assert list(curve.t_grid) == [0.5]
    assert curve.diverged_at == ()


def test_decreasing_curve():
    curve = dynamic_curve("dcre", uniform(0.0, 1.0), grid=GridSpec(n=16, spacing="uniform"))
    assert curve.t_grid.size == 16
    assert classify_monotonicity(curve).classification == "decreasing"


def test_non_monotone_verdict_has_witnesses():
    curve = DynamicMeasureCurve("dcri", ("a", "b"), np.arange(8.0),
                                np.array([0.0, 1.0, 0.5, np.nan, 0.7, 0.8, 0.9, 1.0]), (3.0,))
    verdict = classify_monotonicity(curve)
    assert verdict.classification == "non-monotone"
    assert verdict.witness_points == (0.0, 1.0, 1.0, 2.0)
    frame = curve.to_frame()
    assert list(frame.columns) == ["t", "value", "diverged"]
    assert frame["diverged"].tolist() == [False, False, False, True, False, False, False, False]


def test_constant_curve():
    curve = DynamicMeasureCurve("dcpi", ("a", "b"), np.arange(1.0, 9.0), np.full(8, 0.5))
    assert classify_monotonicity(curve).classification == "constant"


def test_classification_needs_eight_points():
    curve = DynamicMeasureCurve("dcpi", ("a", "b"), np.arange(7.0), np.linspace(0.0, 1.0, 7))
    with pytest.raises(PreconditionError):
        classify_monotonicity(curve)


# ----------------------------------------------------------------------
# Identities
# ----------------------------------------------------------------------
def test_proportional_hazards_identity():
    base = weibull(1.0, 2.0)
    report = proportional_hazards_identity(power_survival(base, 2.0), base, 2.0, [0.5, 1.0])
    assert report.status == "passed", report.to_dict()
    assert "alternative reading" in report.notes


def test_proportional_hazards_identity_checks_its_precondition():
    report = proportional_hazards_identity(exponential(1.0), weibull(1.0, 2.0), 2.0, [0.5, 1.0])
    assert report.status == "precondition_failed"


def test_proportional_reversed_hazards_identity():
    base = exponential(1.0)
    report = proportional_reversed_hazards_identity(power_cdf(base, 2.0), base, 2.0, [0.5, 1.5])
    assert report.status == "passed", report.to_dict()


def test_linear_transform_identity(residual_pair):
    report = linear_transform_identity(*residual_pair, 2.0, 0.5, 2.5)
    assert report.status == "passed", report.to_dict()
    assert linear_transform_identity(*residual_pair, 2.0, 3.0, 2.5).status == "precondition_failed"


def test_symmetric_identity():
    report = symmetric_identity(uniform(0.0, 2.0), smoothstep(0.0, 2.0), 2.0, 0.7)
    assert report.status == "passed", report.to_dict()
    assert symmetric_identity(exponential(1.0), uniform(0.0, 2.0), 2.0, 0.7).status == "precondition_failed"


def test_dcpi_as_conditional_expectation(past_pair):
    x, y = past_pair
    t = 0.7
    # dcpi(Y, X; t) = t / 9
    direct = dcpi(y, x, t).value
    assert np.isclose(direct, t / 9.0, rtol=1e-7)
    assert np.isclose(dcpi_as_conditional_expectation(x, y, t).value, direct, rtol=1e-5)


def test_zt_identity(past_pair):
    report = zt_identity(*past_pair, 0.7)
    assert report.status == "passed", report.to_dict()
