"""
Unit tests for distribution handles, specs, combinators and reliability functionals.
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError

from src.errors import CapabilityError, ConfigError, DomainError, WindowError
from src.distributions import (
    GridSpec, TruncationWindow, make_distribution, parse_spec, exponential, weibull, erlang, pareto1, uniform,
    smoothstep, hazard_rate, reversed_hazard_rate, mean_residual_life, mean_inactivity_time, truncated_mean,
    general_conditional_mean, generalized_failure_rates, second_moment, equilibrium, affine, power_survival,
    power_cdf, mixture, time_grid, near_breakpoint,
)


@pytest.fixture
def three_piece_survival():
    return {"name": "three_piece", "piecewise_survival": {
        "breakpoints": [3.0, 4.0],
        "segments": [
            {"kind": "constant", "c": 1.0},
            {"kind": "exp_power", "a": 6.0, "b": -2.0},
            {"kind": "exp_power", "a": 2.0, "b": -1.0},
        ],
    }}


# ----------------------------------------------------------------------
# Specs and construction
# ----------------------------------------------------------------------
def test_parametric_means():
    assert np.isclose(exponential(2.0).mean, 0.5)
    assert np.isclose(erlang(2, 4.0).mean, 0.5)
    assert np.isclose(weibull(1.0, 2.0).mean, math.sqrt(math.pi) / 2.0)
    assert np.isclose(uniform(0.0, 2.0).mean, 1.0)
    assert np.isclose(smoothstep(0.0, 2.0).mean, 1.0)


def test_pareto_with_unit_index_has_infinite_mean():
    d = pareto1(1.0)
    assert not d.has_finite_mean
    with pytest.raises(CapabilityError):
        d.require_finite_mean()


@pytest.mark.parametrize("spec", [
    {"family": "weibull", "params": [1.0]},
    {"family": "exponential", "params": [-1.0]},
    {"family": "uniform", "params": [2.0, 1.0]},
    {"family": "erlang", "params": [1.5, 1.0]},
    {"family": "lognormal", "params": [1.0]},
    {"bogus": 1},
    {"empirical": [1.0]},
    "exponential",
])
def test_invalid_specs_raise_config_error(spec):
    with pytest.raises(ConfigError):
        parse_spec(spec)


def test_piecewise_survival(three_piece_survival):
    d = make_distribution(three_piece_survival)
    assert d.name == "three_piece"
    assert d.support == (3.0, math.inf)
    assert d.breakpoints == (3.0, 4.0)
    assert np.isclose(d.survival(3.5), math.exp(-1.0))
    assert np.isclose(d.survival(5.0), math.exp(-3.0))
    assert np.isclose(d.density(3.5), 2.0 * math.exp(-1.0))
    # 3 + 1/2 - e^-2/2 + e^-2
    assert np.isclose(d.mean, 3.5 + 0.5 * math.exp(-2.0), rtol=1e-7)


def test_piecewise_rejects_discontinuity(three_piece_survival):
    spec = three_piece_survival["piecewise_survival"]
    broken = {"piecewise_survival": {**spec, "segments": [spec["segments"][0], {"kind": "exp_power", "a": 5.0, "b": -2.0},
                                                          spec["segments"][2]]}}
    with pytest.raises(ConfigError):
        make_distribution(broken)


def test_empirical():
    d = make_distribution({"empirical": [4.0, 1.0, 3.0, 2.0]})
    assert d.support == (1.0, 4.0)
    assert np.isclose(d.mean, 2.5)
    assert np.isclose(d.cdf(2.0), 0.5)
    assert not d.has_density


def test_vectorised_evaluators_keep_shape():
    d = weibull(1.0, 2.0)
    xs = np.array([0.5, 1.0, 2.0])
    assert d.survival(xs).shape == (3,)
    assert isinstance(d.survival(1.0), float)
    assert np.allclose(d.survival(xs) + d.cdf(xs), 1.0)


@given(st.floats(0.1, 10.0), st.floats(0.0, 5.0))
@settings(max_examples=50, deadline=None)
def test_exponential_log_survival_is_linear(rate, t):
    d = exponential(rate)
    assert np.isclose(d.log_survival(t), -rate * t, rtol=1e-10, atol=1e-12)


# ----------------------------------------------------------------------
# Reliability functionals
# ----------------------------------------------------------------------
def test_hazard_and_reversed_hazard():
    assert np.isclose(hazard_rate(exponential(2.0), 1.3), 2.0)
    assert np.isclose(hazard_rate(weibull(1.0, 2.0), 1.5), 3.0)
    assert np.isclose(reversed_hazard_rate(uniform(0.0, 2.0), 0.5), 2.0)


def test_hazard_outside_support_raises():
    with pytest.raises(DomainError):
        hazard_rate(uniform(0.0, 1.0), 2.0)


def test_mean_residual_life_and_inactivity_time():
    assert np.isclose(mean_residual_life(exponential(2.0), 1.0).value, 0.5, rtol=1e-8)
    assert np.isclose(mean_inactivity_time(uniform(0.0, 2.0), 1.0).value, 0.5, rtol=1e-8)
    assert np.isclose(truncated_mean(uniform(0.0, 2.0), 1.0).value, 0.5, rtol=1e-8)


def test_mean_residual_life_of_slowly_decaying_pareto():
    # survival x^-1.5 from 2: integral sqrt(2), divided by 2^-1.5
    res = mean_residual_life(pareto1(1.5), 2.0)
    assert not res.diverged
    assert np.isclose(res.value, 4.0, rtol=1e-6)


def test_second_moment():
    assert np.isclose(second_moment(exponential(1.0)).value, 2.0, rtol=1e-7)


def test_truncation_window():
    w = TruncationWindow(0.5, 1.5)
    assert np.isclose(w.mass(uniform(0.0, 2.0)), 0.5)
    assert np.isclose(TruncationWindow(0.0, math.inf).mass(exponential(1.0)), 1.0)
    assert TruncationWindow(1.0, math.inf).to_dict() == {"t1": 1.0, "t2": None}
    with pytest.raises(WindowError):
        TruncationWindow(2.0, 1.0)
    with pytest.raises(WindowError):
        TruncationWindow(2.0, 3.0).validate(uniform(0.0, 1.0))


def test_conditional_mean_and_generalized_failure_rates():
    w = TruncationWindow(0.5, 1.5)
    assert np.isclose(general_conditional_mean(uniform(0.0, 2.0), w).value, 1.0, rtol=1e-8)
    g = generalized_failure_rates(uniform(0.0, 2.0), w)
    assert np.isclose(g.h1, 1.0) and np.isclose(g.h2, 1.0)


# ----------------------------------------------------------------------
# Combinators
# ----------------------------------------------------------------------
def test_power_survival_of_exponential():
    d = power_survival(exponential(1.0), 2.0)
    assert np.isclose(d.survival(0.7), math.exp(-1.4))
    assert np.isclose(d.mean, 0.5, rtol=1e-7)


def test_power_cdf_of_uniform():
    d = power_cdf(uniform(0.0, 1.0), 2.0)
    assert np.isclose(d.cdf(0.5), 0.25)
    assert np.isclose(d.mean, 2.0 / 3.0, rtol=1e-7)


def test_affine():
    d = affine(exponential(1.0), 2.0, 1.0)
    assert d.support == (1.0, math.inf)
    assert np.isclose(d.mean, 3.0)
    assert np.isclose(d.survival(3.0), math.exp(-1.0))
    with pytest.raises(ValueError):
        affine(exponential(1.0), -1.0, 0.0)


def test_mixture():
    d = mixture(exponential(1.0), exponential(2.0), 0.25)
    assert np.isclose(d.survival(1.0), 0.25 * math.exp(-1.0) + 0.75 * math.exp(-2.0))
    assert np.isclose(d.mean, 0.25 + 0.375)


@pytest.mark.parametrize("p", [0.0, 1.0, 1.5, -0.25])
def test_mixture_weight_must_be_strictly_inside_unit_interval(p):
    with pytest.raises(DomainError):
        mixture(exponential(1.0), exponential(2.0), p)


def test_exponential_is_its_own_equilibrium():
    e = equilibrium(exponential(1.0))
    assert np.isclose(e.survival(1.0), math.exp(-1.0), rtol=1e-6)
    assert np.isclose(e.mean, 1.0, rtol=1e-6)


# ----------------------------------------------------------------------
# Grids
# ----------------------------------------------------------------------
def test_uniform_grid_is_interior():
    ts = time_grid(GridSpec(n=10, spacing="uniform"), uniform(0.0, 1.0))
    assert ts.size == 10
    assert ts.min() > 0.0 and ts.max() < 1.0


def test_grid_adds_breakpoint_neighbours(three_piece_survival):
    d = make_distribution(three_piece_survival)
    ts = time_grid(GridSpec(n=8, lo=2.0, hi=6.0, spacing="uniform"), d)
    assert np.any(np.abs(ts - 3.0) < 1e-5)
    for bp in (3.0, 4.0):
        for q in (bp - 1e-9, bp + 1e-9):
            assert np.any(np.isclose(ts, q, rtol=0.0, atol=1e-12))
    assert near_breakpoint(4.0, [d])
    assert not near_breakpoint(3.5, [d])


def test_grid_spec_validation():
    with pytest.raises(ValidationError):
        GridSpec(lo=2.0, hi=1.0)
