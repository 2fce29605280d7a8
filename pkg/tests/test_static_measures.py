"""
Unit tests for the static entropy and inaccuracy measures.
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.errors import ConfigError
from src.distributions import exponential, weibull, erlang, pareto1, uniform, power_cdf
from src.measures import (
    shannon_entropy, kerridge_inaccuracy, kl_divergence, cre, cpe, cri, cpi, crir, cpir,
    cri_as_expectation, cpi_as_expectation, cumulative_hazard_transforms, equilibrium_identity_check,
    measure_by_name,
)


@pytest.mark.parametrize("rate", [0.5, 1.0, 3.0])
def test_cre_of_exponential(rate):
    mv = cre(exponential(rate))
    assert not mv.diverged
    assert np.isclose(mv.value, 1.0 / rate, rtol=1e-7)


@pytest.mark.parametrize("b", [0.5, 1.0, 4.0])
def test_cpe_of_uniform(b):
    assert np.isclose(cpe(uniform(0.0, b)).value, b / 4.0, rtol=1e-7)


@given(st.floats(0.5, 3.0), st.floats(0.5, 3.0))
@settings(max_examples=20, deadline=None)
def test_cri_of_exponentials(a, b):
    assert np.isclose(cri(exponential(a), exponential(b)).value, b / a ** 2, rtol=1e-6)


def test_cri_reduces_to_cre_on_the_diagonal():
    d = weibull(1.0, 2.0)
    assert np.isclose(cri(d, d).value, cre(d).value, rtol=1e-8)
    assert np.isclose(crir(d, d).value, 1.0, rtol=1e-7)


def test_cri_against_erlang_is_half_second_moment():
    lam = 1.6
    # cri(Y, exp(1)) = E[Y^2] / 2
    assert np.isclose(cri(erlang(2, lam), exponential(1.0)).value, 3.0 / lam ** 2, rtol=1e-7)


def test_cpi_of_uniform_against_power():
    # F_X = x on (0, 1), F_Y = x^2: cpi = -int x ln x^2 = 1/2
    assert np.isclose(cpi(uniform(0.0, 1.0), power_cdf(uniform(0.0, 1.0), 2.0)).value, 0.5, rtol=1e-7)
    assert np.isclose(cpir(uniform(0.0, 1.0), uniform(0.0, 1.0)).value, 1.0, rtol=1e-7)


def test_density_based_measures_of_exponentials():
    a, b = 1.0, 2.0
    assert np.isclose(shannon_entropy(exponential(2.0)).value, 1.0 - math.log(2.0), rtol=1e-7)
    assert np.isclose(kerridge_inaccuracy(exponential(a), exponential(b)).value, -math.log(b) + b / a, rtol=1e-7)
    assert np.isclose(kl_divergence(exponential(a), exponential(b)).value, math.log(a / b) + b / a - 1.0, rtol=1e-6)
    assert abs(kl_divergence(exponential(a), exponential(a)).value) < 1e-9


def test_support_mismatch_is_divergent_not_an_error():
    mv = cri(exponential(1.0), uniform(0.0, 1.0))
    assert mv.diverged
    assert mv.value is None
    assert mv.to_dict()["value"] is None
    assert cpi(uniform(0.0, 1.0), uniform(0.5, 1.0)).diverged
    assert kerridge_inaccuracy(exponential(1.0), uniform(0.0, 1.0)).diverged


def test_heavy_tail_cre_diverges():
    assert cre(pareto1(1.0)).diverged


def test_ratio_is_divergent_when_a_part_diverges():
    assert crir(exponential(1.0), uniform(0.0, 1.0)).diverged


def test_expectation_forms_agree_with_direct_integrals():
    x, y = exponential(1.0), weibull(1.0, 2.0)
    assert np.isclose(cri_as_expectation(x, y).value, cri(x, y).value, rtol=1e-5)
    bx, by = uniform(0.0, 1.0), uniform(0.0, 2.0)
    assert np.isclose(cpi_as_expectation(bx, by).value, cpi(bx, by).value, rtol=1e-5)


def test_cumulative_hazard_transforms():
    h = cumulative_hazard_transforms(exponential(2.0))
    # -int_0^x ln S = x^2
    assert np.isclose(h.r2(1.5).value, 2.25, rtol=1e-8)
    assert cumulative_hazard_transforms(uniform(0.0, 1.0)).r2(2.0).diverged


def test_equilibrium_representations():
    report = equilibrium_identity_check(exponential(1.0), exponential(2.0), tol=1e-5)
    assert report.status == "passed", report.to_dict()


def test_measure_by_name():
    assert np.isclose(measure_by_name("cre", exponential(2.0)).value, 0.5, rtol=1e-7)
    with pytest.raises(ConfigError):
        measure_by_name("cri", exponential(1.0))
    with pytest.raises(ConfigError):
        measure_by_name("renyi", exponential(1.0))
