"""
Unit tests for order certificates, the proposition registry and seeded sweeps.
"""
import numpy as np
import pytest

from src.errors import RegistryError
from src.distributions import exponential, weibull, uniform
from src.orders import (
    Bindings, HarnessConfig, REGISTRY, certify_order, certify_ageing, core_ids, resolve_id, run_proposition,
    canonical_bindings, randomized_sweep, summarize, quadratic_map, reflection_map,
)


# ----------------------------------------------------------------------
# Certificates
# ----------------------------------------------------------------------
@pytest.mark.parametrize("relation", ["st", "hr"])
def test_exponential_rates_are_ordered(relation):
    cert = certify_order(exponential(2.0), exponential(1.0), relation)
    assert cert.direction == "X<=Y"
    assert cert.holds("X<=Y") and not cert.holds("X>=Y")
    assert certify_order(exponential(1.0), exponential(2.0), relation).direction == "X>=Y"


def test_identical_laws_are_equal():
    cert = certify_order(exponential(1.0), exponential(1.0), "st")
    assert cert.direction == "equal"
    assert cert.holds("X<=Y") and cert.holds("X>=Y")


def test_crossing_survivals_are_incomparable():
    cert = certify_order(exponential(1.0), weibull(1.0, 2.0), "st")
    assert cert.direction == "incomparable"
    assert cert.max_violation > 0
    assert cert.to_dict()["grid_points"] == len(cert.grid)


def test_unknown_relation():
    with pytest.raises(ValueError):
        certify_order(exponential(1.0), exponential(2.0), "lr")


def test_ageing_classes():
    assert certify_ageing(weibull(1.0, 2.0), "NBU").holds
    assert not certify_ageing(weibull(1.0, 0.5), "NBU").holds
    assert certify_ageing(weibull(1.0, 0.5), "NWU").holds
    assert certify_ageing(uniform(0.0, 1.0), "NBUE").holds
    assert certify_ageing(exponential(1.0), "NBU").holds


# ----------------------------------------------------------------------
# Registry
# ----------------------------------------------------------------------
def test_registry_ids():
    ids = core_ids()
    assert len(ids) == 25
    assert "T2.2-strong" in REGISTRY and "T2.2-strong" not in ids
    assert ids[0] == "P2.1i" and ids[-1] == "T4.6"


@pytest.mark.parametrize("alias,target", [("T3.1", "P3.2"), ("P3.4", "T3.3"), ("P2.2ii", "P2.2"), ("T4.6", "T4.6")])
def test_aliases(alias, target):
    assert resolve_id(alias) == target


def test_unknown_id():
    with pytest.raises(RegistryError):
        resolve_id("P9.9")
    with pytest.raises(RegistryError):
        canonical_bindings("P9.9")


def test_st_sandwich_by_hand():
    # cri(exp(2), exp(1)) = 1/4 <= min(cre) = 1/2
    report = run_proposition("P2.2", Bindings(exponential(2.0), exponential(1.0)))
    assert report.status == "passed"
    assert np.isclose(report.lhs, 0.5, rtol=1e-7)
    assert np.isclose(report.rhs, 0.25, rtol=1e-7)


def test_alias_reports_canonical_id():
    report = run_proposition("P2.2i", Bindings(exponential(2.0), exponential(1.0)))
    assert report.proposition_id == "P2.2"


def test_incomparable_pair_is_a_precondition_failure():
    report = run_proposition("P2.2", Bindings(exponential(1.0), weibull(1.0, 2.0)))
    assert report.status == "precondition_failed"
    assert not report.passed
    assert report.margin is None


def test_missing_third_distribution():
    report = run_proposition("P2.3", Bindings(exponential(2.0), exponential(1.0)))
    assert report.status == "precondition_failed"
    assert "third distribution" in report.notes


def test_triangle_by_hand():
    # 1/4 + 2 >= 1/2
    report = run_proposition("T2.2", canonical_bindings("T2.2"))
    assert report.status == "passed"


@pytest.mark.parametrize("pid", core_ids())
def test_canonical_bindings_never_fail(pid):
    report = run_proposition(pid, canonical_bindings(pid))
    assert report.proposition_id == pid
    assert report.status != "failed", report.to_dict()


@pytest.mark.parametrize("pid", ["P2.1i", "P2.1ii", "P2.2", "P2.3", "T2.1", "C2.1", "T2.2", "P2.6", "P2.8",
                                 "P3.7", "T3.3"])
def test_canonical_bindings_pass(pid):
    report = run_proposition(pid, canonical_bindings(pid))
    assert report.status == "passed", report.to_dict()


def test_maps():
    phi = quadratic_map(0.1)
    assert np.isclose(phi(1.0), 1.1)
    assert np.isclose(phi.inverse(1.1), 1.0)
    assert np.isclose(phi.derivative(1.0), 1.2)
    r = reflection_map(2.0)
    assert not r.increasing
    assert np.isclose(r(0.5), 1.5) and np.isclose(r.inverse(1.5), 0.5)


# ----------------------------------------------------------------------
# Sweeps
# ----------------------------------------------------------------------
def test_sweep_is_reproducible():
    a = [r.to_dict() for r in randomized_sweep(["P2.2"], 3, seed=7)]
    b = [r.to_dict() for r in randomized_sweep(["P2.2"], 3, seed=7)]
    assert a == b
    assert sorted(r["trial"] for r in a) == [0, 1, 2]


def test_sweep_does_not_depend_on_selection():
    alone = sorted((r.to_dict() for r in randomized_sweep(["P2.1ii"], 2, seed=3)), key=lambda d: d["trial"])
    mixed = sorted((r.to_dict() for r in randomized_sweep(["P2.2", "P2.1ii"], 2, seed=3)
                    if r.proposition_id == "P2.1ii"), key=lambda d: d["trial"])
    assert alone == mixed


def test_sweep_has_no_failures():
    reports = randomized_sweep(["P2.1ii", "P2.2", "T2.1"], 4, seed=1, cfg=HarnessConfig())
    assert not [r.to_dict() for r in reports if r.status == "failed"]
    counts = summarize(reports)
    assert set(counts) == {"P2.1ii", "P2.2", "T2.1"}
    assert all(sum(row.values()) == 4 for row in counts.values())


@pytest.mark.parametrize("seed", [1, 2])
@pytest.mark.parametrize("pid", core_ids())
def test_every_sampler_runs_clean(pid, seed):
    reports = randomized_sweep([pid], 3, seed=seed)
    assert len(reports) == 3
    assert {r.status for r in reports} <= {"passed", "precondition_failed"}, [r.to_dict() for r in reports]


def test_sweep_rejects_zero_trials():
    with pytest.raises(ValueError):
        randomized_sweep("all", 0, seed=1)
