"""
Integration tests for the worked examples, the ratio sweep, config loading and the CLI.
"""
import json
import math

import numpy as np
import pandas as pd
import pytest

from src.cli import EXIT_CONFIG, EXIT_DIVERGED, EXIT_OK, EXIT_VERIFY_FAILED, main
from src.data import load_config
from src.errors import ConfigError
from src.measures import dcri
from src.orders import core_ids
from src.pipeline import (
    EXAMPLE1_PRINTED, PRINTED_LAMBDA, MeasureRunner, example1_equation, example_2_1_pair, example_2_1_printed,
    run_example1, run_example_2_1, run_example_3_1, ratio_sweep, shape_values,
)
from src.reporting import to_json_line


@pytest.fixture
def exp_config(tmp_path):
    def write(**fields):
        raw = {
            "distributions": {
                "a": {"family": "exponential", "params": [2.0]},
                "b": {"family": "exponential", "params": [1.0]},
                "u": {"family": "uniform", "params": [0.0, 1.0]},
            },
            "x": "a",
            "measures": ["cre"],
        }
        raw.update(fields)
        path = tmp_path / "run.json"
        path.write_text(json.dumps(raw))
        return path
    return write


# ----------------------------------------------------------------------
# Exponential vs Erlang
# ----------------------------------------------------------------------
def test_example1_root():
    result = run_example1()
    assert abs(example1_equation(result.lam)) < 1e-10
    assert np.isclose(result.lam, 1.624182, atol=1e-5)


def test_example1_kerridge_inaccuracies_coincide():
    values = run_example1().values
    assert np.isclose(values["kerridge_xy"], values["kerridge_yx"], rtol=1e-7)


def test_example1_cumulative_values_match_printed():
    result = run_example1()
    assert np.isclose(result.values["cri_yx"], 3.0 / result.lam ** 2, rtol=1e-7)
    for key in ("cri_xy", "cri_yx"):
        assert abs(result.values[key] - EXAMPLE1_PRINTED[key]) < 2e-3


def test_example1_table_flags_printed_lambda():
    frame = run_example1().to_frame()
    rows = frame.set_index("quantity")
    assert not rows.loc["lambda", "within_tol"]
    assert np.isclose(rows.loc["lambda", "printed"], PRINTED_LAMBDA)
    assert rows.loc["cri_yx vs 3/lambda^2", "within_tol"]


# ----------------------------------------------------------------------
# Piecewise examples
# ----------------------------------------------------------------------
@pytest.mark.parametrize("t", [4.0, 4.5, 6.0])
def test_example_2_1_tail_value(t):
    x, y = example_2_1_pair()
    assert np.isclose(dcri(x, y, t).value, 0.5, atol=1e-6)


def test_example_2_1_matches_direct_integration():
    x, y = example_2_1_pair()
    # 1/4 + (9 - 2t) e^{2t-8} / 4 on (3, 4)
    assert np.isclose(dcri(x, y, 3.5).value, 0.25 + 2.0 * math.exp(-1.0) / 4.0, rtol=1e-6)
    assert np.isclose(dcri(x, y, 1.0).value, 0.25 + 0.75 * math.exp(-2.0), rtol=1e-6)


def test_example_2_1_printed_form():
    assert example_2_1_printed(4.5) == 0.5
    assert np.isclose(example_2_1_printed(3.0), 0.25 * (1.0 - 3.0 * math.exp(-2.0)) + math.exp(-1.0))
    with pytest.raises(ValueError):
        example_2_1_printed(0.0)


def test_example_2_1_verdicts():
    result = run_example_2_1(n=32)
    assert result.verdicts["dcri_3_4"].classification == "increasing"
    printed = result.verdicts["dcri_printed"]
    assert printed.classification == "non-monotone"
    assert all(3.0 < w < 4.0 for w in printed.witness_points)
    frame = result.to_frame()
    assert set(frame["curve"]) == {"dcri_3_4", "dcri_0_6", "dcri_printed"}


def test_example_3_1_verdicts():
    result = run_example_3_1(n=32)
    assert result.verdicts["dcpi_pair"].classification == "constant"
    display = result.verdicts["dcpi_display"]
    assert display.classification == "non-monotone"
    assert len(display.witness_points) >= 2
    assert result.summary()["example"] == "example3.1"


# ----------------------------------------------------------------------
# Ratio sweep
# ----------------------------------------------------------------------
def test_shape_values():
    values = shape_values(0.2, 2.8, 0.2)
    assert len(values) == 14
    assert np.isclose(values[0], 0.2) and np.isclose(values[-1], 2.8)


def test_ratio_sweep_at_unit_shape():
    frame = ratio_sweep(("weibull",), 1.0, 1.0, 0.2)
    assert list(frame.columns) == ["family", "r", "crir_xy", "cpir_xy", "crir_yx", "cpir_yx", "diverged"]
    assert len(frame) == 1
    # weibull(1, 1) is exp(1)
    assert np.isclose(frame.loc[0, "crir_xy"], 1.0, rtol=1e-6)
    assert frame.loc[0, "diverged"] == ""


# ----------------------------------------------------------------------
# Config
# ----------------------------------------------------------------------
def test_load_config_defaults():
    cfg = load_config(None)
    assert cfg.propositions == ["all"]
    assert cfg.seed_list() == [1]


def test_load_config_errors(tmp_path, exp_config):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(bad)
    with pytest.raises(ConfigError):
        load_config(exp_config(colour="red"))
    with pytest.raises(ConfigError):
        load_config(exp_config(x="nope"))


def test_overrides(exp_config):
    cfg = load_config(exp_config()).with_overrides(tol=1e-5, seed=9, measures=None)
    assert cfg.quadrature.rel_tol == 1e-5
    assert cfg.seed_list() == [9]
    assert cfg.measures == ["cre"]


# ----------------------------------------------------------------------
# CLI
# ----------------------------------------------------------------------
def test_cli_measure(exp_config, capsys):
    assert main(["measure", "--config", str(exp_config())]) == EXIT_OK
    record = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert record["measure"] == "cre"
    assert np.isclose(record["value"], 0.5)


def test_cli_strict_divergence(exp_config):
    path = exp_config(x="b", y="u", measures=["cri"])
    assert main(["measure", "--config", str(path)]) == EXIT_OK
    assert main(["measure", "--config", str(path), "--strict"]) == EXIT_DIVERGED


def test_cli_config_errors(tmp_path):
    assert main(["verify", "P9.9"]) == EXIT_CONFIG
    assert main(["measure", "--config", str(tmp_path / "missing.json")]) == EXIT_CONFIG


def test_cli_verify_writes_reports(tmp_path):
    assert main(["verify", "P2.2", "--trials", "2", "--out", str(tmp_path)]) == EXIT_OK
    lines = (tmp_path / "verify_reports.jsonl").read_text().strip().splitlines()
    assert len(lines) == 3
    summary = pd.read_csv(tmp_path / "verify_summary.csv")
    assert summary.loc[0, "proposition_id"] == "P2.2"
    assert summary.loc[0, "failed"] == 0


def test_cli_verify_all(tmp_path):
    assert main(["verify", "all", "--trials", "1", "--out", str(tmp_path)]) in (EXIT_OK, EXIT_VERIFY_FAILED)
    summary = pd.read_csv(tmp_path / "verify_summary.csv")
    assert len(summary) >= len(core_ids())


def test_cli_unexpected_error_exits_three(exp_config, monkeypatch, caplog):
    def boom(self):
        raise RuntimeError("integrand blew up")
    monkeypatch.setattr(MeasureRunner, "run_measure", boom)
    assert main(["measure", "--config", str(exp_config())]) == EXIT_DIVERGED
    assert "unexpected failure" in caplog.text


def test_cli_reproduce_example1(tmp_path):
    assert main(["reproduce", "example1", "--out", str(tmp_path)]) == EXIT_OK
    payload = json.loads((tmp_path / "example1.json").read_text())
    assert np.isclose(payload["lambda"], 1.624182, atol=1e-5)
    assert (tmp_path / "example1_table.csv").exists()


def test_json_line_writes_nan_as_null():
    record = json.loads(to_json_line({"value": float("nan"), "x": 1.0 / 3.0, "flag": True}))
    assert record["value"] is None
    assert record["x"] == 0.333333333
    assert record["flag"] is True
