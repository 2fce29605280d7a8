"""
Class-based orchestration for measure, curve, sweep, verify and reproduce runs.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from src.data import RunConfig
from src.distributions import DistributionHandle, TruncationWindow
from src.errors import ConfigError, DomainError
from src.measures import (
    MeasureValue, PropositionReport, DynamicMeasureCurve, measure_by_name, dynamic_curve,
    dcre, dcri, dcpe, dcpi, icre, icpe, icri, icpi, interval_inaccuracy,
)
from src.orders import (
    Bindings, HarnessConfig, REGISTRY, core_ids, resolve_id, run_proposition, canonical_bindings, randomized_sweep,
)
from src.reporting import write_csv, write_jsonl, write_json, window_sweep_frame
from .examples import run_example1, run_example_2_1, run_example_3_1, ratio_sweep

logger = logging.getLogger(__name__)

DYNAMIC = {"dcre": dcre, "dcpe": dcpe, "dcri": dcri, "dcpi": dcpi}
INTERVAL = {"icre": icre, "icpe": icpe, "icri": icri, "icpi": icpi, "interval_inaccuracy": interval_inaccuracy}
SINGLE_ARG = {"dcre", "dcpe", "icre", "icpe"}


@dataclass
class VerifyOutcome:
    """Reports from the canonical bindings and the seeded sweeps."""
    canonical: List[PropositionReport]
    sweep: List[PropositionReport]
    window_rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def reports(self) -> List[PropositionReport]:
        return self.canonical + self.sweep

    def failures(self) -> List[PropositionReport]:
        """Failed core entries; exploratory entries never count."""
        counted = set(core_ids())
        return [r for r in self.reports if r.status == "failed" and r.proposition_id in counted]

    def summary(self) -> pd.DataFrame:
        rows: Dict[str, Dict[str, Any]] = {}
        for r in self.reports:
            row = rows.setdefault(r.proposition_id, {
                "proposition_id": r.proposition_id, "passed": 0, "failed": 0, "precondition_failed": 0,
            })
            row[r.status] += 1
        return pd.DataFrame(list(rows.values()), columns=["proposition_id", "passed", "failed", "precondition_failed"])


class MeasureRunner:
    """
    Resolves distributions from a RunConfig and runs one command's worth of work.
    """

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.quadrature = cfg.quadrature
        self._handles: Dict[str, DistributionHandle] = {}

    def _handle(self, name: Optional[str]) -> Optional[DistributionHandle]:
        if name is None:
            return None
        if name not in self._handles:
            self._handles[name] = self.cfg.distribution(name)
        return self._handles[name]

    @property
    def x(self) -> DistributionHandle:
        handle = self._handle(self.cfg.x)
        if handle is None:
            raise ConfigError("config does not name distribution 'x'")
        return handle

    @property
    def y(self) -> Optional[DistributionHandle]:
        return self._handle(self.cfg.y)

    def harness_config(self) -> HarnessConfig:
        return HarnessConfig(tol=self.cfg.tol, quadrature=self.quadrature)

    # ------------------------------------------------------------------
    # measure
    # ------------------------------------------------------------------
    def _needs_y(self, name: str) -> Optional[DistributionHandle]:
        if name in SINGLE_ARG:
            return None
        if self.y is None:
            raise ConfigError(f"measure '{name}' needs a second distribution 'y'")
        return self.y

    def run_measure(self) -> List[MeasureValue]:
        """Evaluate every configured measure; dynamic ones at each time, interval ones on the window."""
        if not self.cfg.measures:
            raise ConfigError("no measures configured")
        out: List[MeasureValue] = []
        for name in self.cfg.measures:
            if name in DYNAMIC:
                if not self.cfg.times:
                    raise ConfigError(f"measure '{name}' needs 'times'")
                y = self._needs_y(name)
                for t in self.cfg.times:
                    args = (self.x, t) if y is None else (self.x, y, t)
                    out.append(DYNAMIC[name](*args, self.quadrature))
            elif name in INTERVAL:
                window = self.cfg.truncation_window()
                if window is None:
                    raise ConfigError(f"measure '{name}' needs a 'window'")
                y = self._needs_y(name)
                args = (self.x, window) if y is None else (self.x, y, window)
                out.append(INTERVAL[name](*args, self.quadrature))
            else:
                out.append(measure_by_name(name, self.x, self.y, self.quadrature))
        return out

    # ------------------------------------------------------------------
    # curve
    # ------------------------------------------------------------------
    def run_curve(self) -> Dict[str, DynamicMeasureCurve]:
        kinds = self.cfg.measures or ["dcri"]
        curves = {}
        for kind in kinds:
            if kind not in DYNAMIC:
                raise ConfigError(f"curve needs a dynamic measure (dcre, dcri, dcpe, dcpi), got '{kind}'")
            grid = self.cfg.times or self.cfg.grid
            curves[kind] = dynamic_curve(kind, self.x, self._needs_y(kind), grid, self.quadrature)
        return curves

    # ------------------------------------------------------------------
    # sweep
    # ------------------------------------------------------------------
    def run_sweep(self) -> pd.DataFrame:
        s = self.cfg.sweep
        return ratio_sweep(s.families, s.start, s.stop, s.step, self.quadrature)

    # ------------------------------------------------------------------
    # verify
    # ------------------------------------------------------------------
    def selected_ids(self) -> List[str]:
        ids: List[str] = []
        for pid in self.cfg.propositions:
            ids.extend(REGISTRY if pid == "all" else [resolve_id(pid)])
        return list(dict.fromkeys(ids))

    def run_verify(self, window_sweep: bool = False) -> VerifyOutcome:
        harness = self.harness_config()
        ids = self.selected_ids()
        canonical = []
        for pid in ids:
            if self.cfg.x is not None and self.cfg.y is not None:
                bindings = Bindings(self.x, self.y, self._handle(self.cfg.z), tuple(self.cfg.times),
                                    self.cfg.truncation_window(), dict(self.cfg.params))
            else:
                bindings = canonical_bindings(pid)
            canonical.append(run_proposition(pid, bindings, harness))
        sweep: List[PropositionReport] = []
        for seed in self.cfg.seed_list():
            sweep.extend(randomized_sweep(ids, self.cfg.trials, seed, harness))
        outcome = VerifyOutcome(canonical, sweep)
        if window_sweep:
            outcome.window_rows = self.window_sweep()
        return outcome

    def window_sweep(self) -> List[Dict[str, Any]]:
        """icri and icpi over a (t1, t2) grid in the window domain."""
        x = self.x if self.cfg.x else canonical_bindings("T4.1").x
        y = self.y if self.cfg.y else canonical_bindings("T4.1").y
        window = self.cfg.truncation_window() or TruncationWindow(0.5, 2.0)
        hi = window.t2 if np.isfinite(window.t2) else 2.0 * window.t1 + 1.0
        points = np.linspace(0.0, hi, self.cfg.window_grid + 1)[1:]
        rows = []
        for i, t1 in enumerate(points):
            for t2 in points[i + 1:]:
                w = TruncationWindow(float(t1), float(t2))
                if not all(w.validity(x, y).values()):
                    continue
                for name, fn in (("icri", icri), ("icpi", icpi)):
                    try:
                        mv = fn(x, y, w, self.quadrature)
                    except DomainError as exc:
                        logger.debug("window (%g, %g) skipped for %s: %s", t1, t2, name, exc)
                        continue
                    rows.append({"t1": float(t1), "t2": float(t2), "measure": name,
                                 "value": mv.value, "diverged": mv.diverged})
        return rows

    # ------------------------------------------------------------------
    # reproduce
    # ------------------------------------------------------------------
    def run_reproduce(self, example: str, output_dir: Path) -> Dict[str, Path]:
        output_dir = Path(output_dir)
        paths: Dict[str, Path] = {}
        if example == "example1":
            result = run_example1(self.quadrature)
            paths["example1"] = write_json(result.to_dict(), output_dir / "example1.json")
            paths["example1_table"] = write_csv(result.to_frame(), output_dir / "example1_table.csv")
            return paths
        if example in ("example2.1", "fig2"):
            curves = run_example_2_1(self.quadrature)
        elif example in ("example3.1", "fig3"):
            curves = run_example_3_1(self.quadrature)
        elif example == "fig1":
            s = self.cfg.sweep
            frame = ratio_sweep(s.families, s.start, s.stop, s.step, self.quadrature)
            paths["fig1"] = write_csv(frame, output_dir / "fig1_ratio_sweep.csv")
            return paths
        else:
            raise ConfigError(f"unknown example '{example}'")
        stem = example.replace(".", "_")
        paths[f"{stem}_curves"] = write_csv(curves.to_frame(), output_dir / f"{stem}_curves.csv")
        paths[f"{stem}_verdicts"] = write_json(curves.summary(), output_dir / f"{stem}_verdicts.json")
        return paths

    # ------------------------------------------------------------------
    # export
    # ------------------------------------------------------------------
    def export_verify(self, outcome: VerifyOutcome, output_dir: Path) -> Dict[str, Path]:
        output_dir = Path(output_dir)
        paths = {
            "reports": write_jsonl((r.to_dict() for r in outcome.reports), output_dir / "verify_reports.jsonl"),
            "summary": write_csv(outcome.summary(), output_dir / "verify_summary.csv"),
        }
        if outcome.window_rows:
            paths["window_sweep"] = write_csv(window_sweep_frame(outcome.window_rows), output_dir / "window_sweep.csv")
        return paths

    def export_curves(self, curves: Dict[str, DynamicMeasureCurve], output_dir: Path) -> Dict[str, Path]:
        output_dir = Path(output_dir)
        return {kind: write_csv(curve.to_frame(), output_dir / f"curve_{kind}.csv") for kind, curve in curves.items()}
