"""
Seeded randomized sweeps over the proposition registry.
"""
from __future__ import annotations

import logging
from typing import Iterable, List, Sequence

import numpy as np

from src.errors import InfoMeasureError
from src.measures import PropositionReport, precondition_report
from .registry import REGISTRY, HarnessConfig, resolve_id, run_proposition

logger = logging.getLogger(__name__)


def randomized_sweep(
    ids: Iterable[str] | str,
    n_trials: int,
    seed: int,
    cfg: HarnessConfig | None = None,
) -> List[PropositionReport]:
    """
    Run ``n_trials`` sampled bindings per proposition.

    Trial ``k`` of the proposition at registry position ``i`` draws from
    ``default_rng([seed, i, k])``, so reports do not depend on which other
    propositions were selected. Failures are sorted first, then by
    registry order and trial index.
    """
    if n_trials < 1:
        raise ValueError(f"n_trials must be at least 1, got {n_trials}")
    cfg = cfg or HarnessConfig()
    if isinstance(ids, str):
        ids = list(REGISTRY) if ids == "all" else [ids]
    selected: Sequence[str] = list(dict.fromkeys(resolve_id(pid) for pid in ids))
    positions = {pid: i for i, pid in enumerate(REGISTRY)}

    reports: List[PropositionReport] = []
    for pid in selected:
        entry = REGISTRY[pid]
        for trial in range(n_trials):
            rng = np.random.default_rng([seed, positions[pid], trial])
            try:
                bindings = entry.sampler(rng)
                report = run_proposition(pid, bindings, cfg)
            except InfoMeasureError as exc:
                logger.warning("%s trial %d discarded: %s", pid, trial, exc)
                report = precondition_report(pid, (), f"{type(exc).__name__}: {exc}")
            reports.append(report.with_trial(trial))
        logger.info("%s: %d trials done", pid, n_trials)
    return sorted(reports, key=lambda r: (r.status != "failed", positions[r.proposition_id], r.trial))


def summarize(reports: Iterable[PropositionReport]) -> dict:
    """Counts of passed / failed / precondition_failed per proposition."""
    out: dict = {}
    for r in reports:
        row = out.setdefault(r.proposition_id, {"passed": 0, "failed": 0, "precondition_failed": 0})
        row[r.status] += 1
    return out
