"""
Result records shared by the measure and proposition layers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Any, Dict, Iterable, Literal, Optional, Sequence, Tuple

from src.quadrature import IntegralResult

Status = Literal["passed", "failed", "precondition_failed"]


@dataclass(frozen=True)
class MeasureValue:
    """A named measure evaluated on named inputs; ``value`` is None when divergent."""
    name: str
    inputs: Tuple[str, ...]
    result: IntegralResult

    @property
    def value(self) -> Optional[float]:
        return None if self.result.diverged else self.result.value

    @property
    def diverged(self) -> bool:
        return self.result.diverged

    @property
    def error_estimate(self) -> float:
        return self.result.error_estimate

    def to_dict(self) -> Dict[str, Any]:
        return {
            "measure": self.name,
            "inputs": list(self.inputs),
            "value": self.value,
            "error_estimate": self.result.error_estimate,
            "converged": self.result.converged,
            "diverged": self.result.diverged,
        }


@dataclass(frozen=True)
class PropositionReport:
    """
    Outcome of checking one proposition on one set of bindings.

    For inequalities the claim is ``lhs >= rhs`` and ``margin = lhs - rhs``;
    for identities ``margin`` is the signed difference and ``passed``
    compares its magnitude to ``tolerance``.
    """
    proposition_id: str
    inputs: Tuple[str, ...]
    lhs: Optional[float]
    rhs: Optional[float]
    margin: Optional[float]
    passed: bool
    tolerance: float
    status: Status
    kind: Literal["identity", "inequality"] = "inequality"
    notes: str = ""
    trial: int = 0

    def with_trial(self, trial: int) -> "PropositionReport":
        return replace(self, trial=trial)

    def with_id(self, proposition_id: str) -> "PropositionReport":
        return replace(self, proposition_id=proposition_id)

    def with_note(self, note: str) -> "PropositionReport":
        notes = f"{self.notes}; {note}" if self.notes else note
        return replace(self, notes=notes)

    @property
    def slack(self) -> float:
        """Distance to failure in units of tolerance; lower is worse."""
        if self.margin is None:
            return math.inf
        if self.kind == "identity":
            return (self.tolerance - abs(self.margin)) / self.tolerance
        return (self.margin + self.tolerance) / self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "proposition_id": self.proposition_id,
            "trial": self.trial,
            "status": self.status,
            "passed": self.passed,
            "kind": self.kind,
            "inputs": list(self.inputs),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "notes": self.notes,
        }


def identity_report(pid: str, inputs: Sequence[str], lhs: float, rhs: float, tol: float, notes: str = "") -> PropositionReport:
    margin = lhs - rhs
    passed = abs(margin) <= tol
    return PropositionReport(
        pid, tuple(inputs), lhs, rhs, margin, passed, tol,
        "passed" if passed else "failed", "identity", notes,
    )


def inequality_report(pid: str, inputs: Sequence[str], lhs: float, rhs: float, tol: float, notes: str = "") -> PropositionReport:
    """Report for the claim lhs >= rhs."""
    margin = lhs - rhs
    passed = margin >= -tol
    return PropositionReport(
        pid, tuple(inputs), lhs, rhs, margin, passed, tol,
        "passed" if passed else "failed", "inequality", notes,
    )


def precondition_report(pid: str, inputs: Sequence[str], reason: str, tol: float = 0.0) -> PropositionReport:
    return PropositionReport(pid, tuple(inputs), None, None, None, False, tol, "precondition_failed", notes=reason)


def worst(reports: Iterable[PropositionReport], pid: Optional[str] = None) -> PropositionReport:
    """
    Collapse sub-checks into one report: any failure wins, then the
    smallest slack. Precondition failures only win when nothing was checked.
    """
    reports = list(reports)
    if not reports:
        raise ValueError("worst() needs at least one report")
    checked = [r for r in reports if r.status != "precondition_failed"]
    pool = checked or reports
    chosen = min(pool, key=lambda r: (r.passed, r.slack))
    skipped = [r.notes for r in reports if r.status == "precondition_failed" and r.notes]
    if checked and skipped:
        chosen = chosen.with_note("skipped: " + " | ".join(skipped))
    if len(checked) > 1:
        chosen = chosen.with_note(f"worst of {len(checked)} sub-checks")
    return chosen.with_id(pid) if pid else chosen
