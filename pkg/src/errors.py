"""
Exception hierarchy shared by every subpackage.

Divergent integrals are not errors: they surface as flags on
``IntegralResult`` / ``MeasureValue``.
"""
from __future__ import annotations


class InfoMeasureError(Exception):
    """Base class for all toolkit errors."""


class CapabilityError(InfoMeasureError):
    """The distribution lacks something the operation needs (density, finite mean)."""


class DomainError(InfoMeasureError):
    """Evaluation outside the evaluability region, e.g. survival(t) = 0."""


class WindowError(DomainError):
    """Truncation window outside the domain F(t1) < F(t2) of some distribution."""


class PreconditionError(InfoMeasureError):
    """Input too small or malformed for the requested analysis."""


class BracketingError(InfoMeasureError):
    """Root finder called without a sign change on the bracket."""


class QuadratureEvaluationError(InfoMeasureError):
    """Integrand returned a non-finite value at an interior node."""

    def __init__(self, location: float, value: float):
        self.location = location
        self.value = value
        super().__init__(f"non-finite integrand value {value!r} at x={location:.12g}")


class NonDifferentiableError(InfoMeasureError):
    """Derivative requested at a breakpoint of a piecewise distribution."""


class RegistryError(InfoMeasureError):
    """Unknown proposition identifier."""


class ConfigError(InfoMeasureError):
    """Invalid command-line or JSON configuration."""
