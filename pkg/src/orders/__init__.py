"""Stochastic order certificates, the proposition registry and randomized sweeps."""

from .certificates import OrderCertificate, AgeingCertificate, certify_order, certify_ageing
from .registry import (
    Bindings, HarnessConfig, Proposition, REGISTRY, ALIASES, CANONICAL, core_ids, resolve_id,
    run_proposition, canonical_bindings, quadratic_map, reflection_map,
)
from .sweep import randomized_sweep, summarize

__all__ = [
    "OrderCertificate",
    "AgeingCertificate",
    "certify_order",
    "certify_ageing",
    "Bindings",
    "HarnessConfig",
    "Proposition",
    "REGISTRY",
    "ALIASES",
    "CANONICAL",
    "core_ids",
    "resolve_id",
    "run_proposition",
    "canonical_bindings",
    "quadratic_map",
    "reflection_map",
    "randomized_sweep",
    "summarize",
]
