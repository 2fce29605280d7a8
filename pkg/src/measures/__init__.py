"""Static, dynamic and interval information measures."""

from .results import (
    MeasureValue, PropositionReport, identity_report, inequality_report, precondition_report, worst,
)
from .static import (
    shannon_entropy, kerridge_inaccuracy, kl_divergence, kl_divergence_equilibrium, cre, cpe, cri, cpi,
    crir, cpir, cumulative_hazard_integral, cumulative_reversed_hazard_integral, CumulativeHazardTransforms,
    cumulative_hazard_transforms, cri_as_expectation, cpi_as_expectation, equilibrium_identity_check,
    measure_by_name, PAIR_MEASURES, SINGLE_MEASURES,
)
from .dynamic import (
    dcre, dcri, dcpe, dcpi, dcri_derivative, dcri_derivative_printed, dcpi_derivative, central_difference,
    DynamicMeasureCurve, MonotonicityVerdict, dynamic_curve, classify_monotonicity,
    proportional_hazards_identity, proportional_reversed_hazards_identity, linear_transform_identity,
    symmetric_identity, tau2, dcpi_as_conditional_expectation, zt_identity,
)
from .interval import (
    TruncationWindow, GfrPair, generalized_failure_rates, interval_inaccuracy, icre, icpe, icri, icpi,
    icri_decomposition, icpi_decomposition, icri_partial_t1, icri_partial_t1_printed, icpi_partial_t2,
    monotone_transform_bounds, scale_identity,
)

__all__ = [
    "MeasureValue", "PropositionReport", "identity_report", "inequality_report", "precondition_report", "worst",
    "shannon_entropy", "kerridge_inaccuracy", "kl_divergence", "kl_divergence_equilibrium", "cre", "cpe",
    "cri", "cpi", "crir", "cpir", "cumulative_hazard_integral", "cumulative_reversed_hazard_integral",
    "CumulativeHazardTransforms", "cumulative_hazard_transforms", "cri_as_expectation", "cpi_as_expectation",
    "equilibrium_identity_check", "measure_by_name", "PAIR_MEASURES", "SINGLE_MEASURES",
    "dcre", "dcri", "dcpe", "dcpi", "dcri_derivative", "dcri_derivative_printed", "dcpi_derivative",
    "central_difference", "DynamicMeasureCurve", "MonotonicityVerdict", "dynamic_curve",
    "classify_monotonicity", "proportional_hazards_identity", "proportional_reversed_hazards_identity",
    "linear_transform_identity", "symmetric_identity", "tau2", "dcpi_as_conditional_expectation",
    "zt_identity",
    "TruncationWindow", "GfrPair", "generalized_failure_rates", "interval_inaccuracy", "icre", "icpe",
    "icri", "icpi", "icri_decomposition", "icpi_decomposition", "icri_partial_t1", "icri_partial_t1_printed",
    "icpi_partial_t2", "monotone_transform_bounds", "scale_identity",
]
