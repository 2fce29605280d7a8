"""Distribution handles, constructors, combinators and reliability functionals."""

from .handle import DistributionHandle
from .specs import ParametricSpec, PiecewiseSpec, EmpiricalSpec, Segment, DistributionSpec, parse_spec
from .catalogue import (
    make_distribution, from_scipy, exponential, weibull, gamma, erlang, pareto1, uniform, smoothstep,
)
from .functionals import (
    TruncationWindow, GfrPair, hazard_rate, reversed_hazard_rate, mean_residual_life,
    mean_inactivity_time, truncated_mean, general_conditional_mean, generalized_failure_rates, gfr, second_moment,
)
from .transforms import MonotoneMap, equilibrium, affine, power_survival, power_cdf, monotone_image, mixture
from .grids import GridSpec, time_grid, effective_range, effective_upper, near_breakpoint

__all__ = [
    "DistributionHandle",
    "ParametricSpec",
    "PiecewiseSpec",
    "EmpiricalSpec",
    "Segment",
    "DistributionSpec",
    "parse_spec",
    "make_distribution",
    "from_scipy",
    "exponential",
    "weibull",
    "gamma",
    "erlang",
    "pareto1",
    "uniform",
    "smoothstep",
    "TruncationWindow",
    "GfrPair",
    "hazard_rate",
    "reversed_hazard_rate",
    "mean_residual_life",
    "mean_inactivity_time",
    "truncated_mean",
    "general_conditional_mean",
    "generalized_failure_rates",
    "gfr",
    "second_moment",
    "MonotoneMap",
    "equilibrium",
    "affine",
    "power_survival",
    "power_cdf",
    "monotone_image",
    "mixture",
    "GridSpec",
    "time_grid",
    "effective_range",
    "effective_upper",
    "near_breakpoint",
]
