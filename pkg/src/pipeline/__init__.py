"""Pipeline orchestration for measure, curve, sweep, verify and reproduce runs."""

from .runner import MeasureRunner, VerifyOutcome
from .examples import (
    EULER_GAMMA, PRINTED_LAMBDA, EXAMPLE1_PRINTED, Example1Result, ExampleCurves, example1_equation, run_example1,
    example_2_1_pair, example_2_1_printed, example_3_1_pair, example_3_1_display, run_example_2_1, run_example_3_1,
    ratio_sweep, shape_values,
)

__all__ = [
    "MeasureRunner",
    "VerifyOutcome",
    "EULER_GAMMA",
    "PRINTED_LAMBDA",
    "EXAMPLE1_PRINTED",
    "Example1Result",
    "ExampleCurves",
    "example1_equation",
    "run_example1",
    "example_2_1_pair",
    "example_2_1_printed",
    "example_3_1_pair",
    "example_3_1_display",
    "run_example_2_1",
    "run_example_3_1",
    "ratio_sweep",
    "shape_values",
]
