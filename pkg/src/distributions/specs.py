"""
Declarative distribution specifications (pydantic models).

JSON forms accepted by ``parse_spec``::

    {"family": "weibull", "params": [1, 2]}
    {"piecewise_survival": {"breakpoints": [...], "segments": [...]}}
    {"piecewise_cdf": {"breakpoints": [...], "segments": [...]}}
    {"empirical": [0.3, 1.2, 2.5]}
"""
from __future__ import annotations

import math
from typing import Any, Dict, List, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.errors import ConfigError

Family = Literal["exponential", "weibull", "gamma", "erlang", "pareto1", "uniform", "smoothstep"]

# name of each positional parameter, per family
FAMILY_PARAMS: Dict[str, tuple] = {
    "exponential": ("rate",),
    "weibull": ("scale", "shape"),
    "gamma": ("scale", "shape"),
    "erlang": ("k", "rate"),
    "pareto1": ("alpha", "scale"),
    "uniform": ("lo", "hi"),
    "smoothstep": ("lo", "hi"),
}


class ParametricSpec(BaseModel):
    """Closed-form family with positional parameters."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    family: Family
    params: List[float] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_params(self) -> "ParametricSpec":
        names = FAMILY_PARAMS[self.family]
        params = list(self.params)
        if self.family == "pareto1":
            if len(params) > 2:
                raise ValueError("pareto1 takes at most 2 params (alpha, scale)")
        elif len(params) != len(names):
            raise ValueError(f"{self.family} expects params {list(names)}, got {len(params)} values")
        for name, value in zip(names, params):
            if not math.isfinite(value):
                raise ValueError(f"{self.family} param '{name}' must be finite")
        if self.family in ("uniform", "smoothstep"):
            lo, hi = params
            if lo < 0:
                raise ValueError(f"{self.family} param 'lo' must be >= 0, got {lo}")
            if not hi > lo:
                raise ValueError(f"{self.family} param 'hi' must exceed 'lo', got {hi} <= {lo}")
        else:
            for name, value in zip(names, params):
                if value <= 0:
                    raise ValueError(f"{self.family} param '{name}' must be > 0, got {value}")
        if self.family == "erlang" and float(params[0]) != int(params[0]):
            raise ValueError(f"erlang param 'k' must be a positive integer, got {params[0]}")
        return self

    def param(self, name: str, default: float | None = None) -> float:
        names = FAMILY_PARAMS[self.family]
        idx = names.index(name)
        if idx < len(self.params):
            return float(self.params[idx])
        if default is None:
            raise KeyError(name)
        return default

    @property
    def label(self) -> str:
        args = ",".join(f"{p:g}" for p in self.params)
        return f"{self.family}({args})"


class Segment(BaseModel):
    """
    One piece of a piecewise function.

    constant:  c
    exp_power: c * exp(a + b * x**p)
    power:     c * x**p
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["constant", "exp_power", "power"]
    c: float = 1.0
    a: float = 0.0
    b: float = 0.0
    p: float = 1.0

    def value(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.kind == "constant":
            return np.full_like(x, self.c)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            if self.kind == "exp_power":
                return self.c * np.exp(self.a + self.b * np.power(x, self.p))
            return self.c * np.power(x, self.p)

    def log_value(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            log_c = np.log(self.c) if self.c > 0 else -np.inf
            if self.kind == "constant":
                return np.full_like(x, log_c)
            if self.kind == "exp_power":
                return log_c + self.a + self.b * np.power(x, self.p)
            return log_c + self.p * np.log(x)

    def derivative(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.kind == "constant":
            return np.zeros_like(x)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            if self.kind == "exp_power":
                inner = self.b * self.p * np.power(x, self.p - 1.0)
                return self.value(x) * inner
            return self.c * self.p * np.power(x, self.p - 1.0)


class PiecewiseSpec(BaseModel):
    """
    Survival (or CDF) defined segment by segment.

    Segment i covers (breakpoints[i-1], breakpoints[i]]; the first starts
    at 0 and the last runs to infinity.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    breakpoints: List[float]
    segments: List[Segment]
    function: Literal["survival", "cdf"] = "survival"
    name: str | None = None
    allow_jumps: bool = False

    @field_validator("breakpoints")
    @classmethod
    def _increasing(cls, v: List[float]) -> List[float]:
        if any(b <= 0 or not math.isfinite(b) for b in v):
            raise ValueError("breakpoints must be finite and positive")
        if any(b2 <= b1 for b1, b2 in zip(v, v[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        return v

    @model_validator(mode="after")
    def _check_shape(self) -> "PiecewiseSpec":
        if len(self.segments) != len(self.breakpoints) + 1:
            raise ValueError(
                f"segments: need {len(self.breakpoints) + 1} segments for {len(self.breakpoints)} breakpoints"
            )
        start, end = (1.0, 0.0) if self.function == "survival" else (0.0, 1.0)
        if abs(self._eval(np.array([1e-300]))[0] - start) > 1e-9:
            raise ValueError(f"segments: {self.function} must start at {start:g} at x=0")
        last = self.segments[-1]
        tail = float(last.value(np.array([1e8]))[0])
        if abs(tail - end) > 1e-6:
            raise ValueError(f"segments: {self.function} must tend to {end:g}, last segment gives {tail:.6g}")
        if not self.allow_jumps:
            for i, b in enumerate(self.breakpoints):
                left = float(self.segments[i].value(np.array([b]))[0])
                right = float(self.segments[i + 1].value(np.array([b]))[0])
                if abs(left - right) > 1e-9:
                    raise ValueError(f"segments: discontinuity at breakpoint {b:g} ({left:.9g} vs {right:.9g})")
        self._check_monotone(start > end)
        return self

    def _check_monotone(self, decreasing: bool) -> None:
        edges = [0.0] + list(self.breakpoints) + [max(self.breakpoints[-1] * 4, 10.0) if self.breakpoints else 10.0]
        xs = np.unique(np.concatenate([np.linspace(lo, hi, 65)[1:] for lo, hi in zip(edges[:-1], edges[1:])]))
        vals = self._eval(xs)
        if np.any(vals < -1e-12) or np.any(vals > 1 + 1e-12):
            raise ValueError(f"segments: {self.function} leaves [0, 1]")
        steps = np.diff(vals)
        if (decreasing and np.any(steps > 1e-12)) or (not decreasing and np.any(steps < -1e-12)):
            raise ValueError(f"segments: {self.function} is not monotone")

    def segment_index(self, x: np.ndarray) -> np.ndarray:
        return np.searchsorted(np.asarray(self.breakpoints, dtype=float), x, side="left")

    def _apply(self, x, method: str) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        idx = self.segment_index(x)
        out = np.empty_like(x)
        for i, seg in enumerate(self.segments):
            mask = idx == i
            if mask.any():
                out[mask] = getattr(seg, method)(x[mask])
        return out

    def _eval(self, x) -> np.ndarray:
        return self._apply(x, "value")

    def log_eval(self, x) -> np.ndarray:
        return self._apply(x, "log_value")

    def derivative(self, x) -> np.ndarray:
        return self._apply(x, "derivative")

    def evaluate(self, x) -> np.ndarray:
        return self._eval(x)

    @property
    def label(self) -> str:
        return self.name or f"piecewise_{self.function}({len(self.segments)} segments)"


class EmpiricalSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    samples: List[float]
    name: str | None = None

    @field_validator("samples")
    @classmethod
    def _valid(cls, v: List[float]) -> List[float]:
        if len(v) < 2:
            raise ValueError("samples: need at least two observations")
        if any(s < 0 or not math.isfinite(s) for s in v):
            raise ValueError("samples: observations must be finite and nonnegative")
        if len(set(v)) < 2:
            raise ValueError("samples: need at least two distinct observations")
        return sorted(v)

    @property
    def label(self) -> str:
        return self.name or f"empirical(n={len(self.samples)})"


DistributionSpec = Union[ParametricSpec, PiecewiseSpec, EmpiricalSpec]


def parse_spec(obj: Any) -> DistributionSpec:
    """Build a spec model from its JSON form; raises ConfigError naming the field."""
    if isinstance(obj, (ParametricSpec, PiecewiseSpec, EmpiricalSpec)):
        return obj
    if not isinstance(obj, dict):
        raise ConfigError(f"distribution spec must be an object, got {type(obj).__name__}")
    try:
        if "family" in obj:
            return ParametricSpec(**obj)
        if "piecewise_survival" in obj:
            return PiecewiseSpec(function="survival", name=obj.get("name"), **obj["piecewise_survival"])
        if "piecewise_cdf" in obj:
            return PiecewiseSpec(function="cdf", name=obj.get("name"), **obj["piecewise_cdf"])
        if "empirical" in obj:
            return EmpiricalSpec(samples=obj["empirical"], name=obj.get("name"))
    except ValidationError as exc:
        raise ConfigError(f"invalid distribution spec: {exc}") from exc
    except TypeError as exc:
        raise ConfigError(f"invalid distribution spec: {exc}") from exc
    raise ConfigError(f"unrecognised distribution spec keys: {sorted(obj)}")
