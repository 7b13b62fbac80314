"""Seeded synthetic trajectory generators.

Used to validate the fitter and the regime detectors: hyperbolic series
must be recovered exactly, stagnation series must not be mistaken for
growth, and exponential/logistic series act as discriminant controls.
Noise is multiplicative lognormal so values stay positive, and every
draw comes from an explicit seeded generator stored in the ModelSpec.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AtSingularityError, ModelSpecError
from .series import GrowthSeries, new_series

KINDS = ("hyperbolic", "exponential", "logistic", "stagnation")

_REQUIRED_PARAMS = {
    "hyperbolic": ("a", "k"),
    "exponential": ("s0", "r"),
    "logistic": ("cap", "s0", "r"),
    "stagnation": ("mean", "amplitude", "period"),
}


@dataclass(frozen=True)
class ModelSpec:
    """Recipe for one synthetic GrowthSeries.

    params holds the model constants for the chosen kind:
    hyperbolic(a, k), exponential(s0, r), logistic(cap, s0, r),
    stagnation(mean, amplitude, period). sigma is the lognormal noise
    scale (0 for noiseless), and seed fixes the random stream.
    """

    kind: str
    params: dict[str, float]
    sample_years: tuple[float, ...]
    sigma: float = 0.0
    seed: int = 0
    label: str = field(default="")

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ModelSpecError(f"unknown model kind {self.kind!r}")
        for name in _REQUIRED_PARAMS[self.kind]:
            if name not in self.params:
                raise ModelSpecError(f"{self.kind} model: missing parameter {name!r}")
            if name != "amplitude" and not self.params[name] > 0:
                raise ModelSpecError(
                    f"{self.kind} model: parameter {name}={self.params[name]!r} "
                    "must be positive"
                )
        if self.kind == "stagnation":
            amp = self.params["amplitude"]
            if amp < 0 or amp >= self.params["mean"]:
                raise ModelSpecError(
                    "stagnation model: amplitude must satisfy 0 <= amplitude < mean"
                )
        if self.sigma < 0:
            raise ModelSpecError(f"sigma={self.sigma!r} must be >= 0")
        if len(self.sample_years) < 2:
            raise ModelSpecError("need at least 2 sample years")


def _clean_value(spec: ModelSpec, t: float) -> float:
    p = spec.params
    if spec.kind == "hyperbolic":
        denom = p["a"] - p["k"] * t
        if denom <= 0.0:
            raise AtSingularityError(
                f"sample year {t:g} is at or beyond the singularity "
                f"{p['a'] / p['k']:.1f}"
            )
        return 1.0 / denom
    if spec.kind == "exponential":
        return p["s0"] * math.exp(p["r"] * t)
    if spec.kind == "logistic":
        cap, s0, r = p["cap"], p["s0"], p["r"]
        e = math.exp(r * t)
        return cap * s0 * e / (cap + s0 * (e - 1.0))
    # stagnation
    return p["mean"] + p["amplitude"] * math.sin(2.0 * math.pi * t / p["period"])


def generate(spec: ModelSpec) -> GrowthSeries:
    """Evaluate the model at the sample years; deterministic given seed."""
    years = sorted(spec.sample_years)
    values = [_clean_value(spec, t) for t in years]
    if spec.sigma > 0.0:
        rng = np.random.default_rng(spec.seed)
        factors = np.exp(rng.normal(0.0, spec.sigma, size=len(values)))
        values = [v * f for v, f in zip(values, factors)]
    label = spec.label or f"synthetic-{spec.kind}"
    return new_series(zip(years, values), label=label)
