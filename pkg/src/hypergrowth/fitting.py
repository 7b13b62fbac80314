"""Hyperbolic growth fitting.

The model is S(t) = (a - k*t)^-1 with a, k > 0, so the reciprocal
1/S(t) = a - k*t is a straight line decreasing in time. Fitting is
ordinary least squares of the reciprocal values on the year over a fit
window. The blow-up (singularity) year is a/k, where the fitted line
crosses zero.

Years around 1900 combined with slopes around 1e-5 make the raw normal
equations poorly conditioned, so the regression is computed on years
centered at the window midpoint and de-centered afterwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AtSingularityError,
    FitTooFewPointsError,
    NonDecreasingLineError,
    YearNotObservedError,
)
from .series import GrowthSeries, Window


@dataclass(frozen=True)
class LineFit:
    """Unconstrained least-squares line y = intercept + slope * t.

    ``rmse`` is the root mean square residual (divided by n, not n - 2);
    standard errors use the usual n - 2 denominator and are None when
    there are no residual degrees of freedom.
    """

    slope: float
    intercept: float
    rmse: float
    r2: float
    se_slope: float | None
    se_intercept: float | None
    n: int


def fit_line(years, values, center: float = 0.0) -> LineFit:
    """OLS line fit with internal centering of the regressor.

    Args:
        years: regressor values (calendar years).
        values: response values (reciprocal GDP).
        center: subtracted from the years before solving the normal
            equations; the returned slope/intercept are de-centered.
    """
    x = np.asarray(years, dtype=float)
    y = np.asarray(values, dtype=float)
    n = x.size
    if n < 2:
        raise FitTooFewPointsError(f"line fit needs at least 2 points, got {n}")

    xc = x - center
    xbar = float(xc.mean())
    ybar = float(y.mean())
    sxx = float(np.sum((xc - xbar) ** 2))
    if sxx == 0.0:
        raise FitTooFewPointsError("line fit needs at least 2 distinct years")
    sxy = float(np.sum((xc - xbar) * (y - ybar)))
    slope = sxy / sxx
    alpha = ybar - slope * xbar          # intercept in centered coordinates
    intercept = alpha - slope * center   # de-centered

    resid = y - (alpha + slope * xc)
    ssr = float(np.sum(resid**2))
    sst = float(np.sum((y - ybar) ** 2))
    rmse = math.sqrt(ssr / n)
    r2 = 1.0 if sst == 0.0 else 1.0 - ssr / sst

    if n > 2:
        s2 = ssr / (n - 2)
        se_slope = math.sqrt(s2 / sxx)
        # variance of the de-centered intercept at t = 0
        xbar_raw = float(x.mean())
        se_intercept = math.sqrt(s2 * (1.0 / n + xbar_raw**2 / sxx))
    else:
        se_slope = None
        se_intercept = None

    return LineFit(
        slope=slope,
        intercept=intercept,
        rmse=rmse,
        r2=r2,
        se_slope=se_slope,
        se_intercept=se_intercept,
        n=n,
    )


@dataclass(frozen=True)
class HyperbolicFit:
    """Accepted hyperbolic fit: a, k > 0, reciprocal line a - k*t.

    a is in 1/billions, k in 1/billions per year. rmse_reciprocal and
    r2_reciprocal are diagnostics of the reciprocal-space line over the
    fit window.
    """

    a: float
    k: float
    fit_window: Window
    n_points: int
    rmse_reciprocal: float
    r2_reciprocal: float
    se_a: float | None
    se_k: float | None

    def line_value(self, t: float) -> float:
        """Fitted reciprocal line a - k*t (may be <= 0 past the blow-up)."""
        return self.a - self.k * t


@dataclass(frozen=True)
class FitDiagnostics:
    """Per-year residual table for an accepted fit.

    Each row is (year, raw reciprocal residual, normalized residual,
    relative GDP deviation). Raw residual is observed minus fitted in
    reciprocal space; normalized divides by the in-window rmse (0 by
    convention when rmse is 0). Rows exist only at observed years where
    the fitted line is positive.
    """

    rows: tuple[tuple[float, float, float, float], ...]

    @property
    def years(self) -> tuple[float, ...]:
        return tuple(r[0] for r in self.rows)


def fit_hyperbolic(s: GrowthSeries, w: Window) -> HyperbolicFit:
    """Fit the hyperbolic model on the points of ``s`` inside ``w``.

    Least squares of 1/value on year; a is the intercept and k the
    magnitude of the downward slope. Raises FitTooFewPointsError with
    fewer than 3 in-window points and NonDecreasingLineError when the
    fitted slope is >= 0 (the series is not hyperbolic-growth-like on
    this window).
    """
    sel = [(y, v) for y, v in s.points if w.contains(y)]
    if len(sel) < 3:
        raise FitTooFewPointsError(
            f"series {s.label!r}: {len(sel)} point(s) in [{w.t0:g}, {w.t1:g}], need 3"
        )
    years = [y for y, _ in sel]
    recip = [1.0 / v for _, v in sel]
    line = fit_line(years, recip, center=(w.t0 + w.t1) / 2.0)
    if line.slope >= 0.0:
        raise NonDecreasingLineError(
            f"series {s.label!r}: reciprocal slope {line.slope:.3e} is not negative "
            f"on [{w.t0:g}, {w.t1:g}]"
        )
    # exactly collinear input leaves float noise in the residuals; snap it
    # to the genuine perfect-fit case so the rmse-0 conventions apply
    rmse = line.rmse if line.rmse > 1e-13 * max(recip) else 0.0
    return HyperbolicFit(
        a=line.intercept,
        k=-line.slope,
        fit_window=w,
        n_points=len(sel),
        rmse_reciprocal=rmse,
        r2_reciprocal=line.r2,
        se_a=line.se_intercept,
        se_k=line.se_slope,
    )


def model_value(f: HyperbolicFit, t: float) -> float:
    """Model GDP (a - k*t)^-1 at year t; defined only below the blow-up."""
    denom = f.a - f.k * t
    if denom <= 0.0:
        raise AtSingularityError(
            f"year {t:g} is at or beyond the singularity {singularity(f):.1f}"
        )
    return 1.0 / denom


def singularity(f: HyperbolicFit) -> float:
    """Blow-up year a/k where the fitted reciprocal line reaches zero."""
    return f.a / f.k


def percent_deviation(f: HyperbolicFit, s: GrowthSeries, t: float) -> float:
    """Relative gap between the observed and fitted GDP at year t.

    Returns 100 * (observed - model) / model; positive means the data
    sit above the fitted curve. The year must be observed in ``s`` and
    lie strictly below the singularity.
    """
    observed = s.value_at(t)
    if observed is None:
        raise YearNotObservedError(f"series {s.label!r}: year {t:g} not observed")
    return 100.0 * (observed - model_value(f, t)) / model_value(f, t)


def goodness(f: HyperbolicFit, s: GrowthSeries) -> FitDiagnostics:
    """Residual diagnostics at every observed year with a positive line."""
    rows = []
    for y, v in s.points:
        line = f.line_value(y)
        if line <= 0.0:
            continue
        raw = 1.0 / v - line
        normalized = 0.0 if f.rmse_reciprocal == 0.0 else raw / f.rmse_reciprocal
        model = 1.0 / line
        rows.append((y, raw, normalized, (v - model) / model))
    return FitDiagnostics(rows=tuple(rows))
