"""Regime hypothesis tests on fitted hyperbolic trajectories.

Four questions, each answered from reciprocal-space residuals:

* diversion: after the fit window, do the data leave the fitted line
  for good? Residuals persistently above the line (in units of the
  in-window rmse) mean growth slower than the hyperbola; persistently
  below mean faster.
* takeoff: inside a candidate acceleration window, is there a
  persistent downward break of the reciprocal values below the line?
* stagnation: on an early window, do the data look like a flat mean
  with fluctuations rather than a decreasing reciprocal line?
* segment consistency: do per-segment reciprocal slopes across claimed
  regime boundaries differ by more than their joint standard error?

Persistence means "this year and every later evaluable year exceed the
threshold", not a run count: sparse pre-industrial spacing makes run
counts meaningless, and a permanent break is what the tests are after.
Years past the fitted line's zero crossing are not evaluable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    NoPointsAfterWindowError,
    NoPointsInWindowError,
    SegmentTooSparseError,
    WindowTooFewPointsError,
)
from .fitting import HyperbolicFit, fit_line, singularity
from .series import GrowthSeries, Window

DEFAULT_KAPPA = 3.0
DEFAULT_TAKEOFF_WINDOW = Window(1760.0, 1840.0)
DEFAULT_STAGNATION_WINDOW = Window(1.0, 1750.0)
DEFAULT_SEGMENT_BOUNDARIES = (1750.0, 1870.0)
DEFAULT_SEGMENT_WINDOW = Window(1500.0, 1900.0)

# Fallback exceedance tolerance when the in-window rmse is exactly 0.
ABSOLUTE_RESIDUAL_TOLERANCE = 1e-9

Z_CRITICAL = 1.96
MONOTONE_THRESHOLD = 0.75


@dataclass(frozen=True)
class DiversionReport:
    diversion_year: float | None
    direction: str  # "slower" | "faster" | "none"
    bypass_years: float | None
    threshold_kappa: float
    evaluable_until: float


@dataclass(frozen=True)
class TakeoffReport:
    window: Window
    found: bool
    onset_year: float | None
    max_negative_normalized_residual: float


@dataclass(frozen=True)
class StagnationVerdict:
    window: Window
    runs_test_z: float
    n_sign_changes: int
    monotone_fraction: float
    rmse_constant_model: float
    rmse_hyperbolic_model: float
    verdict: str  # "stagnation-consistent" | "hyperbolic-consistent" | "inconclusive"


@dataclass(frozen=True)
class SegmentSlope:
    t0: float
    t1: float
    k: float
    se: float | None
    n: int


@dataclass(frozen=True)
class SegmentReport:
    boundaries: tuple[float, ...]
    segments: tuple[SegmentSlope, ...]
    z_scores: tuple[tuple[int, int, float], ...]
    verdict: str  # "single-line-consistent" | "segmented"


def _normalized_residuals(
    f: HyperbolicFit, points: list[tuple[float, float]]
) -> list[tuple[float, float]]:
    """(year, residual / rmse) at points where the fitted line is positive.

    With a perfect fit (rmse 0) the residuals are scaled so that the
    kappa comparison degenerates to an absolute tolerance of
    ABSOLUTE_RESIDUAL_TOLERANCE per unit of kappa.
    """
    rows = []
    for y, v in points:
        line = f.line_value(y)
        if line <= 0.0:
            continue
        raw = 1.0 / v - line
        if f.rmse_reciprocal > 0.0:
            rows.append((y, raw / f.rmse_reciprocal))
        else:
            rows.append((y, raw / ABSOLUTE_RESIDUAL_TOLERANCE))
    return rows


def _persistent_onset(flags: list[bool]) -> int | None:
    """Index of the earliest True followed only by True, else None."""
    onset = None
    for i in range(len(flags) - 1, -1, -1):
        if not flags[i]:
            break
        onset = i
    return onset


def detect_diversion(
    f: HyperbolicFit, s: GrowthSeries, kappa: float = DEFAULT_KAPPA
) -> DiversionReport:
    """Scan past the fit window for a persistent departure from the line.

    The diversion year is the earliest observed year after the window
    whose normalized residual exceeds kappa with every later evaluable
    year exceeding too. Positive exceedance (reciprocals above the
    line, GDP below the hyperbola) is direction "slower"; the symmetric
    negative rule gives "faster". bypass_years is the gap between the
    fitted blow-up year a/k and the diversion year.
    """
    post = [(y, v) for y, v in s.points if y > f.fit_window.t1]
    if not post:
        raise NoPointsAfterWindowError(
            f"series {s.label!r}: no observed years after {f.fit_window.t1:g}"
        )
    rows = _normalized_residuals(f, post)
    evaluable_until = rows[-1][0] if rows else f.fit_window.t1

    direction = "none"
    onset_year: float | None = None
    pos = _persistent_onset([rho > kappa for _, rho in rows])
    neg = _persistent_onset([rho < -kappa for _, rho in rows])
    if pos is not None:
        direction = "slower"
        onset_year = rows[pos][0]
    elif neg is not None:
        direction = "faster"
        onset_year = rows[neg][0]

    return DiversionReport(
        diversion_year=onset_year,
        direction=direction,
        bypass_years=None if onset_year is None else singularity(f) - onset_year,
        threshold_kappa=kappa,
        evaluable_until=evaluable_until,
    )


def takeoff_scan(
    f: HyperbolicFit,
    s: GrowthSeries,
    w: Window = DEFAULT_TAKEOFF_WINDOW,
    kappa: float = DEFAULT_KAPPA,
) -> TakeoffReport:
    """Look for a persistent downward break of the reciprocals in ``w``.

    A takeoff (abrupt acceleration of growth) would push reciprocal
    values below the fitted line; found is True only when some observed
    year in the window sits below -kappa and every later in-window year
    does too. The extreme negative normalized residual is reported
    either way.
    """
    in_w = [(y, v) for y, v in s.points if w.contains(y)]
    if not in_w:
        raise NoPointsInWindowError(
            f"series {s.label!r}: no observed years in [{w.t0:g}, {w.t1:g}]"
        )
    rows = _normalized_residuals(f, in_w)
    if not rows:
        raise NoPointsInWindowError(
            f"series {s.label!r}: fitted line not positive anywhere in "
            f"[{w.t0:g}, {w.t1:g}]"
        )
    onset = _persistent_onset([rho < -kappa for _, rho in rows])
    return TakeoffReport(
        window=w,
        found=onset is not None,
        onset_year=None if onset is None else rows[onset][0],
        max_negative_normalized_residual=min(rho for _, rho in rows),
    )


def runs_test_z(residuals: list[float]) -> tuple[float, int]:
    """Wald-Wolfowitz runs test on residual signs, normal approximation.

    Returns (z, number of sign changes). Zero residuals are excluded.
    Degenerate sign sequences (all one sign, or fewer than 2 signed
    residuals) return z = 0.
    """
    signs = [r > 0 for r in residuals if r != 0.0]
    n = len(signs)
    if n < 2:
        return 0.0, 0
    runs = 1 + sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    n_pos = sum(signs)
    n_neg = n - n_pos
    if n_pos == 0 or n_neg == 0:
        return 0.0, runs - 1
    mu = 2.0 * n_pos * n_neg / n + 1.0
    var = 2.0 * n_pos * n_neg * (2.0 * n_pos * n_neg - n) / (n**2 * (n - 1.0))
    if var <= 0.0:
        return 0.0, runs - 1
    return (runs - mu) / math.sqrt(var), runs - 1


def stagnation_test(
    s: GrowthSeries, w: Window = DEFAULT_STAGNATION_WINDOW
) -> StagnationVerdict:
    """Test a window for stagnation versus hyperbolic growth.

    Compares a constant-mean model of the reciprocals against a
    decreasing line, and measures how consistently GDP increases
    between consecutive observations. When the least-squares line is
    not decreasing, the best admissible "hyperbolic" model degenerates
    to the constant mean, so its rmse equals the constant model's and
    the verdict falls to stagnation-consistent.

    Verdict rule: hyperbolic-consistent needs the decreasing line to
    beat the constant model and a monotone fraction of at least 0.75
    (sparse millennium-scale series may legitimately contain one early
    decline); stagnation-consistent is the complement; inconclusive is
    reserved for degenerate comparisons.
    """
    sel = [(y, v) for y, v in s.points if w.contains(y)]
    if len(sel) < 4:
        raise WindowTooFewPointsError(
            f"series {s.label!r}: {len(sel)} point(s) in [{w.t0:g}, {w.t1:g}], need 4"
        )
    years = [y for y, _ in sel]
    recip = [1.0 / v for _, v in sel]
    n = len(recip)

    mean = sum(recip) / n
    rmse_constant = math.sqrt(sum((r - mean) ** 2 for r in recip) / n)

    line = fit_line(years, recip, center=(w.t0 + w.t1) / 2.0)
    if line.slope < 0.0:
        rmse_hyperbolic = line.rmse
        residuals = [r - (line.intercept + line.slope * y) for y, r in zip(years, recip)]
    else:
        rmse_hyperbolic = rmse_constant
        residuals = [r - mean for r in recip]

    z, n_changes = runs_test_z(residuals)

    values = [v for _, v in sel]
    increases = sum(1 for a, b in zip(values, values[1:]) if b > a)
    monotone_fraction = increases / (n - 1)

    if rmse_constant <= rmse_hyperbolic or monotone_fraction < MONOTONE_THRESHOLD:
        verdict = "stagnation-consistent"
    elif rmse_hyperbolic < rmse_constant and monotone_fraction >= MONOTONE_THRESHOLD:
        verdict = "hyperbolic-consistent"
    else:
        verdict = "inconclusive"

    return StagnationVerdict(
        window=w,
        runs_test_z=z,
        n_sign_changes=n_changes,
        monotone_fraction=monotone_fraction,
        rmse_constant_model=rmse_constant,
        rmse_hyperbolic_model=rmse_hyperbolic,
        verdict=verdict,
    )


def segment_consistency(
    s: GrowthSeries,
    boundaries: tuple[float, ...] = DEFAULT_SEGMENT_BOUNDARIES,
    w: Window = DEFAULT_SEGMENT_WINDOW,
) -> SegmentReport:
    """Compare reciprocal-line slopes across claimed regime boundaries.

    The window is split at the boundaries into half-open segments (the
    last one closed). Each segment gets its own line fit; adjacent
    segments with at least 3 points on both sides are compared with
    z = |k_i - k_j| / sqrt(se_i^2 + se_j^2). The verdict is
    single-line-consistent when every defined z stays below 1.96.
    """
    cuts = sorted(b for b in boundaries if w.t0 < b < w.t1)
    edges = [w.t0, *cuts, w.t1]
    in_w = [(y, v) for y, v in s.points if w.contains(y)]

    segments: list[SegmentSlope] = []
    for i, (lo, hi) in enumerate(zip(edges, edges[1:])):
        last = i == len(edges) - 2
        pts = [(y, v) for y, v in in_w if lo <= y < hi or (last and y == hi)]
        if len(pts) < 2:
            raise SegmentTooSparseError(
                f"series {s.label!r}: segment [{lo:g}, {hi:g}"
                f"{']' if last else ')'} has {len(pts)} point(s), need 2"
            )
        recip = [1.0 / v for _, v in pts]
        line = fit_line([y for y, _ in pts], recip, center=(lo + hi) / 2.0)
        # collinear segments leave float noise in the slope se; snap to the
        # exact-fit case so the z-score comparison stays meaningful
        se = line.se_slope
        if se is not None and line.rmse <= 1e-13 * max(recip):
            se = 0.0
        segments.append(
            SegmentSlope(t0=lo, t1=hi, k=-line.slope, se=se, n=len(pts))
        )

    z_scores: list[tuple[int, int, float]] = []
    for i in range(len(segments) - 1):
        a, b = segments[i], segments[i + 1]
        if a.n < 3 or b.n < 3:
            continue
        delta = abs(a.k - b.k)
        denom = math.sqrt((a.se or 0.0) ** 2 + (b.se or 0.0) ** 2)
        if denom == 0.0:
            # exact per-segment fits: identical slopes are consistent,
            # different slopes are an unambiguous break
            z = 0.0 if delta <= 1e-12 * max(1.0, abs(a.k), abs(b.k)) else math.inf
        else:
            z = delta / denom
        z_scores.append((i, i + 1, z))

    verdict = (
        "single-line-consistent"
        if all(z < Z_CRITICAL for _, _, z in z_scores)
        else "segmented"
    )
    return SegmentReport(
        boundaries=tuple(cuts),
        segments=tuple(segments),
        z_scores=tuple(z_scores),
        verdict=verdict,
    )
