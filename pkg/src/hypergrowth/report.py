"""End-to-end analysis of one regional series, and report serialization.

The machine report is a single JSON document with a fixed field order
and no timestamps, so two runs on the same input are byte-identical and
reports can be diffed as goldens. The human summary is a fixed-width
table for standard output.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from . import __version__
from .errors import HypergrowthError
from .fitting import HyperbolicFit, fit_hyperbolic, percent_deviation, singularity
from .regimes import (
    DEFAULT_KAPPA,
    DEFAULT_SEGMENT_BOUNDARIES,
    DEFAULT_STAGNATION_WINDOW,
    DEFAULT_TAKEOFF_WINDOW,
    detect_diversion,
    segment_consistency,
    stagnation_test,
    takeoff_scan,
)
from .series import GrowthSeries, Window

DEFAULT_FIT_WINDOW = Window(1500.0, 1900.0)
DEFAULT_PROBE_YEARS = (1.0, 1000.0)


@dataclass(frozen=True)
class AnalysisReport:
    """All analysis results for one series, as a plain nested dict."""

    data: dict

    def to_json(self) -> str:
        return json.dumps(self.data, indent=2, allow_nan=False) + "\n"

    def to_kv(self) -> str:
        """Flat key=value rendering of the same tree."""
        lines: list[str] = []

        def walk(prefix: str, node) -> None:
            if isinstance(node, dict):
                for key, value in node.items():
                    walk(f"{prefix}.{key}" if prefix else str(key), value)
            elif isinstance(node, (list, tuple)):
                for i, value in enumerate(node):
                    walk(f"{prefix}[{i}]", value)
            else:
                lines.append(f"{prefix}={json.dumps(node)}")

        walk("", self.data)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls(data=json.loads(text))


def file_digest(raw: bytes) -> str:
    return hashlib.sha256(raw).hexdigest()


def _finite(x: float | None) -> float | str | None:
    """JSON-safe number: infinities become strings, None passes through."""
    if x is None:
        return None
    if x != x or x in (float("inf"), float("-inf")):
        return repr(x)
    return x


def analyze_series(
    s: GrowthSeries,
    fit_window: Window = DEFAULT_FIT_WINDOW,
    kappa: float = DEFAULT_KAPPA,
    boundaries: tuple[float, ...] = DEFAULT_SEGMENT_BOUNDARIES,
    probe_years: tuple[float, ...] = DEFAULT_PROBE_YEARS,
    takeoff_window: Window = DEFAULT_TAKEOFF_WINDOW,
    stagnation_window: Window = DEFAULT_STAGNATION_WINDOW,
    input_path: str = "",
    input_sha256: str = "",
) -> AnalysisReport:
    """Fit the series and run every regime test.

    The fit must succeed; individual regime tests whose preconditions
    fail (for example no observed years after the window) are recorded
    as skipped sections rather than aborting the report.
    """
    fit = fit_hyperbolic(s, fit_window)

    report = {
        "tool": {"name": "hypergrowth", "version": __version__},
        "input": {"path": input_path, "sha256": input_sha256},
        "series": {
            "label": s.label,
            "n_points": len(s),
            "first_year": s.points[0][0],
            "last_year": s.points[-1][0],
        },
        "fit": {
            "a": fit.a,
            "k": fit.k,
            "se_a": fit.se_a,
            "se_k": fit.se_k,
            "window": [fit_window.t0, fit_window.t1],
            "n_points": fit.n_points,
            "rmse_reciprocal": fit.rmse_reciprocal,
            "r2_reciprocal": fit.r2_reciprocal,
            "singularity_year": singularity(fit),
        },
        "deviations": _deviation_section(fit, s, probe_years),
        "diversion": _diversion_section(fit, s, kappa),
        "takeoff": _takeoff_section(fit, s, takeoff_window, kappa),
        "stagnation": _stagnation_section(s, stagnation_window),
        "segments": _segment_section(s, boundaries, fit_window),
    }
    return AnalysisReport(data=report)


def _deviation_section(fit: HyperbolicFit, s: GrowthSeries, probe_years) -> list[dict]:
    section = []
    for year in probe_years:
        entry: dict = {"year": year}
        try:
            entry["percent"] = percent_deviation(fit, s, year)
        except HypergrowthError as exc:
            entry["percent"] = None
            entry["skipped"] = str(exc)
        section.append(entry)
    return section


def _diversion_section(fit, s, kappa) -> dict:
    try:
        rep = detect_diversion(fit, s, kappa=kappa)
    except HypergrowthError as exc:
        return {"skipped": str(exc)}
    return {
        "diversion_year": rep.diversion_year,
        "direction": rep.direction,
        "bypass_years": rep.bypass_years,
        "threshold_kappa": rep.threshold_kappa,
        "evaluable_until": rep.evaluable_until,
    }


def _takeoff_section(fit, s, w, kappa) -> dict:
    try:
        rep = takeoff_scan(fit, s, w=w, kappa=kappa)
    except HypergrowthError as exc:
        return {"skipped": str(exc)}
    return {
        "window": [rep.window.t0, rep.window.t1],
        "found": rep.found,
        "onset_year": rep.onset_year,
        "max_negative_normalized_residual": rep.max_negative_normalized_residual,
    }


def _stagnation_section(s, w) -> dict:
    try:
        verdict = stagnation_test(s, w=w)
    except HypergrowthError as exc:
        return {"skipped": str(exc)}
    return {
        "window": [verdict.window.t0, verdict.window.t1],
        "runs_test_z": verdict.runs_test_z,
        "n_sign_changes": verdict.n_sign_changes,
        "monotone_fraction": verdict.monotone_fraction,
        "rmse_constant_model": verdict.rmse_constant_model,
        "rmse_hyperbolic_model": verdict.rmse_hyperbolic_model,
        "verdict": verdict.verdict,
    }


def _segment_section(s, boundaries, w) -> dict:
    try:
        rep = segment_consistency(s, boundaries=boundaries, w=w)
    except HypergrowthError as exc:
        return {"skipped": str(exc)}
    return {
        "boundaries": list(rep.boundaries),
        "segments": [
            {"t0": seg.t0, "t1": seg.t1, "k": seg.k, "se": seg.se, "n": seg.n}
            for seg in rep.segments
        ],
        "z_scores": [
            {"left": i, "right": j, "z": _finite(z)} for i, j, z in rep.z_scores
        ],
        "verdict": rep.verdict,
    }


PLOT_SAMPLES = 256


def gdp_plot_table(
    fit: HyperbolicFit, s: GrowthSeries, n_samples: int = PLOT_SAMPLES
) -> list[tuple[str, float, float]]:
    """Rows (tag, year, value) for the semilog GDP display.

    Observed points plus the model curve sampled on an even grid from
    the window start to min(singularity - 1, last observed year).
    """
    rows: list[tuple[str, float, float]] = [
        ("observed", y, v) for y, v in s.points
    ]
    t_end = min(singularity(fit) - 1.0, s.points[-1][0])
    t0 = fit.fit_window.t0
    if t_end > t0:
        step = (t_end - t0) / (n_samples - 1)
        for i in range(n_samples):
            t = t0 + i * step
            rows.append(("model", t, 1.0 / fit.line_value(t)))
    return rows


def reciprocal_plot_table(
    fit: HyperbolicFit, s: GrowthSeries, n_samples: int = PLOT_SAMPLES
) -> list[tuple[str, float, float]]:
    """Rows (tag, year, value) for the reciprocal (1/GDP) display.

    Observed reciprocals plus fitted-line samples over the full data
    range, clipped where the line reaches zero.
    """
    rows: list[tuple[str, float, float]] = [
        ("observed", y, 1.0 / v) for y, v in s.points
    ]
    t0 = s.points[0][0]
    t_end = min(s.points[-1][0], singularity(fit))
    if t_end > t0:
        step = (t_end - t0) / (n_samples - 1)
        for i in range(n_samples):
            t = t0 + i * step
            line = fit.line_value(t)
            if line >= 0.0:
                rows.append(("fit", t, line))
    return rows


def human_summary(report: AnalysisReport) -> str:
    """Fixed-width summary table of the main analysis quantities."""
    d = report.data
    fit = d["fit"]
    rows: list[tuple[str, str]] = [
        ("series", f"{d['series']['label']}  ({d['series']['n_points']} points)"),
        ("fit window", f"{fit['window'][0]:g} .. {fit['window'][1]:g}"),
        ("a (1/billion)", f"{fit['a']:.6e}"),
        ("k (1/billion/yr)", f"{fit['k']:.6e}"),
        ("r2 (reciprocal)", f"{fit['r2_reciprocal']:.6f}"),
        ("rmse (reciprocal)", f"{fit['rmse_reciprocal']:.3e}"),
        ("singularity year", f"{fit['singularity_year']:.1f}"),
    ]
    for entry in d["deviations"]:
        label = f"deviation @ {entry['year']:g}"
        if entry.get("percent") is None:
            rows.append((label, "n/a"))
        else:
            rows.append((label, f"{entry['percent']:+.1f}%"))
    div = d["diversion"]
    if "skipped" in div:
        rows.append(("diversion", f"skipped ({div['skipped']})"))
    elif div["direction"] == "none":
        rows.append(("diversion", "none detected"))
    else:
        rows.append(
            (
                "diversion",
                f"{div['direction']} from {div['diversion_year']:g} "
                f"(bypass {div['bypass_years']:.1f} yr)",
            )
        )
    tko = d["takeoff"]
    if "skipped" in tko:
        rows.append(("takeoff", f"skipped ({tko['skipped']})"))
    else:
        rows.append(
            (
                "takeoff",
                "found" if tko["found"] else
                f"none in {tko['window'][0]:g}..{tko['window'][1]:g}",
            )
        )
    stag = d["stagnation"]
    if "skipped" in stag:
        rows.append(("stagnation", f"skipped ({stag['skipped']})"))
    else:
        rows.append(
            (
                "stagnation",
                f"{stag['verdict']} (monotone {stag['monotone_fraction']:.2f})",
            )
        )
    seg = d["segments"]
    if "skipped" in seg:
        rows.append(("segments", f"skipped ({seg['skipped']})"))
    else:
        rows.append(("segments", seg["verdict"]))

    width = max(len(name) for name, _ in rows)
    return "\n".join(f"{name:<{width}}  {value}" for name, value in rows) + "\n"
