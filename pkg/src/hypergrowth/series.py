"""Time-series core: validated growth series, windows, reciprocal transform.

A GrowthSeries is an immutable, strictly ordered list of (year, value)
pairs with positive values, so the reciprocal 1/value always exists.
Years are plain floats: calendar years with AD 1 = 1.0, and fractional
years are meaningful (blow-up years rarely land on integers).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DuplicateYearError,
    NonPositiveValueError,
    TooFewPointsError,
    WindowTooFewPointsError,
)


@dataclass(frozen=True)
class Window:
    """Inclusive year range [t0, t1]."""

    t0: float
    t1: float

    def __post_init__(self) -> None:
        if not self.t0 < self.t1:
            raise ValueError(f"window requires t0 < t1, got [{self.t0}, {self.t1}]")

    def contains(self, year: float) -> bool:
        return self.t0 <= year <= self.t1


@dataclass(frozen=True)
class GrowthSeries:
    """GDP-like series: values in billions of 1990 Geary-Khamis dollars."""

    points: tuple[tuple[float, float], ...]
    label: str

    @property
    def years(self) -> tuple[float, ...]:
        return tuple(p[0] for p in self.points)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(p[1] for p in self.points)

    def __len__(self) -> int:
        return len(self.points)

    def value_at(self, year: float) -> float | None:
        """Value at an observed year, None if the year is not observed."""
        for y, v in self.points:
            if y == year:
                return v
        return None


@dataclass(frozen=True)
class ReciprocalSeries:
    """Pointwise 1/value of a GrowthSeries; units 1/billions."""

    points: tuple[tuple[float, float], ...]
    label: str

    @property
    def years(self) -> tuple[float, ...]:
        return tuple(p[0] for p in self.points)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(p[1] for p in self.points)

    def __len__(self) -> int:
        return len(self.points)


def new_series(points: Iterable[Sequence[float]], label: str) -> GrowthSeries:
    """Build a validated GrowthSeries.

    Input pairs are sorted by year. Raises DuplicateYearError,
    NonPositiveValueError, or TooFewPointsError when the data violate
    the series invariants.
    """
    pts = sorted((float(y), float(v)) for y, v in points)
    if len(pts) < 2:
        raise TooFewPointsError(
            f"series {label!r}: need at least 2 points, got {len(pts)}"
        )
    for (y0, _), (y1, _) in zip(pts, pts[1:]):
        if y0 == y1:
            raise DuplicateYearError(f"series {label!r}: duplicate year {y0:g}")
    for y, v in pts:
        if not v > 0:
            raise NonPositiveValueError(
                f"series {label!r}: value {v!r} at year {y:g} is not positive"
            )
    return GrowthSeries(points=tuple(pts), label=label)


def reciprocal(s: GrowthSeries) -> ReciprocalSeries:
    """Pointwise reciprocal; years unchanged. Positivity is guaranteed."""
    return ReciprocalSeries(
        points=tuple((y, 1.0 / v) for y, v in s.points),
        label=s.label,
    )


def window(s: GrowthSeries, w: Window) -> GrowthSeries:
    """Restrict a series to [t0, t1]; at least 2 points must survive."""
    pts = tuple(p for p in s.points if w.contains(p[0]))
    if len(pts) < 2:
        raise WindowTooFewPointsError(
            f"series {s.label!r}: only {len(pts)} point(s) in [{w.t0:g}, {w.t1:g}]"
        )
    return GrowthSeries(points=pts, label=f"{s.label} [{w.t0:g}, {w.t1:g}]")
