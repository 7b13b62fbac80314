"""Maddison-style wide-table ingestion and regional aggregation.

Input is a UTF-8 CSV exported from the Maddison historical-statistics
spreadsheet: first column holds row labels (countries or aggregate
rows), the header row holds integer years, and cells are GDP in
millions of 1990 Geary-Khamis dollars. Blank cells and values <= 0 are
missing data and are never stored.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .errors import (
    DuplicateLabelError,
    ParseError,
    TooFewPointsError,
    UnknownMemberError,
)
from .series import GrowthSeries, new_series

MILLIONS_PER_BILLION = 1000.0

# Row labels of the twelve leading Western European economies.
W12_MEMBERS = (
    "Austria",
    "Belgium",
    "Denmark",
    "Finland",
    "France",
    "Germany",
    "Italy",
    "Netherlands",
    "Norway",
    "Sweden",
    "Switzerland",
    "United Kingdom",
)

W30_TOTAL_ROW = "Total 30 Western Europe"
EE_TOTAL_ROW = "Total Eastern Europe"


@dataclass(frozen=True)
class Dataset:
    """Parsed wide table: label -> {year: value in millions}."""

    rows: dict[str, dict[float, float]]
    year_header: tuple[float, ...]

    def labels(self) -> tuple[str, ...]:
        return tuple(self.rows)


@dataclass(frozen=True)
class RegionPreset:
    """Named recipe for building one regional series.

    mode "sum-members" sums the listed rows over years where every
    member has a value; "direct-row" takes a single row as-is.
    """

    name: str
    member_labels: tuple[str, ...]
    mode: str  # "sum-members" | "direct-row"

    def __post_init__(self) -> None:
        if self.mode not in ("sum-members", "direct-row"):
            raise ValueError(f"unknown preset mode {self.mode!r}")
        if self.mode == "direct-row" and len(self.member_labels) != 1:
            raise ValueError("direct-row preset needs exactly one label")
        if self.mode == "sum-members" and not self.member_labels:
            raise ValueError("sum-members preset needs at least one label")


def parse_wide_csv(text: str) -> Dataset:
    """Parse a wide CSV into a Dataset.

    The first header cell names the label column; the remaining header
    cells must parse as strictly increasing years. Blank cells and
    cells <= 0 are dropped. Raises ParseError for malformed headers or
    non-numeric cells (named with row label and year), and
    DuplicateLabelError for repeated row labels.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty input: no header row") from None
    if len(header) < 2:
        raise ParseError("header must contain a label column and at least one year")

    years: list[float] = []
    for cell in header[1:]:
        try:
            years.append(float(cell.strip()))
        except ValueError:
            raise ParseError(f"header cell {cell!r} is not a year") from None
    for y0, y1 in zip(years, years[1:]):
        if not y0 < y1:
            raise ParseError(f"header years not strictly increasing at {y1:g}")

    rows: dict[str, dict[float, float]] = {}
    for lineno, record in enumerate(reader, start=2):
        if not record or all(not c.strip() for c in record):
            continue  # ignore fully blank lines
        label = record[0].strip()
        if not label:
            raise ParseError(f"line {lineno}: empty row label")
        if label in rows:
            raise DuplicateLabelError(f"duplicate row label {label!r}")
        cells: dict[float, float] = {}
        for year, cell in zip(years, record[1:]):
            raw = cell.strip()
            if not raw:
                continue
            try:
                value = float(raw)
            except ValueError:
                raise ParseError(
                    f"row {label!r}, year {year:g}: cell {raw!r} is not numeric"
                ) from None
            if value > 0.0:
                cells[year] = value
        rows[label] = cells

    return Dataset(rows=rows, year_header=tuple(years))


def aggregate(d: Dataset, p: RegionPreset) -> GrowthSeries:
    """Build the regional GrowthSeries for a preset, in billions.

    For sum-members mode a year is emitted only when every member has a
    value for it (partial sums would understate early sparse years).
    Raises UnknownMemberError for missing rows and TooFewPointsError
    when fewer than 2 complete years remain.
    """
    for label in p.member_labels:
        if label not in d.rows:
            raise UnknownMemberError(f"preset {p.name!r}: row {label!r} not in dataset")

    if p.mode == "direct-row":
        cells = d.rows[p.member_labels[0]]
        points = [(y, v / MILLIONS_PER_BILLION) for y, v in sorted(cells.items())]
    else:
        member_cells = [d.rows[label] for label in p.member_labels]
        complete = set(member_cells[0])
        for cells in member_cells[1:]:
            complete &= set(cells)
        points = [
            (y, sum(cells[y] for cells in member_cells) / MILLIONS_PER_BILLION)
            for y in sorted(complete)
        ]

    if len(points) < 2:
        raise TooFewPointsError(
            f"preset {p.name!r}: only {len(points)} complete year(s) in dataset"
        )
    return new_series(points, label=p.name)


def preset_catalog(overrides: dict[str, tuple[str, ...]] | None = None) -> list[RegionPreset]:
    """Built-in regional presets, optionally with overridden row labels.

    W12 sums the twelve leading Western European economies; W30 and EE
    read the file's own Western/Eastern Europe total rows. An override
    maps a preset name to replacement labels; a single label switches
    the preset to direct-row mode, several labels to sum-members.
    """
    defaults = {
        "W12": W12_MEMBERS,
        "W30": (W30_TOTAL_ROW,),
        "EE": (EE_TOTAL_ROW,),
    }
    if overrides:
        defaults.update(overrides)
    return [
        RegionPreset(
            name=name,
            member_labels=labels,
            mode="direct-row" if len(labels) == 1 else "sum-members",
        )
        for name, labels in defaults.items()
    ]


def parse_preset_overrides(text: str) -> dict[str, tuple[str, ...]]:
    """Parse a plain key=value preset override file.

    Each non-blank, non-comment line is ``NAME=label[,label...]``.
    """
    overrides: dict[str, tuple[str, ...]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ParseError(f"preset override line {lineno}: expected NAME=labels")
        name, _, labels = stripped.partition("=")
        members = tuple(m.strip() for m in labels.split(",") if m.strip())
        if not name.strip() or not members:
            raise ParseError(f"preset override line {lineno}: empty name or labels")
        overrides[name.strip()] = members
    return overrides


def parse_long_csv(text: str, label: str) -> GrowthSeries:
    """Parse a two-column ``year,value`` CSV with values already in billions."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty input: no header row") from None
    if len(header) < 2 or header[0].strip().lower() != "year":
        raise ParseError("long format requires a 'year,value' header")
    points = []
    for lineno, record in enumerate(reader, start=2):
        if not record or all(not c.strip() for c in record):
            continue
        try:
            points.append((float(record[0]), float(record[1])))
        except (ValueError, IndexError):
            raise ParseError(f"line {lineno}: expected numeric year,value") from None
    return new_series(points, label=label)
