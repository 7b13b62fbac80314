import pathlib

import pytest

from hypergrowth.ingest import aggregate, parse_wide_csv, preset_catalog

DATA_DIR = pathlib.Path(__file__).parent / "data"
EUROPE_CSV = DATA_DIR / "europe_gdp_wide.csv"


@pytest.fixture(scope="session")
def europe_csv_path() -> pathlib.Path:
    return EUROPE_CSV


@pytest.fixture(scope="session")
def europe_dataset():
    return parse_wide_csv(EUROPE_CSV.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def regional_series(europe_dataset):
    catalog = {p.name: p for p in preset_catalog()}
    return {
        name: aggregate(europe_dataset, catalog[name]) for name in ("W12", "W30", "EE")
    }
