import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypergrowth.errors import (
    DuplicateYearError,
    NonPositiveValueError,
    TooFewPointsError,
    WindowTooFewPointsError,
)
from hypergrowth.series import Window, new_series, reciprocal, window


def test_minimal_valid_series():
    s = new_series([(1, 10), (1000, 12)], "x")
    assert len(s) == 2
    assert s.years == (1.0, 1000.0)
    assert s.values == (10.0, 12.0)


def test_input_sorted_by_year():
    s = new_series([(1000, 12), (1, 10)], "x")
    assert s.years == (1.0, 1000.0)


def test_duplicate_year_rejected():
    with pytest.raises(DuplicateYearError):
        new_series([(1, 10), (1, 11)], "x")


def test_nonpositive_value_rejected():
    with pytest.raises(NonPositiveValueError):
        new_series([(1, 10), (1500, 0.0)], "x")
    with pytest.raises(NonPositiveValueError):
        new_series([(1, 10), (1500, -3.0)], "x")


def test_single_point_rejected():
    with pytest.raises(TooFewPointsError):
        new_series([(1, 10)], "x")


def test_window_requires_ordering():
    with pytest.raises(ValueError):
        Window(1900, 1500)


def test_reciprocal_pointwise():
    s = new_series([(1700, 2.0), (1800, 4.0)], "x")
    r = reciprocal(s)
    assert r.points == ((1700.0, 0.5), (1800.0, 0.25))
    assert r.label == "x"


def test_reciprocal_of_exact_hyperbola_is_collinear():
    a, k = 0.1147, 5.961e-5
    years = [1500, 1600, 1700, 1820, 1870, 1900]
    s = new_series([(t, 1.0 / (a - k * t)) for t in years], "hyp")
    r = reciprocal(s)
    for t, v in r.points:
        assert v == pytest.approx(a - k * t, rel=1e-14)


@given(
    st.lists(
        st.tuples(
            st.integers(min_value=-5000, max_value=5000),
            st.floats(min_value=1e-6, max_value=1e6, allow_nan=False),
        ),
        min_size=2,
        max_size=30,
        unique_by=lambda p: p[0],
    )
)
def test_reciprocal_is_involution(points):
    s = new_series(points, "x")
    twice = reciprocal(
        new_series(reciprocal(s).points, "x")
    )
    for (y0, v0), (y1, v1) in zip(s.points, twice.points):
        assert y0 == y1
        assert math.isclose(v0, v1, rel_tol=1e-12)


def test_window_filters_inclusively():
    years = [1, 1000, 1500, 1600, 1700, 1820, 1870, 1900]
    s = new_series([(y, float(i + 1)) for i, y in enumerate(years)], "x")
    sub = window(s, Window(1500, 1900))
    assert len(sub) == 6
    assert sub.years == (1500.0, 1600.0, 1700.0, 1820.0, 1870.0, 1900.0)
    assert "[1500, 1900]" in sub.label


def test_window_too_few_points():
    years = [1, 1000, 1500, 1600, 1700, 1820, 1870, 1900]
    s = new_series([(y, float(i + 1)) for i, y in enumerate(years)], "x")
    with pytest.raises(WindowTooFewPointsError):
        window(s, Window(2100, 2200))
    with pytest.raises(WindowTooFewPointsError):
        window(s, Window(1500, 1500.5))


@given(
    st.lists(
        st.tuples(
            st.integers(min_value=0, max_value=3000),
            st.floats(min_value=0.1, max_value=1e4, allow_nan=False),
        ),
        min_size=2,
        max_size=40,
        unique_by=lambda p: p[0],
    ),
    st.integers(min_value=0, max_value=2999),
    st.integers(min_value=1, max_value=3000),
)
def test_window_partitions_series(points, lo, span):
    s = new_series(points, "x")
    w = Window(lo, lo + span)
    inside = [p for p in s.points if w.t0 <= p[0] <= w.t1]
    outside = [p for p in s.points if not (w.t0 <= p[0] <= w.t1)]
    assert len(inside) + len(outside) == len(s)
    if len(inside) >= 2:
        sub = window(s, w)
        assert list(sub.points) == inside  # order and values preserved exactly
    else:
        with pytest.raises(WindowTooFewPointsError):
            window(s, w)


@given(
    st.lists(
        st.tuples(
            st.integers(min_value=-2000, max_value=4000),
            st.floats(
                min_value=-10.0, max_value=1e5,
                allow_nan=False, allow_infinity=False,
            ),
        ),
        min_size=0,
        max_size=20,
    )
)
def test_new_series_rejects_exactly_invariant_violations(points):
    years = [y for y, _ in points]
    has_dup = len(set(years)) != len(years)
    has_nonpos = any(v <= 0 for _, v in points)
    too_few = len(points) < 2
    if too_few and not has_dup:
        with pytest.raises(TooFewPointsError):
            new_series(points, "x")
    elif has_dup or has_nonpos:
        with pytest.raises((DuplicateYearError, NonPositiveValueError)):
            new_series(points, "x")
    else:
        s = new_series(points, "x")
        assert len(s) == len(points)
