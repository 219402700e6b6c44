"""Randomized structural properties, driven by hypothesis."""

import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robucl import (
    Dataset,
    Measurement,
    iqr_partition,
    ks_two_sample,
    load_dataset,
    make_histogram,
    mfv_fit,
    summarize,
    write_report,
)

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False,
                   allow_infinity=False, width=64)
values = st.lists(finite, min_size=2, max_size=40)


@settings(max_examples=60, deadline=None)
@given(values)
def test_mfv_stays_inside_data_range(xs):
    r = mfv_fit(Dataset.from_values(xs))
    assert min(xs) - 1e-9 <= r.m <= max(xs) + 1e-9
    assert r.epsilon >= 0.0
    assert r.sigma_m >= 0.0


@settings(max_examples=60, deadline=None)
@given(values)
def test_mfv_translation_invariant(xs):
    shift = 123.456
    r0 = mfv_fit(Dataset.from_values(xs))
    r1 = mfv_fit(Dataset.from_values([x + shift for x in xs]))
    span = max(1.0, max(xs) - min(xs), abs(r0.m))
    assert abs(r1.m - (r0.m + shift)) <= 1e-6 * max(span, abs(r0.m + shift))


@settings(max_examples=60, deadline=None)
@given(values)
def test_summary_orders(xs):
    s = summarize(Dataset.from_values(xs))
    # summation rounding can push the mean past the extremes by an ulp
    slack = 2 * np.spacing(max(abs(s.min), abs(s.max), 1.0))
    assert s.min - slack <= s.mean <= s.max + slack
    assert s.std_dev >= 0.0
    assert s.n == len(xs)


@settings(max_examples=60, deadline=None)
@given(st.lists(finite, min_size=4, max_size=60))
def test_iqr_partition_is_a_partition(xs):
    ds = Dataset.from_values(xs)
    part = iqr_partition(ds)
    merged = sorted([m.value for m in part.outliers]
                    + [m.value for m in part.retained])
    assert merged == sorted(xs)
    for m in part.outliers:
        assert m.value < part.lower_fence or m.value > part.upper_fence
    for m in part.retained:
        assert part.lower_fence <= m.value <= part.upper_fence


@settings(max_examples=60, deadline=None)
@given(st.lists(finite, min_size=1, max_size=300),
       st.integers(min_value=1, max_value=40))
def test_histogram_conserves_counts(xs, bins):
    h = make_histogram(xs, bins)
    assert sum(h.counts) == len(xs)


@settings(max_examples=40, deadline=None)
@given(st.lists(finite, min_size=1, max_size=30),
       st.lists(finite, min_size=1, max_size=30))
def test_ks_statistic_bounds_and_symmetry(a, b):
    r1 = ks_two_sample(a, b)
    r2 = ks_two_sample(b, a)
    assert 0.0 <= r1.statistic <= 1.0
    assert r1.statistic == r2.statistic
    assert 0.0 <= r1.p_value <= 1.0


measurements = st.lists(
    st.tuples(finite, st.floats(min_value=0, max_value=1e3, allow_nan=False)),
    min_size=1, max_size=25,
)


@settings(max_examples=40, deadline=None)
@given(measurements, st.sampled_from(["json", "csv"]))
def test_dataset_serialization_round_trip(pairs, fmt):
    ds = Dataset(measurements=tuple(Measurement(v, u) for v, u in pairs),
                 unit="Bq/kg", label="prop")
    back = load_dataset(io.BytesIO(write_report(ds, fmt)), format=fmt)
    assert back.measurements == ds.measurements
    assert back.unit == ds.unit and back.label == ds.label


@settings(max_examples=40, deadline=None)
@given(finite, st.floats(min_value=0, max_value=1e6, allow_nan=False))
def test_measurement_accepts_all_finite(v, u):
    m = Measurement(v, u)
    assert m.value == v and m.uncertainty == u


def test_mfv_idempotent_on_duplicated_data(small9):
    # duplicating every point must not move the center
    xs = np.repeat(small9.values(), 2)
    r1 = mfv_fit(small9)
    r2 = mfv_fit(Dataset.from_values(xs))
    assert r2.m == pytest.approx(r1.m, abs=1e-9)
    assert r2.epsilon == pytest.approx(r1.epsilon, abs=1e-9)
