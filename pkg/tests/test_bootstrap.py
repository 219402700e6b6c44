import numpy as np
import pytest

from robucl import (
    BootstrapMethod,
    BootstrapPlan,
    Dataset,
    Measurement,
    PreconditionError,
    StatisticKind,
    bootstrap_hybrid_parametric,
    bootstrap_nonparametric,
    percentile_interval,
)

NP26 = BootstrapPlan(method=BootstrapMethod.NONPARAMETRIC, seed=42, replicates=210_000)
HPB = BootstrapPlan(method=BootstrapMethod.HYBRID_PARAMETRIC, seed=42, replicates=210_000)
SMALL = BootstrapPlan(method=BootstrapMethod.NONPARAMETRIC, seed=42, replicates=4000)


class TestPlan:
    def test_defaults(self):
        p = BootstrapPlan(method=BootstrapMethod.NONPARAMETRIC, seed=1)
        assert p.replicates == 210_000
        assert p.statistic is StatisticKind.MFV

    def test_replicates_positive(self):
        with pytest.raises(ValueError):
            BootstrapPlan(method=BootstrapMethod.NONPARAMETRIC, seed=1, replicates=0)

    def test_seed_range(self):
        with pytest.raises(ValueError):
            BootstrapPlan(method=BootstrapMethod.NONPARAMETRIC, seed=-1)
        with pytest.raises(ValueError):
            BootstrapPlan(method=BootstrapMethod.NONPARAMETRIC, seed=2**64)
        BootstrapPlan(method=BootstrapMethod.NONPARAMETRIC, seed=2**64 - 1)

    def test_method_mismatch_rejected(self, small9):
        with pytest.raises(PreconditionError):
            bootstrap_nonparametric(small9, HPB)
        with pytest.raises(PreconditionError):
            bootstrap_hybrid_parametric(small9, NP26)


class TestNonparametric:
    def test_pinned_interval_26(self, trimmed26):
        dist = bootstrap_nonparametric(trimmed26, NP26)
        ci = percentile_interval(dist, 0.9545)
        assert ci.lower == pytest.approx(2.0718050277712807, abs=1e-9)
        assert ci.upper == pytest.approx(2.304136612262597, abs=1e-9)

    def test_distribution_shape_and_immutability(self, small9):
        dist = bootstrap_nonparametric(small9, SMALL)
        assert dist.values.shape == (4000,)
        assert np.isfinite(dist.values).all()
        with pytest.raises(ValueError):
            dist.values[0] = 0.0

    def test_point_estimate_is_full_sample_statistic(self, small9):
        from robucl import mfv_fit

        dist = bootstrap_nonparametric(small9, SMALL)
        assert dist.point_estimate == pytest.approx(mfv_fit(small9).m, rel=1e-12)

    def test_same_seed_same_values(self, small9):
        a = bootstrap_nonparametric(small9, SMALL)
        b = bootstrap_nonparametric(small9, SMALL)
        assert np.array_equal(a.values, b.values)

    def test_different_seed_different_values(self, small9):
        import dataclasses

        other = dataclasses.replace(SMALL, seed=43)
        a = bootstrap_nonparametric(small9, SMALL)
        b = bootstrap_nonparametric(small9, other)
        assert not np.array_equal(a.values, b.values)

    def test_threads_bit_identical(self, trimmed26):
        plan = BootstrapPlan(method=BootstrapMethod.NONPARAMETRIC, seed=7,
                             replicates=20_000)
        base = bootstrap_nonparametric(trimmed26, plan, threads=1)
        for t in (2, 8):
            out = bootstrap_nonparametric(trimmed26, plan, threads=t)
            assert np.array_equal(base.values, out.values)

    def test_mean_statistic(self, small9):
        import dataclasses

        plan = dataclasses.replace(SMALL, statistic=StatisticKind.MEAN)
        dist = bootstrap_nonparametric(small9, plan)
        assert dist.point_estimate == pytest.approx(2.2055555555555553, abs=1e-12)
        # resampled means concentrate near the sample mean
        assert abs(dist.values.mean() - 2.2056) < 0.02

    def test_replicates_smaller_than_chunk_boundary(self, small9):
        import dataclasses

        for b in (1, 2, 65_536, 65_537):
            plan = dataclasses.replace(SMALL, replicates=b)
            dist = bootstrap_nonparametric(small9, plan)
            assert dist.values.shape == (b,)


class TestHybridParametric:
    def test_pinned_interval_9(self, small9):
        dist = bootstrap_hybrid_parametric(small9, HPB)
        ci = percentile_interval(dist, 0.9545)
        assert ci.lower == pytest.approx(1.8710575144319423, abs=1e-9)
        assert ci.upper == pytest.approx(2.5180601607058555, abs=1e-9)

    def test_requires_positive_uncertainties(self):
        ds = Dataset(measurements=(Measurement(1.0, 0.1), Measurement(2.0, 0.0),
                                   Measurement(3.0, 0.1), Measurement(4.0, 0.1)))
        plan = BootstrapPlan(method=BootstrapMethod.HYBRID_PARAMETRIC, seed=1,
                             replicates=10)
        with pytest.raises(PreconditionError):
            bootstrap_hybrid_parametric(ds, plan)

    def test_kernel_validation(self, small9):
        plan = BootstrapPlan(method=BootstrapMethod.HYBRID_PARAMETRIC, seed=1,
                             replicates=10)
        with pytest.raises(ValueError):
            bootstrap_hybrid_parametric(small9, plan, kernel="bogus")

    def test_per_element_kernel_differs(self, small9):
        plan = BootstrapPlan(method=BootstrapMethod.HYBRID_PARAMETRIC, seed=1,
                             replicates=2000)
        a = bootstrap_hybrid_parametric(small9, plan, kernel="jitter-resample")
        b = bootstrap_hybrid_parametric(small9, plan, kernel="per-element")
        assert not np.array_equal(a.values, b.values)
        # per-element adds no resampling, so its spread is tighter
        assert b.values.std() < a.values.std()

    def test_threads_bit_identical(self, small9):
        plan = BootstrapPlan(method=BootstrapMethod.HYBRID_PARAMETRIC, seed=7,
                             replicates=20_000)
        base = bootstrap_hybrid_parametric(small9, plan, threads=1)
        for t in (2, 8):
            out = bootstrap_hybrid_parametric(small9, plan, threads=t)
            assert np.array_equal(base.values, out.values)


class TestPercentileInterval:
    def test_reference_quantiles(self):
        from robucl import BootstrapDistribution

        plan = BootstrapPlan(method=BootstrapMethod.NONPARAMETRIC, seed=0,
                             replicates=100)
        dist = BootstrapDistribution(values=np.arange(1.0, 101.0), plan=plan,
                                     point_estimate=50.5)
        ci = percentile_interval(dist, 0.90)
        assert ci.lower == pytest.approx(5.95, abs=1e-12)
        assert ci.upper == pytest.approx(95.05, abs=1e-12)
        assert ci.confidence == 0.90
        assert ci.method_label == "percentile"

    def test_confidence_bounds(self, small9):
        dist = bootstrap_nonparametric(small9, SMALL)
        for bad in (0.0, 1.0, -0.5, 1.5):
            with pytest.raises(PreconditionError):
                percentile_interval(dist, bad)

    def test_nesting(self, small9):
        dist = bootstrap_nonparametric(small9, SMALL)
        inner = percentile_interval(dist, 0.50)
        outer = percentile_interval(dist, 0.95)
        assert outer.lower <= inner.lower <= inner.upper <= outer.upper

    def test_interval_order_enforced(self):
        from robucl import ConfidenceInterval

        with pytest.raises(ValueError):
            ConfidenceInterval(lower=2.0, upper=1.0, confidence=0.9,
                               method_label="percentile")
