"""Robust statistics for small, outlier-prone concentration datasets.

The package centers on the most frequent value (MFV) estimator, two
bootstrap schemes for its confidence interval, and a conservative
upper-confidence-limit selection used for radiological inventory
screening decisions.
"""

from .bootstrap import (
    BootstrapDistribution,
    BootstrapMethod,
    BootstrapPlan,
    ConfidenceInterval,
    StatisticKind,
    bootstrap_hybrid_parametric,
    bootstrap_nonparametric,
    percentile_interval,
)
from .core import Dataset, Measurement, SummaryStats, summarize
from .data_io import (
    FIXTURES,
    HistogramSpec,
    load_dataset,
    load_fixture,
    make_histogram,
    write_report,
)
from .errors import InputFormatError, PreconditionError
from .inventory import InventoryInputs, InventoryReport, estimate_inventory
from .mfv import MfvConfig, MfvResult, initial_dihesion, mfv_fit, mfv_variance
from .outliers import OutlierPartition, iqr_partition
from .stat_tests import TestReport, ks_two_sample, shapiro_wilk
from .ucl import (
    NONPARAMETRIC_MIN_N,
    ConservativeReport,
    UclResult,
    chebyshev_ucl,
    conservative_upper_bound,
    max_plus_2sigma,
    weighted_mean,
)

__version__ = "1.0.0"

__all__ = [
    "BootstrapDistribution",
    "BootstrapMethod",
    "BootstrapPlan",
    "ConfidenceInterval",
    "ConservativeReport",
    "Dataset",
    "FIXTURES",
    "HistogramSpec",
    "InputFormatError",
    "InventoryInputs",
    "InventoryReport",
    "Measurement",
    "MfvConfig",
    "MfvResult",
    "NONPARAMETRIC_MIN_N",
    "OutlierPartition",
    "PreconditionError",
    "StatisticKind",
    "SummaryStats",
    "TestReport",
    "UclResult",
    "bootstrap_hybrid_parametric",
    "bootstrap_nonparametric",
    "chebyshev_ucl",
    "conservative_upper_bound",
    "estimate_inventory",
    "initial_dihesion",
    "iqr_partition",
    "ks_two_sample",
    "load_dataset",
    "load_fixture",
    "make_histogram",
    "max_plus_2sigma",
    "mfv_fit",
    "mfv_variance",
    "percentile_interval",
    "shapiro_wilk",
    "summarize",
    "weighted_mean",
    "write_report",
    "__version__",
]
