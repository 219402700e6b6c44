"""Upper-bound methods and the conservative max-of-methods pipeline.

Three upper bounds with different assumptions:

* Chebyshev: distribution-free bound on the mean,
  UCL = mean + sqrt(1/alpha - 1) * s / sqrt(n).
* max-plus-2-sigma: the largest observed value plus twice its own
  measurement uncertainty (a 2-sigma, 95.45% statement about that
  single measurement).
* bootstrap upper: the upper endpoint of the two-sided percentile
  interval, nonparametric when the sample is big enough (n >= 10) and
  hybrid-parametric below that.

The conservative pipeline runs all three and selects the largest. An
inverse-variance weighted mean is provided for comparison only; it
never feeds the selection.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from .bootstrap import (
    BootstrapMethod,
    BootstrapPlan,
    bootstrap_hybrid_parametric,
    bootstrap_nonparametric,
    percentile_interval,
)
from .core import Dataset, SummaryStats, summarize
from .errors import PreconditionError

__all__ = [
    "UclResult",
    "ConservativeReport",
    "chebyshev_ucl",
    "max_plus_2sigma",
    "weighted_mean",
    "conservative_upper_bound",
    "NONPARAMETRIC_MIN_N",
]

# below this sample size the bootstrap component switches to the
# uncertainty-aware hybrid method
NONPARAMETRIC_MIN_N = 10

_SELECTION_RULE = "largest of {bootstrap upper, chebyshev, max+2sigma}"


@dataclass(frozen=True)
class UclResult:
    """One method's upper bound with its provenance."""

    method_label: str
    value: float
    alpha_or_confidence: float
    inputs_digest: tuple[int, float, float | None]  # (n, mean, std_dev)


@dataclass(frozen=True)
class ConservativeReport:
    """All component bounds and the selected maximum."""

    bootstrap_upper: UclResult
    chebyshev: UclResult
    max_plus_2sigma: UclResult
    selected: UclResult
    selection_rule: str


def _digest(stats: SummaryStats) -> tuple[int, float, float | None]:
    return (stats.n, stats.mean, stats.std_dev)


def chebyshev_ucl(stats: SummaryStats, alpha: float) -> UclResult:
    """Chebyshev-inequality UCL on the mean at significance alpha."""
    if not (0.0 < alpha < 1.0):
        raise PreconditionError(f"alpha must be in (0, 1), got {alpha}")
    if stats.n < 2 or stats.std_dev is None:
        raise PreconditionError("Chebyshev UCL needs n >= 2 (sample std undefined)")
    value = stats.mean + math.sqrt(1.0 / alpha - 1.0) * stats.std_dev / math.sqrt(stats.n)
    return UclResult("chebyshev", value, alpha, _digest(stats))


def max_plus_2sigma(dataset: Dataset) -> UclResult:
    """Largest observed value plus twice its attached uncertainty.

    Ties at the maximum take the largest attached uncertainty, erring
    on the conservative side. A zero uncertainty is legal and yields
    the maximum itself.
    """
    x_max = max(m.value for m in dataset)
    sigma = max(m.uncertainty for m in dataset if m.value == x_max)
    return UclResult("max-plus-2sigma", x_max + 2.0 * sigma, 0.9545, _digest(summarize(dataset)))


def weighted_mean(dataset: Dataset) -> tuple[float, float]:
    """Inverse-variance weighted mean and its standard error.

    Comparison output only: its symmetric interval is what the
    asymmetric bootstrap intervals are contrasted against.
    """
    if any(m.uncertainty <= 0 for m in dataset):
        raise PreconditionError("weighted mean needs an uncertainty > 0 on every measurement")
    weights = [1.0 / (m.uncertainty * m.uncertainty) for m in dataset]
    total = math.fsum(weights)
    value = math.fsum(w * m.value for w, m in zip(weights, dataset)) / total
    return value, 1.0 / math.sqrt(total)


def conservative_upper_bound(
    dataset: Dataset,
    confidence: float,
    plan_defaults: BootstrapPlan,
    threads: int = 1,
) -> ConservativeReport:
    """Run all three bounds at the same confidence and take the largest.

    The bootstrap component is the upper endpoint of the TWO-SIDED
    percentile interval at `confidence` (the Chebyshev bound is
    one-sided; the two are compared as reported). plan_defaults
    supplies seed, replicate count, and statistic; the resampling
    method is chosen here by sample size.
    """
    if not (0.0 < confidence < 1.0):
        raise PreconditionError(f"confidence must be in (0, 1), got {confidence}")
    alpha = 1.0 - confidence
    stats = summarize(dataset)

    if dataset.n >= NONPARAMETRIC_MIN_N:
        method = BootstrapMethod.NONPARAMETRIC
        runner = bootstrap_nonparametric
    else:
        method = BootstrapMethod.HYBRID_PARAMETRIC
        runner = bootstrap_hybrid_parametric
    plan = dataclasses.replace(plan_defaults, method=method)
    dist = runner(dataset, plan, threads=threads)
    interval = percentile_interval(dist, confidence)
    boot = UclResult(
        f"bootstrap-{method.value}-upper-percentile",
        interval.upper,
        confidence,
        _digest(stats),
    )

    cheb = chebyshev_ucl(stats, alpha)
    mx2 = max_plus_2sigma(dataset)
    selected = max((boot, cheb, mx2), key=lambda r: r.value)
    return ConservativeReport(boot, cheb, mx2, selected, _SELECTION_RULE)
