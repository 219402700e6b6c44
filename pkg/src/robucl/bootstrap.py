"""Seedable, deterministic bootstrap engine.

Two resampling schemes over a pluggable statistic:

* nonparametric: each replicate draws n indices with replacement from
  the original sample and evaluates the statistic on the resampled
  values.
* hybrid parametric (HPB): each replicate first simulates one
  re-measurement of every element, drawing element i from a normal
  distribution centered at x_i with standard deviation equal to its
  1-sigma uncertainty, then resamples n slots with replacement from
  that synthetic sample. The jitter step carries the per-element
  uncertainties into the replicate spread; the resampling step keeps
  the scheme free of assumptions about the distribution across
  elements. A "per-element" kernel (jitter only, no resampling) is
  available for comparison.

Determinism: all randomness flows from one 64-bit seed, split into two
independent counter-based streams (index draws and noise draws), each
consumed in replicate-major order. Replicates are generated in fixed
chunks and evaluated row by row, so results are bit-identical for any
thread count and invariant to the chunk size.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import Dataset
from .errors import PreconditionError
from .mfv import MfvConfig

__all__ = [
    "StatisticKind",
    "BootstrapMethod",
    "BootstrapPlan",
    "BootstrapDistribution",
    "ConfidenceInterval",
    "bootstrap_nonparametric",
    "bootstrap_hybrid_parametric",
    "percentile_interval",
]

_CHUNK = 65536
_HPB_KERNELS = ("jitter-resample", "per-element")


class StatisticKind(enum.Enum):
    """Statistic evaluated on every replicate."""

    MFV = "mfv"
    MEAN = "mean"


class BootstrapMethod(enum.Enum):
    """Resampling scheme."""

    NONPARAMETRIC = "nonparametric"
    HYBRID_PARAMETRIC = "hybrid-parametric"


@dataclass(frozen=True)
class BootstrapPlan:
    """Everything that determines a run: method, seed, size, statistic."""

    method: BootstrapMethod
    seed: int
    replicates: int = 210_000
    statistic: StatisticKind = StatisticKind.MFV

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError(f"replicates must be >= 1, got {self.replicates}")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class BootstrapDistribution:
    """Replicate statistics plus the plan that produced them."""

    values: np.ndarray
    plan: BootstrapPlan
    point_estimate: float

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != (self.plan.replicates,):
            raise ValueError(
                f"expected {self.plan.replicates} replicate values, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("replicate statistics must all be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class ConfidenceInterval:
    """Two-sided interval at the given confidence level."""

    lower: float
    upper: float
    confidence: float
    method_label: str

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("interval endpoints are out of order")


def _streams(seed):
    """Independent index and noise generators derived from one seed.

    Separate child streams keep each stream's consumption contiguous
    across chunks, so chunking never changes the draws.
    """
    idx_seq, noise_seq = np.random.SeedSequence(seed).spawn(2)
    return (
        np.random.Generator(np.random.Philox(idx_seq)),
        np.random.Generator(np.random.Philox(noise_seq)),
    )


def _rows_statistic(kind: StatisticKind, rows: np.ndarray, threads: int) -> np.ndarray:
    if kind is StatisticKind.MEAN:
        return rows.mean(axis=1)
    cfg = MfvConfig()
    return _kernels.fit_rows(rows, cfg.tol_m, cfg.tol_eps, cfg.max_iter, threads=threads)[0]


def _point_statistic(kind: StatisticKind, dataset: Dataset) -> float:
    if kind is StatisticKind.MEAN:
        return float(np.mean(dataset.values()))
    cfg = MfvConfig()
    return _kernels.fit_single(dataset.values(), cfg.tol_m, cfg.tol_eps, cfg.max_iter)[0]


def bootstrap_nonparametric(
    dataset: Dataset, plan: BootstrapPlan, threads: int = 1
) -> BootstrapDistribution:
    """Classic resampling bootstrap, fully determined by (dataset order, seed)."""
    if plan.method is not BootstrapMethod.NONPARAMETRIC:
        raise PreconditionError(f"plan method is {plan.method.value}, expected nonparametric")
    values = dataset.values()
    n = values.size
    gen_idx, _ = _streams(plan.seed)

    out = np.empty(plan.replicates)
    for start in range(0, plan.replicates, _CHUNK):
        count = min(_CHUNK, plan.replicates - start)
        idx = gen_idx.integers(0, n, size=(count, n))
        out[start : start + count] = _rows_statistic(plan.statistic, values[idx], threads)

    return BootstrapDistribution(out, plan, _point_statistic(plan.statistic, dataset))


def bootstrap_hybrid_parametric(
    dataset: Dataset,
    plan: BootstrapPlan,
    threads: int = 1,
    kernel: str = "jitter-resample",
) -> BootstrapDistribution:
    """Uncertainty-aware bootstrap, fully determined by (dataset order, seed).

    Requires a positive uncertainty on every measurement; with exact
    values there is nothing to jitter, and the nonparametric method is
    the right tool.
    """
    if plan.method is not BootstrapMethod.HYBRID_PARAMETRIC:
        raise PreconditionError(
            f"plan method is {plan.method.value}, expected hybrid-parametric"
        )
    if kernel not in _HPB_KERNELS:
        raise ValueError(f"kernel must be one of {_HPB_KERNELS}, got {kernel!r}")
    values = dataset.values()
    uncs = dataset.uncertainties()
    if np.any(uncs <= 0):
        raise PreconditionError(
            "hybrid-parametric bootstrap needs an uncertainty > 0 on every "
            "measurement; supply uncertainties or use the nonparametric method"
        )
    n = values.size
    gen_idx, gen_noise = _streams(plan.seed)

    out = np.empty(plan.replicates)
    for start in range(0, plan.replicates, _CHUNK):
        count = min(_CHUNK, plan.replicates - start)
        # one simulated re-measurement of each element per replicate;
        # negative draws are kept (truncation would bias the center)
        synth = values + gen_noise.standard_normal(size=(count, n)) * uncs
        if kernel == "jitter-resample":
            idx = gen_idx.integers(0, n, size=(count, n))
            rows = np.take_along_axis(synth, idx, axis=1)
        else:
            rows = synth
        out[start : start + count] = _rows_statistic(plan.statistic, rows, threads)

    return BootstrapDistribution(out, plan, _point_statistic(plan.statistic, dataset))


def percentile_interval(
    dist: BootstrapDistribution, confidence: float
) -> ConfidenceInterval:
    """Empirical quantiles of the replicates at (1 +- confidence) / 2.

    Uses the same linear order-statistic interpolation as the quartile
    screen, so intervals at increasing confidence are nested.
    """
    if not (0.0 < confidence < 1.0):
        raise PreconditionError(f"confidence must be in (0, 1), got {confidence}")
    lo, hi = np.quantile(dist.values, [(1.0 - confidence) / 2.0, (1.0 + confidence) / 2.0])
    return ConfidenceInterval(float(lo), float(hi), confidence, "percentile")
