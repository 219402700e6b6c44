"""Steiner's most frequent value (MFV) estimator.

The MFV is the fixed point of a weighted-average iteration that
down-weights points far from the center by 1/(eps^2 + (x - M)^2), with
the companion scale parameter eps (the dihesion) refreshed alongside.
One pass updates the scale from the previous state, then the location
using the fresh scale:

    eps_{j+1}^2 = 3 * sum(d_i^2 / (eps_j^2 + d_i^2)^2)
                    / sum(1 / (eps_j^2 + d_i^2)^2),   d_i = x_i - M_j
    M_{j+1}     = sum(x_i / (eps_{j+1}^2 + d_i^2))
                    / sum(1 / (eps_{j+1}^2 + d_i^2))

started from the median and eps_0 = (sqrt(3)/2) * (max - min), until
both |dM| and |deps| drop below tolerance. The standard error of the
converged M is 1 / sqrt(sum 1/(eps^2 + (x_i - M)^2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _kernels
from .core import Dataset

__all__ = ["MfvConfig", "MfvResult", "initial_dihesion", "mfv_fit", "mfv_variance"]


@dataclass(frozen=True)
class MfvConfig:
    """Stopping rule for the iteration.

    Defaults keep every practical dataset well under 100 iterations
    while staying cheap inside large bootstrap loops.
    """

    tol_m: float = 1e-9
    tol_eps: float = 1e-9
    max_iter: int = 1000

    def __post_init__(self):
        if not (self.tol_m > 0 and self.tol_eps > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass(frozen=True)
class MfvResult:
    """Converged state of the iteration.

    m always lies within [min, max] of the data (each update is a
    convex combination of data points). converged is False when the
    iteration cap was hit; the last state is still reported.
    """

    m: float
    epsilon: float
    sigma_m: float
    iterations: int
    converged: bool


def initial_dihesion(dataset: Dataset) -> float:
    """Starting scale: (sqrt(3) / 2) * (max - min)."""
    x = dataset.values()
    return float(math.sqrt(3.0) / 2.0 * (x.max() - x.min()))


def mfv_fit(dataset: Dataset, config: MfvConfig | None = None) -> MfvResult:
    """Run the iteration to convergence on one dataset.

    All-equal data short-circuits to (m=c, eps=0, sigma=0) with zero
    iterations; that state is a fixed point by inspection and iterating
    would divide 0 by 0.
    """
    config = config or MfvConfig()
    m, eps, iters, conv = _kernels.fit_single(
        dataset.values(), config.tol_m, config.tol_eps, config.max_iter
    )
    return MfvResult(
        m=m,
        epsilon=eps,
        sigma_m=mfv_variance(dataset, m, eps),
        iterations=iters,
        converged=conv,
    )


def mfv_variance(dataset: Dataset, m: float, epsilon: float) -> float:
    """Standard error of the MFV: 1 / sqrt(sum 1/(eps^2 + (x_i - m)^2)).

    With epsilon == 0 and any x_i == m the sum diverges; that limit
    carries infinite information about the center, so 0 is returned by
    convention (the all-equal case lands here).
    """
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    e2 = epsilon * epsilon
    denoms = [e2 + (mm.value - m) ** 2 for mm in dataset]
    if any(d == 0.0 for d in denoms):
        return 0.0
    return 1.0 / math.sqrt(math.fsum(1.0 / d for d in denoms))
