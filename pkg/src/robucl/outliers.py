"""Boxplot/IQR outlier screening.

Flags values outside the whisker fences and returns both sides of the
partition. Outliers are never silently dropped: callers receive the
full partition and decide which side to analyze further.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Dataset, Measurement
from .errors import PreconditionError

__all__ = ["OutlierPartition", "iqr_partition"]


@dataclass(frozen=True)
class OutlierPartition:
    """Both sides of the screen plus the quartile geometry.

    outliers + retained reproduce the original dataset as a multiset.
    Every outlier lies strictly outside [lower_fence, upper_fence];
    every retained value lies inside the closed interval.
    """

    outliers: tuple[Measurement, ...]
    retained: Dataset
    q1: float
    q3: float
    lower_fence: float
    upper_fence: float
    k: float


def iqr_partition(dataset: Dataset, k: float = 1.5) -> OutlierPartition:
    """Partition by quartile fences at q1 - k*IQR and q3 + k*IQR.

    Quartiles use linear interpolation of order statistics at position
    (n-1)*p, the common default convention. Requires n >= 4 so the
    quartiles rest on more than arithmetic coincidence.
    """
    if k <= 0:
        raise PreconditionError(f"whisker multiplier must be positive, got {k}")
    if dataset.n < 4:
        raise PreconditionError(
            f"need at least 4 values for quartile screening, got {dataset.n}"
        )
    q1, q3 = (float(q) for q in np.quantile(dataset.values(), [0.25, 0.75]))
    iqr = q3 - q1
    lower = q1 - k * iqr
    upper = q3 + k * iqr

    out = []
    kept = []
    for m in dataset:
        (out if m.value < lower or m.value > upper else kept).append(m)
    if not kept:
        # k > 0 guarantees the central half of the data stays inside
        raise PreconditionError("screening removed every value")
    return OutlierPartition(
        outliers=tuple(out),
        retained=Dataset(tuple(kept), unit=dataset.unit, label=dataset.label),
        q1=q1,
        q3=q3,
        lower_fence=lower,
        upper_fence=upper,
        k=k,
    )
