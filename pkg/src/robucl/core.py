"""Fundamental data types and classical summary statistics.

A Measurement is a concentration value with its 1-sigma absolute
uncertainty in the same units. A Dataset is an ordered, immutable
collection of measurements sharing one unit label. Everything here is a
frozen value object, safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["Measurement", "Dataset", "SummaryStats", "summarize"]


@dataclass(frozen=True)
class Measurement:
    """A single value with its 1-sigma absolute uncertainty.

    An uncertainty of 0 is legal: it marks an exact value and lets the
    same type serve paths that ignore uncertainties entirely.
    """

    value: float
    uncertainty: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"measurement value must be finite, got {self.value}")
        if not math.isfinite(self.uncertainty) or self.uncertainty < 0:
            raise ValueError(
                f"measurement uncertainty must be finite and >= 0, got {self.uncertainty}"
            )


@dataclass(frozen=True)
class Dataset:
    """Ordered collection of measurements with unit and label metadata.

    The unit lives on the dataset, not on individual measurements, so
    unit consistency holds by construction. Order is preserved and
    significant (resampling is defined over positions).
    """

    measurements: tuple[Measurement, ...]
    unit: str = ""
    label: str = ""

    def __post_init__(self):
        ms = tuple(self.measurements)
        if not ms:
            raise ValueError("dataset must contain at least one measurement")
        object.__setattr__(self, "measurements", ms)

    def __len__(self):
        return len(self.measurements)

    def __iter__(self):
        return iter(self.measurements)

    @property
    def n(self) -> int:
        return len(self.measurements)

    def values(self) -> np.ndarray:
        """Measurement values as a fresh float64 array, file order."""
        return np.array([m.value for m in self.measurements], dtype=np.float64)

    def uncertainties(self) -> np.ndarray:
        """1-sigma uncertainties as a fresh float64 array, file order."""
        return np.array([m.uncertainty for m in self.measurements], dtype=np.float64)

    @classmethod
    def from_values(cls, values, uncertainties=None, unit="", label="") -> "Dataset":
        """Build a dataset from parallel value/uncertainty sequences."""
        values = list(values)
        if uncertainties is None:
            uncertainties = [0.0] * len(values)
        else:
            uncertainties = list(uncertainties)
            if len(uncertainties) != len(values):
                raise ValueError(
                    f"{len(values)} values but {len(uncertainties)} uncertainties"
                )
        ms = tuple(Measurement(float(v), float(u)) for v, u in zip(values, uncertainties))
        return cls(ms, unit=unit, label=label)


@dataclass(frozen=True)
class SummaryStats:
    """Classical moments of a dataset.

    std_dev is the sample (n-1 denominator) standard deviation and is
    None when n == 1: undefined, never reported as zero.
    """

    mean: float
    std_dev: float | None
    n: int
    min: float
    max: float


def summarize(dataset: Dataset) -> SummaryStats:
    """Mean, sample standard deviation, count, and extremes."""
    x = dataset.values()
    std = float(np.std(x, ddof=1)) if x.size >= 2 else None
    return SummaryStats(
        mean=float(np.mean(x)),
        std_dev=std,
        n=int(x.size),
        min=float(np.min(x)),
        max=float(np.max(x)),
    )
