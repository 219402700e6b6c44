"""Concentration bound to fissile-material mass and exemption check.

The chain is three multiplications and a division:

    total mass [kg]   = volume [m^3] * density [kg/m^3]
    total activity    = total mass [kg] * concentration [Bq/kg]
    fissile mass [g]  = total activity [Bq] / specific activity [Bq/g]

with a strict less-than comparison against the exemption threshold.
Exemption is a report field, never a gate: the computation always runs
and regulatory interpretation stays with the user.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Measurement
from .errors import PreconditionError

__all__ = ["InventoryInputs", "InventoryReport", "estimate_inventory"]


@dataclass(frozen=True)
class InventoryInputs:
    """Inputs to the conversion chain.

    volume in m^3 (zero allowed), density in kg/m^3, concentration in
    Bq/kg, specific_activity in Bq/g with its 1-sigma uncertainty,
    exemption_threshold in grams.
    """

    volume: float
    density: float
    concentration: float
    specific_activity: Measurement
    exemption_threshold: float = 100.0

    def __post_init__(self):
        if not (math.isfinite(self.volume) and self.volume >= 0):
            raise PreconditionError(f"volume must be >= 0, got {self.volume}")
        for name in ("density", "concentration", "exemption_threshold"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise PreconditionError(f"{name} must be > 0, got {v}")
        if self.specific_activity.value <= 0:
            raise PreconditionError(
                f"specific activity must be > 0, got {self.specific_activity.value}"
            )


@dataclass(frozen=True)
class InventoryReport:
    """Outputs of the chain, with the inputs echoed for provenance.

    fissile_mass_sigma is the first-order band from the specific
    activity's uncertainty alone; the concentration bound is treated as
    exact, matching how such conservative bounds are quoted.
    """

    total_mass: float
    total_activity: float
    fissile_mass: float
    fissile_mass_sigma: float
    exempt: bool
    inputs: InventoryInputs


def estimate_inventory(inputs: InventoryInputs) -> InventoryReport:
    """Run the conversion chain and classify against the threshold."""
    total_mass = inputs.volume * inputs.density
    total_activity = total_mass * inputs.concentration
    fissile_mass = total_activity / inputs.specific_activity.value
    sigma = fissile_mass * (
        inputs.specific_activity.uncertainty / inputs.specific_activity.value
    )
    for name, v in (
        ("total mass", total_mass),
        ("total activity", total_activity),
        ("fissile mass", fissile_mass),
    ):
        if not math.isfinite(v):
            raise PreconditionError(f"{name} is not finite ({v}); check the inputs")
    return InventoryReport(
        total_mass=total_mass,
        total_activity=total_activity,
        fissile_mass=fissile_mass,
        fissile_mass_sigma=sigma,
        exempt=fissile_mass < inputs.exemption_threshold,
        inputs=inputs,
    )
