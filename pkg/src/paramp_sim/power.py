"""Pump power to modulation amplitude conversion.

Cavity designs are characterized by a power conversion factor, either as
field per root watt (mT/sqrt(W), converted through the electron
gyromagnetic ratio) or directly as ordinary frequency per root watt
(Hz/sqrt(W)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import ELECTRON_GYROMAGNETIC_HZ_PER_MT, TWO_PI
from .errors import ParameterError

UNITS_MT = "mt"
UNITS_HZ = "hz"


@dataclass(frozen=True)
class PowerSpec:
    """Conversion factor and pump power for one cavity design.

    ``conversion_factor`` is in mT/sqrt(W) when units == "mt" and in
    Hz/sqrt(W) when units == "hz".
    """

    conversion_factor: float
    units: str = UNITS_MT
    gyromagnetic_hz_per_mt: float = ELECTRON_GYROMAGNETIC_HZ_PER_MT
    power: float = 0.0

    def __post_init__(self):
        if self.units not in (UNITS_MT, UNITS_HZ):
            raise ParameterError(f"units must be 'mt' or 'hz', got {self.units!r}")
        if self.conversion_factor < 0.0 or self.power < 0.0 \
                or self.gyromagnetic_hz_per_mt < 0.0:
            raise ParameterError("PowerSpec fields must be >= 0")

    @property
    def hz_per_sqrt_watt(self) -> float:
        if self.units == UNITS_HZ:
            return self.conversion_factor
        return self.conversion_factor * self.gyromagnetic_hz_per_mt


def modulation_amplitude_from_power(spec: PowerSpec) -> float:
    """Modulation amplitude Lambda (rad/s) delivered by ``spec.power``."""
    return TWO_PI * spec.hz_per_sqrt_watt * math.sqrt(spec.power)


def required_power(target_lambda: float, spec: PowerSpec) -> float:
    """Pump power in W needed for a target Lambda (rad/s)."""
    if target_lambda < 0.0:
        raise ParameterError(f"target_lambda must be >= 0, got {target_lambda}")
    conv = spec.hz_per_sqrt_watt
    if conv <= 0.0:
        raise ParameterError("conversion factor must be > 0")
    return (target_lambda / TWO_PI / conv) ** 2
