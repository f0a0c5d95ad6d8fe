"""Named property sets used as configuration defaults."""

from __future__ import annotations

from .eos import AIR, WATER, FluidCoeffs, coeffs_at
from .mixture import MixtureState

PRESSURE = 101325.0
TEMPERATURE = 298.15

WATER_TRANSPORT = {"mu": 1.0e-3, "lam": 0.6}
AIR_TRANSPORT = {"mu": 1.8e-5, "lam": 0.026}


def water() -> FluidCoeffs:
    return coeffs_at(WATER, PRESSURE, TEMPERATURE, **WATER_TRANSPORT)


def air() -> FluidCoeffs:
    return coeffs_at(AIR, PRESSURE, TEMPERATURE, **AIR_TRANSPORT)


def water_air(alpha_plus: float = 0.5) -> MixtureState:
    """Water as phase "+", air as phase "-"."""
    return MixtureState(water(), air(), alpha_plus)


PRESETS = {"water-air-25C": (WATER, AIR, WATER_TRANSPORT, AIR_TRANSPORT)}
