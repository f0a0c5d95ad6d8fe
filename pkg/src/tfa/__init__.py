"""Sound propagation in two-phase mixtures: static speeds, hyperbolic structure, dispersion."""

from .mixture import MixtureState, wood_speed
from .eos import FluidCoeffs, IdealGas, StiffenedGas

__all__ = ["FluidCoeffs", "IdealGas", "MixtureState", "StiffenedGas", "wood_speed"]
__version__ = "0.1.0"
