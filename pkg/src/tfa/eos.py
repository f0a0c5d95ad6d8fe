"""Phase equations of state and the thermodynamic coefficients they induce.

Two closures are shipped: the ideal gas and the stiffened gas in the form

    p = rho (gamma - 1) C_v T - p_inf,    e = C_v T + p_inf / rho + e_ref

(the ideal gas is the case p_inf = 0, C_v = R / (gamma - 1)).  Both are
divariant, so c_T^2 = c^2 / gamma and C_p = gamma C_v hold identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Union

import numpy as np


class InvalidStateError(ValueError):
    """Raised when (p, T) lies outside the domain of an equation of state."""


@dataclass(frozen=True)
class FluidCoeffs:
    """Thermodynamic and transport coefficients of one phase at a fixed state.

    ``chi`` is the isobaric thermal expansion coefficient, ``Gamma`` the
    Grueneisen coefficient, ``lam`` the heat conductivity and ``mu_bulk`` the
    bulk viscosity (zero under Stokes' hypothesis).
    """

    rho: float
    p: float
    T: float
    c: float
    c_T: float
    gamma: float
    Gamma: float
    C_v: float
    C_p: float
    chi: float
    mu: float = 0.0
    lam: float = 0.0
    mu_bulk: float = 0.0

    @property
    def mu_eff(self) -> float:
        """Shear viscosity with the bulk contribution folded in (3 mu'/4)."""
        return self.mu + 0.75 * self.mu_bulk

    @property
    def prandtl(self) -> float:
        if self.lam == 0.0:
            return math.inf
        return self.mu_eff * self.C_p / self.lam

    def with_transport(self, mu: float | None = None, lam: float | None = None,
                       mu_bulk: float | None = None) -> "FluidCoeffs":
        changes = {}
        if mu is not None:
            changes["mu"] = mu
        if lam is not None:
            changes["lam"] = lam
        if mu_bulk is not None:
            changes["mu_bulk"] = mu_bulk
        return replace(self, **changes)


@dataclass(frozen=True)
class IdealGas:
    gamma: float
    R: float

    @property
    def C_v(self) -> float:
        return self.R / (self.gamma - 1.0)


@dataclass(frozen=True)
class StiffenedGas:
    gamma: float
    p_inf: float
    C_v: float
    e_ref: float = 0.0


EosSpec = Union[IdealGas, StiffenedGas]


def _params(spec: EosSpec) -> tuple[float, float, float, float]:
    """(gamma, p_inf, C_v, e_ref) for either closure."""
    if isinstance(spec, IdealGas):
        if spec.gamma <= 1.0 or spec.R <= 0.0:
            raise InvalidStateError("ideal gas needs gamma > 1 and R > 0")
        return spec.gamma, 0.0, spec.C_v, 0.0
    if isinstance(spec, StiffenedGas):
        if spec.gamma <= 1.0 or spec.C_v <= 0.0:
            raise InvalidStateError("stiffened gas needs gamma > 1 and C_v > 0")
        return spec.gamma, spec.p_inf, spec.C_v, spec.e_ref
    raise TypeError(f"unknown equation of state {spec!r}")


def density(spec: EosSpec, p: float, T: float) -> float:
    gamma, p_inf, cv, _ = _params(spec)
    return (p + p_inf) / ((gamma - 1.0) * cv * T)


def pressure(spec: EosSpec, rho: float, T: float) -> float:
    gamma, p_inf, cv, _ = _params(spec)
    return rho * (gamma - 1.0) * cv * T - p_inf


def internal_energy(spec: EosSpec, rho: float, T: float) -> float:
    _, p_inf, cv, e_ref = _params(spec)
    return cv * T + p_inf / rho + e_ref


def pressure_from_energy(spec: EosSpec, rho: float, e: float) -> float:
    gamma, p_inf, _, e_ref = _params(spec)
    return (gamma - 1.0) * rho * (e - e_ref) - gamma * p_inf


def entropy(spec: EosSpec, rho: float, T: float) -> float:
    """Specific entropy, zero at rho = 1, T = 1."""
    gamma, _, cv, _ = _params(spec)
    return cv * (math.log(T) - (gamma - 1.0) * math.log(rho))


def temperature_from_entropy(spec: EosSpec, rho: float, s: float) -> float:
    gamma, _, cv, _ = _params(spec)
    return math.exp(s / cv) * rho ** (gamma - 1.0)


def pressure_from_entropy(spec: EosSpec, rho: float, s: float) -> float:
    return pressure(spec, rho, temperature_from_entropy(spec, rho, s))


def coeffs_at(spec: EosSpec, p: float, T: float, mu: float = 0.0,
              lam: float = 0.0, mu_bulk: float = 0.0) -> FluidCoeffs:
    """Evaluate all coefficients of ``spec`` at pressure ``p`` and temperature ``T``.

    Parameters
    ----------
    spec : IdealGas or StiffenedGas
        Closure of the phase.
    p, T : float
        State at which the coefficients are frozen.
    mu, lam, mu_bulk : float
        Constant transport coefficients attached to the result.

    Returns
    -------
    FluidCoeffs
    """
    gamma, p_inf, cv, _ = _params(spec)
    if T <= 0.0:
        raise InvalidStateError(f"temperature must be positive, got {T}")
    if p + p_inf <= 0.0:
        raise InvalidStateError(f"p + p_inf must be positive, got {p + p_inf}")
    rho = density(spec, p, T)
    c2 = gamma * (p + p_inf) / rho
    return FluidCoeffs(
        rho=rho, p=p, T=T,
        c=math.sqrt(c2),
        c_T=math.sqrt((p + p_inf) / rho),
        gamma=gamma,
        Gamma=gamma - 1.0,
        C_v=cv,
        C_p=gamma * cv,
        chi=1.0 / T,
        mu=mu, lam=lam, mu_bulk=mu_bulk,
    )


def acoustic_fluid(rho: float, c: float, gamma: float = 1.4, T: float = 298.15,
                   p: float = 101325.0, mu: float = 0.0, lam: float = 0.0,
                   mu_bulk: float = 0.0, C_v: float | None = None) -> FluidCoeffs:
    """Coefficients of a stiffened-gas-like phase pinned by its density and sound speed.

    The thermal coefficients follow the stiffened-gas relations with
    Gamma = gamma - 1.  When ``gamma == 1`` the phase is thermally inert
    (Gamma = 0) and ``C_v`` must be given.
    """
    if rho <= 0.0 or c <= 0.0 or T <= 0.0:
        raise InvalidStateError("rho, c and T must be positive")
    if gamma < 1.0:
        raise InvalidStateError("gamma must be at least 1")
    if C_v is None:
        if gamma == 1.0:
            raise InvalidStateError("C_v is required when gamma == 1")
        C_v = c * c / (gamma * (gamma - 1.0) * T)
    return FluidCoeffs(
        rho=rho, p=p, T=T, c=c, c_T=c / math.sqrt(gamma), gamma=gamma,
        Gamma=gamma - 1.0, C_v=C_v, C_p=gamma * C_v,
        chi=1.0 / T if gamma > 1.0 else 0.0,
        mu=mu, lam=lam, mu_bulk=mu_bulk,
    )


def measured_fluid(rho: float, c: float, T: float, C_p: float, chi: float,
                   p: float = 101325.0, mu: float = 0.0, lam: float = 0.0,
                   mu_bulk: float = 0.0) -> FluidCoeffs:
    """Divariant coefficients from tabulated rho, c, C_p and expansion coefficient.

    gamma follows from (gamma - 1) = c^2 T chi^2 / C_p and Gamma from
    Gamma = chi c^2 / C_p, so the Gibbs identities hold by construction.
    """
    gamma = 1.0 + c * c * T * chi * chi / C_p
    return FluidCoeffs(
        rho=rho, p=p, T=T, c=c, c_T=c / math.sqrt(gamma), gamma=gamma,
        Gamma=chi * c * c / C_p, C_v=C_p / gamma, C_p=C_p, chi=chi,
        mu=mu, lam=lam, mu_bulk=mu_bulk,
    )


def fit_stiffened_gas(rho: float, c: float, p: float, T: float,
                      gamma: float) -> StiffenedGas:
    """Stiffened gas reproducing density ``rho`` and sound speed ``c`` at (p, T).

    c^2 = gamma (gamma - 1) C_v T fixes C_v; p_inf then follows from
    c^2 = gamma (p + p_inf) / rho.
    """
    cv = c * c / (gamma * (gamma - 1.0) * T)
    return StiffenedGas(gamma=gamma, p_inf=rho * c * c / gamma - p, C_v=cv)


def identity_residuals(fc: FluidCoeffs) -> np.ndarray:
    """Normalized residuals of the three divariant identities.

    Returns ``[|c_T^2 - c^2/gamma|, |Gamma^2 C_v T - (gamma-1) c^2/gamma|,
    |C_p - gamma C_v|]``, each divided by the magnitude of its right-hand side
    (falling back to c^2 or C_p when that side vanishes).
    """
    c2 = fc.c * fc.c
    rhs1 = c2 / fc.gamma
    rhs2 = (fc.gamma - 1.0) * c2 / fc.gamma
    rhs3 = fc.gamma * fc.C_v
    r1 = abs(fc.c_T ** 2 - rhs1) / abs(rhs1)
    scale2 = abs(rhs2) if rhs2 != 0.0 else c2
    r2 = abs(fc.Gamma ** 2 * fc.C_v * fc.T - rhs2) / scale2
    r3 = abs(fc.C_p - rhs3) / abs(fc.C_p)
    return np.array([r1, r2, r3])


def finite_difference_checks(spec: EosSpec, p: float, T: float,
                             rel_step: float = 1e-6) -> dict[str, float]:
    """Relative errors between analytic coefficients and centered differences.

    Checked quantities: c^2 = dp/drho|s, rho Gamma T = dp/ds|rho,
    Gamma T / rho = dT/drho|s, T / C_v = dT/ds|rho and
    Gamma = (1/rho) dp/de|rho.
    """
    fc = coeffs_at(spec, p, T)
    rho, s = fc.rho, entropy(spec, fc.rho, T)
    e = internal_energy(spec, rho, T)
    h_rho = rel_step * rho
    h_s = rel_step * max(abs(s), fc.C_v)
    h_e = rel_step * max(abs(e), fc.C_v * T)

    def ds(f, x, h):
        return (f(x + h) - f(x - h)) / (2.0 * h)

    dp_drho = ds(lambda r: pressure_from_entropy(spec, r, s), rho, h_rho)
    dp_ds = ds(lambda q: pressure_from_entropy(spec, rho, q), s, h_s)
    dT_drho = ds(lambda r: temperature_from_entropy(spec, r, s), rho, h_rho)
    dT_ds = ds(lambda q: temperature_from_entropy(spec, rho, q), s, h_s)
    dp_de = ds(lambda q: pressure_from_energy(spec, rho, q), e, h_e)

    def rel(num, exact):
        return abs(num - exact) / abs(exact)

    return {
        "c2": rel(dp_drho, fc.c ** 2),
        "dp_ds": rel(dp_ds, rho * fc.Gamma * T),
        "dT_drho": rel(dT_drho, fc.Gamma * T / rho),
        "dT_ds": rel(dT_ds, T / fc.C_v),
        "Gamma": rel(dp_de / rho, fc.Gamma),
    }


def fit_ideal_gas(rho: float, c: float, p: float, T: float) -> IdealGas:
    """Ideal gas with density ``rho`` and sound speed ``c`` at (p, T)."""
    return IdealGas(gamma=rho * c * c / p, R=p / (rho * T))


WATER = fit_stiffened_gas(997.0, 1497.0, 101325.0, 298.15, 5.5)
AIR = fit_ideal_gas(1.184, 346.0, 101325.0, 298.15)
