"""Two-phase mixture state and the static (frequency independent) sound speeds."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .eos import FluidCoeffs


class DegenerateMixtureError(ValueError):
    """Raised when a mixture formula is evaluated outside its admissible range."""


@dataclass(frozen=True)
class MixtureState:
    """Phase "+" and phase "-" at mechanical equilibrium, with volume fraction of "+"."""

    plus: FluidCoeffs
    minus: FluidCoeffs
    alpha_plus: float

    def __post_init__(self):
        if not 0.0 <= self.alpha_plus <= 1.0:
            raise DegenerateMixtureError(
                f"alpha_plus must lie in [0, 1], got {self.alpha_plus}")

    @property
    def alpha_minus(self) -> float:
        return 1.0 - self.alpha_plus

    @property
    def rho(self) -> float:
        return self.alpha_plus * self.plus.rho + self.alpha_minus * self.minus.rho

    @property
    def eta_plus(self) -> float:
        return self.alpha_plus * self.plus.rho / self.rho

    @property
    def eta_minus(self) -> float:
        return self.alpha_minus * self.minus.rho / self.rho

    @property
    def mu(self) -> float:
        """Volume-averaged viscosity."""
        return self.alpha_plus * self.plus.mu_eff + self.alpha_minus * self.minus.mu_eff

    @property
    def pi_bar(self) -> float:
        """alpha+ rho- c-^2 + alpha- rho+ c+^2, the recurring two-velocity denominator."""
        return (self.alpha_plus * self.minus.rho * self.minus.c ** 2
                + self.alpha_minus * self.plus.rho * self.plus.c ** 2)

    def at(self, alpha_plus: float) -> "MixtureState":
        return replace(self, alpha_plus=alpha_plus)

    def swapped(self) -> "MixtureState":
        return MixtureState(self.minus, self.plus, self.alpha_minus)


def _compressibility(mix: MixtureState, c_plus: float, c_minus: float) -> float:
    return (mix.alpha_minus / (mix.minus.rho * c_minus ** 2)
            + mix.alpha_plus / (mix.plus.rho * c_plus ** 2))


def wood_speed(mix: MixtureState) -> float:
    """Frozen mixture speed from mean density and mean compressibility."""
    rho = mix.rho
    if rho <= 0.0:
        raise DegenerateMixtureError("mean density vanishes")
    return 1.0 / math.sqrt(rho * _compressibility(mix, mix.plus.c, mix.minus.c))


def wood_speed_mass_fractions(mix: MixtureState) -> float:
    """Same speed written with mass fractions: 1/(rho c)^2 = sum eta/(rho_k c_k)^2."""
    rho = mix.rho
    if rho <= 0.0:
        raise DegenerateMixtureError("mean density vanishes")
    inv = (mix.eta_minus / (mix.minus.rho * mix.minus.c) ** 2
           + mix.eta_plus / (mix.plus.rho * mix.plus.c) ** 2)
    return 1.0 / (rho * math.sqrt(inv))


def wood_speed_isothermal_gas(mix: MixtureState) -> float:
    """Wood speed with the gas ("-") phase compressed isothermally."""
    rho = mix.rho
    if rho <= 0.0:
        raise DegenerateMixtureError("mean density vanishes")
    return 1.0 / math.sqrt(rho * _compressibility(mix, mix.plus.c, mix.minus.c_T))


def _wood_at(plus: FluidCoeffs, minus: FluidCoeffs, alpha: float) -> float:
    return wood_speed(MixtureState(plus, minus, alpha))


def golden_section_min(f, a: float, b: float, tol: float = 1e-10) -> float:
    """Minimizer of a unimodal ``f`` on [a, b] to bracket width ``tol``."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_phi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (b - a)
            f2 = f(x2)
    return 0.5 * (a + b)


@dataclass(frozen=True)
class WoodMinimum:
    alpha_min: float
    c_min: float
    alpha_closed_form: float


def wood_minimum_alpha_closed_form(plus: FluidCoeffs, minus: FluidCoeffs) -> float:
    """Stationary point of alpha -> c_w(alpha) in closed form (nan if undefined)."""
    rp, rm = plus.rho, minus.rho
    ap, am = plus.c ** 2, minus.c ** 2
    num = rp * rp * ap + rm * rm * am - 2.0 * rm * rp * ap
    den = -rp * rm * am + rm * rm * am + rp * rp * ap - rm * rp * ap
    if den == 0.0:
        return math.nan
    return 0.5 * num / den


def wood_minimum(plus: FluidCoeffs, minus: FluidCoeffs) -> WoodMinimum:
    """Minimum of the Wood speed over alpha_plus in [0, 1].

    The golden-section result is authoritative; the closed-form stationary
    point is returned alongside for cross-checking.
    """
    alpha = golden_section_min(lambda a: _wood_at(plus, minus, a), 0.0, 1.0)
    candidates = [(_wood_at(plus, minus, a), a) for a in (alpha, 0.0, 1.0)]
    c_min, alpha = min(candidates)
    return WoodMinimum(alpha, c_min, wood_minimum_alpha_closed_form(plus, minus))


def wood_minimum_asymptotic(plus: FluidCoeffs, minus: FluidCoeffs) -> tuple[float, float]:
    """Leading-order minimum for a large density contrast.

    Returns ``(alpha_plus_min, c_min)`` in the caller's labeling.  Internally
    the light phase is labeled "+" so that rho+/rho- is the small parameter.
    """
    swap = plus.rho > minus.rho
    light, heavy = (minus, plus) if swap else (plus, minus)
    ratio = light.rho / heavy.rho
    alpha_light = 0.5 * (1.0 + ratio * (heavy.c ** 2 - light.c ** 2) / heavy.c ** 2)
    c_min = 2.0 * light.c * math.sqrt(ratio)
    return (1.0 - alpha_light if swap else alpha_light), c_min


def _require_interior(mix: MixtureState) -> None:
    if mix.alpha_plus <= 0.0 or mix.alpha_minus <= 0.0:
        raise DegenerateMixtureError(
            "stratified formulas need both phases present (0 < alpha < 1)")


def nguyen_stratified(mix: MixtureState) -> tuple[float, float]:
    """Effective phase speeds in a stratified layer: (c_eff_minus, c_eff_plus)."""
    _require_interior(mix)
    ap, am = mix.alpha_plus, mix.alpha_minus
    rp, rm = mix.plus.rho, mix.minus.rho
    inv_m = 1.0 / mix.minus.c ** 2 + (ap / am) * (rm / rp) / mix.plus.c ** 2
    inv_p = 1.0 / mix.plus.c ** 2 + (am / ap) * (rp / rm) / mix.minus.c ** 2
    return 1.0 / math.sqrt(inv_m), 1.0 / math.sqrt(inv_p)


def nguyen_slug(mix: MixtureState) -> float:
    """Slug flow: the wave crosses each phase in series."""
    return 1.0 / (mix.alpha_plus / mix.plus.c + mix.alpha_minus / mix.minus.c)


def bubbly_effective_speeds(mix: MixtureState) -> tuple[float, float]:
    """Effective phase speeds in bubbly flow: (c_eff_minus, c_eff_plus)."""
    ap, am = mix.alpha_plus, mix.alpha_minus
    rp, rm = mix.plus.rho, mix.minus.rho
    inv_m = am / mix.minus.c ** 2 + (rm / rp) * ap / mix.plus.c ** 2
    inv_p = ap / mix.plus.c ** 2 + (rp / rm) * am / mix.minus.c ** 2
    return 1.0 / math.sqrt(inv_m), 1.0 / math.sqrt(inv_p)


def nguyen_bubbly(mix: MixtureState) -> float:
    c_eff_m, c_eff_p = bubbly_effective_speeds(mix)
    return 1.0 / (mix.alpha_plus / c_eff_p + mix.alpha_minus / c_eff_m)


def wood_from_effective(mix: MixtureState) -> float:
    """Wood speed recombined from the bubbly effective speeds.

    The two confinement corrections cancel, so this equals ``wood_speed``.
    """
    c_eff_m, c_eff_p = bubbly_effective_speeds(mix)
    inv = (mix.alpha_minus / (mix.minus.rho * c_eff_m ** 2)
           + mix.alpha_plus / (mix.plus.rho * c_eff_p ** 2))
    c = 1.0 / math.sqrt(mix.rho * inv)
    ref = wood_speed(mix)
    if abs(c - ref) > 1e-12 * ref:
        raise ArithmeticError(f"effective-speed recombination {c} != Wood {ref}")
    return c


def isothermal_equilibrium_speed(mix: MixtureState) -> float:
    """Isothermal mixture speed (Wood's formula with the phasic c_T)."""
    return 1.0 / math.sqrt(mix.rho * _compressibility(mix, mix.plus.c_T, mix.minus.c_T))


def _mixture_thermal(mix: MixtureState) -> tuple[float, float, float]:
    """(T, chi, C_p) of the mixture at common temperature."""
    chi = mix.alpha_plus * mix.plus.chi + mix.alpha_minus * mix.minus.chi
    cp = mix.eta_plus * mix.plus.C_p + mix.eta_minus * mix.minus.C_p
    return mix.plus.T, chi, cp


def equilibrium_speed_temkin(mix: MixtureState) -> float:
    """Relaxed speed in the gas-normalized form, c-^2/c^2 = ..."""
    p, m = mix.plus, mix.minus
    ap, am = mix.alpha_plus, mix.alpha_minus
    first = (mix.rho / m.rho) * (m.gamma * am
                                 + p.gamma * ap * m.rho * m.c ** 2 / (p.rho * p.c ** 2))
    if m.chi == 0.0:
        second = 0.0
    else:
        expansion = am + ap * p.chi / m.chi
        heat = mix.eta_minus + mix.eta_plus * p.C_p / m.C_p
        second = (m.gamma - 1.0) * expansion ** 2 / heat
    return m.c / math.sqrt(first - second)


def equilibrium_speed(mix: MixtureState) -> tuple[float, float]:
    """Isothermal and relaxed (thermal-equilibrium) mixture speeds.

    Returns ``(c_T_eq, c_eq)`` with 1/c_eq^2 = 1/c_T_eq^2 - T chi^2 / C_p,
    where chi and C_p are the volume- and mass-averaged mixture values.
    The gas-normalized form is evaluated as a cross-check.
    """
    if mix.plus.T != mix.minus.T:
        raise DegenerateMixtureError("relaxed speed needs a common temperature")
    c_T_eq = isothermal_equilibrium_speed(mix)
    T, chi, cp = _mixture_thermal(mix)
    inv = 1.0 / c_T_eq ** 2 - T * chi * chi / cp
    c_eq = 1.0 / math.sqrt(inv)
    if mix.alpha_minus > 0.0:
        alt = equilibrium_speed_temkin(mix)
        if abs(alt - c_eq) > 1e-10 * c_eq:
            raise ArithmeticError(f"relaxed speed forms disagree: {c_eq} vs {alt}")
    return c_T_eq, c_eq
