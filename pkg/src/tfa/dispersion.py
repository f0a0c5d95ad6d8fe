"""Dispersion relations of the viscous and conductive models, and their roots.

Polynomials are written in X = omega / k for plane waves exp(i(kx - omega t)),
so a root X gives phase speed Re(X) and attenuation sigma = -k Im(X).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .dynamics import LinearSystem, added_mass_convection, c_kappa
from .eos import FluidCoeffs
from .mixture import DegenerateMixtureError, MixtureState, wood_speed
from .polyroots import (NonConvergenceError, aberth, exact_pencil_charpoly, horner,
                        strip_zero_roots)

KNUDSEN_LIMIT = 1e-2


class OverdampedError(ValueError):
    """Raised when the Stokes acoustic pair stops propagating (k a1 >= c)."""


@dataclass(frozen=True)
class DispersionPoly:
    coeffs: tuple[complex, ...]
    k: float
    model_tag: str
    aux: dict[str, Any] = field(default_factory=dict)
    zero_roots: int = 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: complex) -> complex:
        return horner(self.coeffs, x)[0]


@dataclass(frozen=True)
class Branch:
    omega: complex
    kind: str
    k: float

    @property
    def phase_speed(self) -> float:
        return self.omega.real / self.k

    @property
    def attenuation(self) -> float:
        return -self.omega.imag


@dataclass(frozen=True)
class ModeSet:
    k: float
    branches: tuple[Branch, ...]

    def of_kind(self, kind: str) -> Branch:
        for b in self.branches:
            if b.kind == kind:
                return b
        raise KeyError(kind)

    @property
    def speeds(self) -> np.ndarray:
        """Roots in X = omega / k."""
        return np.array([b.omega / self.k for b in self.branches])


def knudsen(fc: FluidCoeffs, k: float) -> float:
    return k * fc.mu_eff / (fc.rho * fc.c)


def knudsen_wood(mix: MixtureState, k: float) -> float:
    return k * mix.mu / (mix.rho * wood_speed(mix))


def knudsen_phases(mix: MixtureState, k: float) -> tuple[float, float]:
    return knudsen(mix.plus, k), knudsen(mix.minus, k)


def _warn_knudsen(value: float, what: str) -> None:
    if value > KNUDSEN_LIMIT:
        warnings.warn(f"{what} = {value:.3g} exceeds the continuum limit {KNUDSEN_LIMIT}",
                      stacklevel=3)


# single fluid -----------------------------------------------------------------

def stokes_a1(fc: FluidCoeffs) -> float:
    return 2.0 * fc.mu_eff / (3.0 * fc.rho)


def ns_poly(fc: FluidCoeffs, k: float) -> DispersionPoly:
    """Cubic of the viscous, heat-conducting single fluid.

    With a = k a1, a1 = 2 mu / (3 rho) and Pr = mu C_p / lam:
    X^3 + 2ia(1 + 3 gamma / (4 Pr)) X^2 - (c^2 + 3 gamma a^2 / Pr) X
    - 3i gamma a c_T^2 / (2 Pr).  Coefficients are evaluated in the
    equivalent form using mu and lam directly so that lam = 0 is regular.
    """
    if k <= 0.0:
        raise ValueError("k must be positive")
    rho, mu, lam, cv = fc.rho, fc.mu_eff, fc.lam, fc.C_v
    c2 = fc.c ** 2
    coeffs = (
        1.0 + 0j,
        1j * k / rho * (4.0 * mu / 3.0 + lam / cv),
        -(c2 + 4.0 * k * k * lam * mu / (3.0 * rho * rho * cv)) + 0j,
        -1j * k * lam * fc.c_T ** 2 / (rho * cv),
    )
    aux = {"a1": stokes_a1(fc), "Pr": fc.prandtl, "c": fc.c, "c_T": fc.c_T,
           "gamma": fc.gamma}
    return DispersionPoly(coeffs, k, "navier-stokes", aux)


def ns_poly_prandtl(fc: FluidCoeffs, k: float) -> tuple[complex, ...]:
    """The same cubic assembled from a1 and Pr (requires finite, nonzero Pr)."""
    a = k * stokes_a1(fc)
    pr, g, c2 = fc.prandtl, fc.gamma, fc.c ** 2
    return (1.0 + 0j,
            2j * a * (1.0 + 3.0 * g / (4.0 * pr)),
            -(c2 + 3.0 * g * a * a / pr) + 0j,
            -1.5j * g * a * fc.c_T ** 2 / pr)


def ns_root_product(fc: FluidCoeffs, k: float) -> complex:
    """Product of the three cubic roots, i 3 gamma k a1 c_T^2 / (2 Pr) = i 3 k a1 c^2 / (2 Pr)."""
    a = k * stokes_a1(fc)
    return 1.5j * a * fc.c ** 2 / fc.prandtl


def stokes_roots(fc: FluidCoeffs, k: float) -> ModeSet:
    """Closed-form roots of the purely viscous cubic: 0 and -i a +- sqrt(c^2 - a^2)."""
    a = k * stokes_a1(fc)
    if a >= fc.c:
        raise OverdampedError(f"k a1 = {a} >= c = {fc.c}: no propagating acoustic pair")
    ck = math.sqrt(fc.c ** 2 - a * a)
    return ModeSet(k, (
        Branch(k * complex(ck, -a), "acoustic+", k),
        Branch(k * complex(-ck, -a), "acoustic-", k),
        Branch(0j, "material", k),
    ))


def stokes_attenuation(fc: FluidCoeffs, k: float) -> float:
    return 2.0 * k * k * fc.mu_eff / (3.0 * fc.rho)


def thermal_knudsen(fc: FluidCoeffs, k: float) -> float:
    return k * fc.lam / (fc.rho * fc.C_p * fc.c)


def thermal_poly(fc: FluidCoeffs, k: float) -> DispersionPoly:
    """Cubic of the inviscid heat-conducting fluid in terms of Kn_th = k lam / (rho C_p c)."""
    kn, g, c = thermal_knudsen(fc, k), fc.gamma, fc.c
    coeffs = (1.0 + 0j, 1j * g * c * kn, -c * c + 0j, -1j * c ** 3 * kn)
    return DispersionPoly(coeffs, k, "thermal", {"Kn_th": kn, "c": c, "gamma": g})


def thermal_damping(fc: FluidCoeffs, k: float) -> tuple[float, float]:
    """Leading-order damping rates (acoustic, entropy) of the conducting fluid."""
    acoustic = (fc.gamma - 1.0) * k * k * fc.lam / (2.0 * fc.rho * fc.gamma * fc.C_v)
    entropy = k * k * fc.lam / (fc.rho * fc.gamma * fc.C_v)
    return acoustic, entropy


def ns_system(fc: FluidCoeffs) -> LinearSystem:
    """Linearized Navier-Stokes-Fourier system in W = (rho, u, s) at rest."""
    rho, T = fc.rho, fc.T
    A = [[0.0, rho, 0.0],
         [fc.c ** 2 / rho, 0.0, fc.Gamma * T],
         [0.0, 0.0, 0.0]]
    B = [[0.0, 0.0, 0.0],
         [0.0, 4.0 * fc.mu_eff / (3.0 * rho), 0.0],
         [fc.lam * fc.Gamma / rho ** 2, 0.0, fc.lam / (rho * fc.C_v)]]
    return LinearSystem(A, B, ("rho", "u", "s"), "navier-stokes", fc)


# two fluids, one velocity -----------------------------------------------------

def two_fluid_one_velocity_poly(mix: MixtureState, k: float) -> DispersionPoly:
    """Quadratic left after removing the triple zero root of the one-velocity model."""
    rho, mu, cw = mix.rho, mix.mu, wood_speed(mix)
    _warn_knudsen(k * mu / (rho * cw), "Kn_w")
    coeffs = (1.0 + 0j, 4j * mu * k / (3.0 * rho), -cw * cw + 0j)
    return DispersionPoly(coeffs, k, "one-velocity", {"mu": mu, "rho": rho, "c_w": cw},
                          zero_roots=3)


def one_velocity_viscous_system(mix: MixtureState) -> LinearSystem:
    """Viscous one-velocity mixture in W = (rho, u, eta, s+, s-) at rest."""
    from .dynamics import build_one_velocity_two_temperature
    base = build_one_velocity_two_temperature(mix)
    B = np.zeros((5, 5))
    B[1, 1] = 4.0 * mix.mu / (3.0 * mix.rho)
    return LinearSystem(base.A, B, base.labels, "one-velocity", mix)


# two fluids, two velocities with added mass -----------------------------------

def mu_kappa(mix: MixtureState, kappa: float) -> float:
    """Equivalent viscosity of the added-mass model (both algebraic forms checked)."""
    p, m = mix.plus, mix.minus
    mup, mum = p.mu_eff, m.mu_eff
    first = ((1.0 + kappa) * mix.mu + mix.alpha_plus * mum * p.rho / m.rho
             + mix.alpha_minus * mup * m.rho / p.rho)
    second = kappa * mix.mu + mix.rho * (mup / p.rho + mum / m.rho)
    if abs(first - second) > 1e-14 * max(abs(first), abs(second)):
        raise ArithmeticError(f"mu_kappa forms disagree: {first} vs {second}")
    return second


def mu_bar(mix: MixtureState) -> float:
    """Cross-weighted viscosity alpha+ mu- + alpha- mu+."""
    return mix.alpha_plus * mix.minus.mu_eff + mix.alpha_minus * mix.plus.mu_eff


def added_mass_poly(mix: MixtureState, kappa: float, k: float) -> DispersionPoly:
    """Cubic of the viscous two-velocity model with added mass, zero root removed."""
    if not 0.0 < mix.alpha_plus < 1.0:
        raise DegenerateMixtureError("added-mass model needs 0 < alpha+ < 1")
    p, m = mix.plus, mix.minus
    rho = mix.rho
    cw, ck = wood_speed(mix), c_kappa(mix, kappa)
    muk, mub = mu_kappa(mix, kappa), mu_bar(mix)
    for kn, name in zip(knudsen_phases(mix, k), ("Kn+", "Kn-")):
        _warn_knudsen(kn, name)
    coeffs = (
        1.0 + 0j,
        1j * k * 4.0 * muk / (3.0 * rho * (kappa + 1.0)),
        -(ck * ck + 16.0 * p.mu_eff * m.mu_eff * k * k
          / (9.0 * (kappa + 1.0) * p.rho * m.rho)) + 0j,
        -4j * k * mub * rho * cw * cw / (3.0 * p.rho * m.rho * (kappa + 1.0)),
    )
    aux = {"mu_kappa": muk, "mu_bar": mub, "c_kappa": ck, "c_w": cw, "kappa": kappa}
    return DispersionPoly(coeffs, k, "added-mass", aux, zero_roots=1)


def added_mass_diffusion(mix: MixtureState, kappa: float) -> np.ndarray:
    p, m = mix.plus, mix.minus
    ap, am = mix.alpha_plus, mix.alpha_minus
    rho = mix.rho
    k1 = rho * (1.0 + kappa)
    B = np.zeros((4, 4))
    B[2, 2] = (rho + kappa * ap * p.rho) / k1 * 4.0 * p.mu_eff / (3.0 * p.rho)
    B[2, 3] = 4.0 * kappa * am * m.mu_eff / (3.0 * k1)
    B[3, 2] = 4.0 * kappa * ap * p.mu_eff / (3.0 * k1)
    B[3, 3] = (rho + kappa * am * m.rho) / k1 * 4.0 * m.mu_eff / (3.0 * m.rho)
    return B


def added_mass_matrices(mix: MixtureState, kappa: float) -> LinearSystem:
    """Convection and diffusion matrices of the added-mass model at rest.

    The state vector is W = (alpha+, p, u+, u-).
    """
    return LinearSystem(added_mass_convection(mix, kappa), added_mass_diffusion(mix, kappa),
                        ("alpha+", "p", "u+", "u-"), "added-mass", (mix, kappa))


def pencil_quartic(system: LinearSystem, k: float) -> tuple[complex, ...]:
    """det(X I - A + i k B) as a monic polynomial in X.

    This is det(-i omega I + i k A + k^2 B) divided by (-i k)^N, expanded
    in exact arithmetic independently of any closed-form dispersion relation.
    """
    return tuple(exact_pencil_charpoly(system.A, system.B, k))


def deflate_zero_root(coeffs) -> tuple[tuple[complex, ...], complex]:
    """Synthetic division by X; returns (quotient, remainder)."""
    coeffs = list(coeffs)
    return tuple(coeffs[:-1]), coeffs[-1]


# root finding -------------------------------------------------------------------

def classify_roots(roots: np.ndarray) -> list[str]:
    """acoustic+/- for the extreme-real-part pair, material for the rest."""
    n = len(roots)
    kinds = ["material"] * n
    if n < 2:
        return kinds
    hi = int(np.argmax(roots.real))
    lo = int(np.argmin(roots.real))
    if hi != lo and roots[hi].real > 0.0 > roots[lo].real:
        kinds[hi] = "acoustic+"
        kinds[lo] = "acoustic-"
    elif n == 2:
        kinds = ["acoustic+", "acoustic-"] if hi != lo else kinds
    return kinds


def solve_poly(poly: DispersionPoly) -> ModeSet:
    """All roots of a dispersion polynomial as classified branches.

    Exactly vanishing trailing coefficients are factored out first; the
    remaining roots come from Aberth-Ehrlich iteration.  Branches are ordered
    by decreasing real part, then increasing imaginary part.
    """
    if poly.degree < 1:
        raise ValueError("polynomial must have degree >= 1")
    if poly.coeffs[0] != 1:
        raise ValueError("polynomial must be monic")
    reduced, zeros = strip_zero_roots(poly.coeffs)
    roots = list(aberth(reduced)) if len(reduced) > 1 else []
    roots += [0j] * zeros
    roots = np.array(sorted(roots, key=lambda z: (-z.real, z.imag)), dtype=complex)
    kinds = classify_roots(roots)
    return ModeSet(poly.k, tuple(Branch(poly.k * r, kind, poly.k)
                                 for r, kind in zip(roots, kinds)))


def residuals(poly: DispersionPoly, modes: ModeSet) -> np.ndarray:
    return np.array([abs(poly(x)) for x in modes.speeds])


# frequency-dependent bubbly-liquid models ---------------------------------------

def minnaert(mix: MixtureState, R: float) -> float:
    """Resonance frequency (rad/s) of a gas bubble of radius R in the liquid."""
    return mix.minus.c / R * math.sqrt(3.0 * mix.minus.rho / mix.plus.rho)


def foldy_inverse_c2(mix: MixtureState, R: float, omega: float) -> complex:
    """Complex k^2 / omega^2 of a liquid ("+") carrying gas bubbles ("-") of radius R."""
    if R <= 0.0 or omega < 0.0:
        raise ValueError("need R > 0 and omega >= 0")
    p, m = mix.plus, mix.minus
    resonance = (R * R * p.rho * omega ** 2 / (3.0 * m.rho * m.c ** 2)
                 * (1.0 + 1j * R * omega / p.c))
    bubbles = (mix.alpha_minus / (m.rho * m.c ** 2)) / (1.0 - resonance)
    return mix.alpha_plus * p.rho * (1.0 / (p.rho * p.c ** 2) + bubbles)


def foldy_low_frequency_limit(mix: MixtureState) -> float:
    p, m = mix.plus, mix.minus
    return mix.alpha_plus * p.rho * (1.0 / (p.rho * p.c ** 2)
                                     + mix.alpha_minus / (m.rho * m.c ** 2))


def attenuating_slowness(inv_c2: complex) -> complex:
    """Square root of 1/c^2 on the branch with nonnegative imaginary part."""
    s = cmath.sqrt(inv_c2)
    if s.imag < 0.0 or (s.imag == 0.0 and s.real < 0.0):
        s = -s
    return s


def foldy_speed(mix: MixtureState, R: float, omega: float) -> tuple[float, float, complex]:
    """(phase speed, attenuation Im k, complex k) of the Foldy medium."""
    s = attenuating_slowness(foldy_inverse_c2(mix, R, omega))
    return 1.0 / s.real, omega * s.imag, omega * s


def bubble_compressibility(mix: MixtureState, R: float, omega: float, lambda_plus: float,
                           L: float, dPdT: float, Cp_plus: float) -> complex:
    """Effective bubble compressibility K_b including evaporation and condensation."""
    m = mix.minus
    return (1.0 / (m.rho * m.c ** 2)
            + 3.0 * lambda_plus / (m.rho * L * dPdT)
            * (math.sqrt(Cp_plus / (lambda_plus * omega)) / R + 1j / (R * R * omega)))


def trammell_rhs(mix: MixtureState, R: float, omega: float, k: complex,
                 lambda_plus: float, L: float, dPdT: float, Cp_plus: float) -> complex:
    """Right-hand side k^2 / omega^2 of the phase-change bubbly model at wavenumber k."""
    p = mix.plus
    ap, am = mix.alpha_plus, mix.alpha_minus
    K_b = bubble_compressibility(mix, R, omega, lambda_plus, L, dPdT, Cp_plus)
    # the bubble term scales with the compressibility K_b (1/Pa), as in the Foldy medium
    bubble = ap * K_b / (1.0 - R * R * p.rho * omega ** 2 * K_b / 3.0 * (1.0 + 1j * k * R))
    return am / (1.0 + 2.0 * ap) * p.rho * (1.0 / (p.rho * p.c ** 2) + bubble)


def trammell_k(mix: MixtureState, R: float, omega: float, lambda_plus: float,
               L: float, dPdT: float, Cp_plus: float, relaxation: float = 0.5,
               tol: float = 1e-12, max_iter: int = 500) -> complex:
    """Wavenumber of the phase-change bubbly model by damped fixed-point iteration."""
    if omega <= 0.0 or min(R, lambda_plus, L, dPdT, Cp_plus) <= 0.0:
        raise ValueError("omega and all phase-change parameters must be positive")
    k = complex(omega / wood_speed(mix))
    trace = [k]
    for _ in range(max_iter):
        target = omega * attenuating_slowness(
            trammell_rhs(mix, R, omega, k, lambda_plus, L, dPdT, Cp_plus))
        new = (1.0 - relaxation) * k + relaxation * target
        trace.append(new)
        if abs(new - k) < tol * abs(new):
            return new
        k = new
    raise NonConvergenceError("phase-change wavenumber iteration did not converge",
                              [abs(t) for t in trace[-5:]])
