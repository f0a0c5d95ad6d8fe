"""Linearized convection matrices of the inviscid models and their spectra.

Every model is written as W_t + A W_x = B W_xx around a constant state;
the inviscid models have B = 0 and eigenvalues of A are the wave speeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.optimize import bisect

from .eos import FluidCoeffs
from .mixture import (DegenerateMixtureError, MixtureState, equilibrium_speed,
                      wood_speed)
from .polyroots import real_matrix_eigenvalues


class HyperbolicityError(ArithmeticError):
    """Raised when a convection matrix has eigenvalues off the real axis."""


@dataclass
class LinearSystem:
    A: np.ndarray
    B: np.ndarray
    labels: tuple[str, ...]
    model_tag: str
    base_state: Any
    u0: float = 0.0
    material_speeds: tuple[float, ...] = field(default=())

    def __post_init__(self):
        self.A = np.asarray(self.A, dtype=float)
        self.B = np.asarray(self.B, dtype=float)
        n = len(self.labels)
        if self.A.shape != (n, n) or self.B.shape != (n, n):
            raise ValueError("A, B and labels must agree in size")
        if not self.material_speeds:
            self.material_speeds = (self.u0,)

    @property
    def size(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class EigenSet:
    values: np.ndarray
    classification: tuple[str, ...]


# closed-form speeds ---------------------------------------------------------

def c0(mix: MixtureState) -> float:
    """Two-velocity speed of sound without interphase coupling."""
    p, m = mix.plus, mix.minus
    num = m.c ** 2 * p.c ** 2 * (mix.alpha_plus * m.rho + mix.alpha_minus * p.rho)
    return math.sqrt(num / mix.pi_bar)


def c_kappa(mix: MixtureState, kappa: float) -> float:
    """Two-velocity speed with added-mass coefficient ``kappa``."""
    if kappa < 0.0:
        raise ValueError("kappa must be nonnegative")
    if kappa == 0.0:
        return c0(mix)
    p, m = mix.plus, mix.minus
    rho = mix.rho
    weight = (mix.alpha_plus * (rho + kappa * p.rho) / (rho * (1.0 + kappa) * p.rho)
              + mix.alpha_minus * (rho + kappa * m.rho) / (rho * (1.0 + kappa) * m.rho))
    return math.sqrt(weight * p.rho * m.rho * p.c ** 2 * m.c ** 2 / mix.pi_bar)


def c_kappa_interpolated(mix: MixtureState, kappa: float) -> float:
    """The same speed as a weighted mean of c_w^2 and c_0^2."""
    return math.sqrt((kappa * wood_speed(mix) ** 2 + c0(mix) ** 2) / (kappa + 1.0))


# one-velocity models --------------------------------------------------------

def mixture_pressure(mix: MixtureState, rho: float, eta: float) -> float:
    """Pressure excess over the base state of the mechanical-equilibrium mixture.

    Each phase follows its isentrope linearized at the base pressure,
    rho_k(p) = rho_k + dp / c_k^2; eta = eta+ - eta-.
    """
    eta_p, eta_m = 0.5 * (1.0 + eta), 0.5 * (1.0 - eta)
    p, m = mix.plus, mix.minus

    def residual(dp):
        return (eta_p / (p.rho + dp / p.c ** 2) + eta_m / (m.rho + dp / m.c ** 2)
                - 1.0 / rho)

    stiff = min(p.rho * p.c ** 2, m.rho * m.c ** 2)
    lo, hi = -1e-3 * stiff, 1e-3 * stiff
    # widen until the root is bracketed; phase densities stay positive for dp > -stiff
    while residual(lo) * residual(hi) > 0.0:
        lo = max(2.0 * lo, -(1.0 - 1e-12) * stiff)
        hi *= 2.0
        if hi > 1e12 * stiff:
            raise ArithmeticError("mixture pressure could not be bracketed")
    return bisect(residual, lo, hi, xtol=1e-16 * (hi - lo), rtol=1e-15, maxiter=400)


def mixture_pressure_derivatives(mix: MixtureState, rel_step: float = 1e-6) -> tuple[float, float]:
    """Centered differences of P(rho, eta): (dp/drho at fixed eta, dp/deta at fixed rho)."""
    rho = mix.rho
    eta = mix.eta_plus - mix.eta_minus
    h_rho = rel_step * rho
    h_eta = rel_step
    dp_drho = (mixture_pressure(mix, rho + h_rho, eta)
               - mixture_pressure(mix, rho - h_rho, eta)) / (2.0 * h_rho)
    dp_deta = (mixture_pressure(mix, rho, eta + h_eta)
               - mixture_pressure(mix, rho, eta - h_eta)) / (2.0 * h_eta)
    return dp_drho, dp_deta


def build_one_velocity_isentropic(mix: MixtureState, u0: float = 0.0) -> LinearSystem:
    """3x3 system in W = (rho, u, eta)."""
    rho = mix.rho
    cw = wood_speed(mix)
    _, dp_deta = mixture_pressure_derivatives(mix)
    A = [[u0, rho, 0.0],
         [cw ** 2 / rho, u0, dp_deta / rho],
         [0.0, 0.0, u0]]
    return LinearSystem(A, np.zeros((3, 3)), ("rho", "u", "eta"),
                        "one-velocity-isentropic", mix, u0)


def build_one_velocity_two_temperature(mix: MixtureState, u0: float = 0.0) -> LinearSystem:
    """5x5 system in W = (rho, u, eta, s+, s-) with frozen phase entropies."""
    rho = mix.rho
    cw = wood_speed(mix)
    _, dp_deta = mixture_pressure_derivatives(mix)
    p, m = mix.plus, mix.minus
    scale = rho ** 2 * cw ** 2
    dp_dsp = scale * mix.eta_plus * p.Gamma * p.T / (p.rho * p.c ** 2)
    dp_dsm = scale * mix.eta_minus * m.Gamma * m.T / (m.rho * m.c ** 2)
    A = np.diag([u0] * 5)
    A[0, 1] = rho
    A[1, :] = [cw ** 2 / rho, u0, dp_deta / rho, dp_dsp / rho, dp_dsm / rho]
    return LinearSystem(A, np.zeros((5, 5)), ("rho", "u", "eta", "s+", "s-"),
                        "one-velocity-two-temperature", mix, u0)


def build_thermal_equilibrium(mix: MixtureState, u0: float = 0.0) -> LinearSystem:
    """4x4 system in W = (rho, u, eta, s) with a common phase temperature.

    dp/ds uses the mixture analogue of rho Gamma T; the eta column carries
    the frozen-composition derivative.  Neither affects the spectrum.
    """
    rho = mix.rho
    _, ceq = equilibrium_speed(mix)
    _, dp_deta = mixture_pressure_derivatives(mix)
    chi = mix.alpha_plus * mix.plus.chi + mix.alpha_minus * mix.minus.chi
    cp = mix.eta_plus * mix.plus.C_p + mix.eta_minus * mix.minus.C_p
    dp_ds = rho * chi * ceq ** 2 * mix.plus.T / cp
    A = np.diag([u0] * 4)
    A[0, 1] = rho
    A[1, :] = [ceq ** 2 / rho, u0, dp_deta / rho, dp_ds / rho]
    return LinearSystem(A, np.zeros((4, 4)), ("rho", "u", "eta", "s"),
                        "thermal-equilibrium", mix, u0)


# two-velocity models --------------------------------------------------------

def _require_two_phases(mix: MixtureState) -> None:
    if mix.alpha_plus <= 0.0 or mix.alpha_plus >= 1.0:
        raise DegenerateMixtureError("two-velocity models need 0 < alpha+ < 1")


def build_two_velocity_isentropic(mix: MixtureState, u0: float = 0.0) -> LinearSystem:
    """4x4 system in W = (p, alpha+, u+, u-) at equal phase velocities."""
    _require_two_phases(mix)
    p, m = mix.plus, mix.minus
    ap, am = mix.alpha_plus, mix.alpha_minus
    pi = mix.pi_bar
    stiff = p.rho * m.rho * p.c ** 2 * m.c ** 2 / pi
    A = [[u0, 0.0, stiff * ap, stiff * am],
         [0.0, u0, am * p.rho * p.c ** 2 * ap / pi, -ap * m.rho * m.c ** 2 * am / pi],
         [1.0 / p.rho, 0.0, u0, 0.0],
         [1.0 / m.rho, 0.0, 0.0, u0]]
    return LinearSystem(A, np.zeros((4, 4)), ("p", "alpha+", "u+", "u-"),
                        "two-velocity-isentropic", mix, u0)


def added_mass_convection(mix: MixtureState, kappa: float, u_plus: float = 0.0,
                          u_minus: float = 0.0) -> np.ndarray:
    """Convection matrix of the added-mass model in W = (alpha+, p, u+, u-)."""
    _require_two_phases(mix)
    if kappa < 0.0:
        raise ValueError("kappa must be nonnegative")
    p, m = mix.plus, mix.minus
    ap, am = mix.alpha_plus, mix.alpha_minus
    rho, pi = mix.rho, mix.pi_bar
    k1 = rho * (1.0 + kappa)
    stiff = p.rho * m.rho * p.c ** 2 * m.c ** 2
    du = u_plus - u_minus
    return np.array([
        [(am * p.rho * p.c ** 2 * u_plus + ap * m.rho * m.c ** 2 * u_minus) / pi,
         ap * am * du / pi,
         ap * am * p.rho * p.c ** 2 / pi,
         -ap * am * m.rho * m.c ** 2 / pi],
        [stiff * du / pi,
         (ap * m.rho * m.c ** 2 * u_plus + am * p.rho * p.c ** 2 * u_minus) / pi,
         ap * stiff / pi,
         am * stiff / pi],
        [0.0, (rho + kappa * p.rho) / (k1 * p.rho),
         (rho + kappa * ap * p.rho) / k1 * u_plus, kappa * am * m.rho / k1 * u_minus],
        [0.0, (rho + kappa * m.rho) / (k1 * m.rho),
         kappa * ap * p.rho / k1 * u_plus, (rho + kappa * am * m.rho) / k1 * u_minus],
    ])


def build_added_mass(mix: MixtureState, kappa: float) -> LinearSystem:
    """Inviscid added-mass model at rest."""
    return LinearSystem(added_mass_convection(mix, kappa), np.zeros((4, 4)),
                        ("alpha+", "p", "u+", "u-"), "added-mass", (mix, kappa))


def build_baer_nunziato(state_plus: FluidCoeffs, state_minus: FluidCoeffs,
                        alpha_plus: float, u_plus: float = 0.0,
                        u_minus: float = 0.0) -> LinearSystem:
    """7x7 Jacobian of the Baer-Nunziato convective system.

    Variables (alpha+, rho+, u+, p+, rho-, u-, p-); interface velocity u+ and
    interface pressure p-, phase pressures may differ.
    """
    if not 0.0 < alpha_plus < 1.0:
        raise DegenerateMixtureError("Baer-Nunziato needs 0 < alpha+ < 1")
    P, M = state_plus, state_minus
    ap, am = alpha_plus, 1.0 - alpha_plus
    u_i, p_i = u_plus, M.p
    A = np.zeros((7, 7))
    A[0, 0] = u_i
    # phase "+"
    A[1, 0] = P.rho * (u_plus - u_i) / ap
    A[1, 1], A[1, 2] = u_plus, P.rho
    A[2, 0] = (P.p - p_i) / (ap * P.rho)
    A[2, 2], A[2, 3] = u_plus, 1.0 / P.rho
    A[3, 0] = (P.rho * P.c ** 2 + P.Gamma * (p_i - P.p)) * (u_plus - u_i) / ap
    A[3, 2], A[3, 3] = P.rho * P.c ** 2, u_plus
    # phase "-"; its volume fraction gradient is -alpha+_x
    A[4, 0] = -M.rho * (u_minus - u_i) / am
    A[4, 4], A[4, 5] = u_minus, M.rho
    A[5, 0] = -(M.p - p_i) / (am * M.rho)
    A[5, 5], A[5, 6] = u_minus, 1.0 / M.rho
    A[6, 0] = -(M.rho * M.c ** 2 + M.Gamma * (p_i - M.p)) * (u_minus - u_i) / am
    A[6, 5], A[6, 6] = M.rho * M.c ** 2, u_minus
    labels = ("alpha+", "rho+", "u+", "p+", "rho-", "u-", "p-")
    return LinearSystem(A, np.zeros((7, 7)), labels, "baer-nunziato",
                        (state_plus, state_minus, alpha_plus), u_plus,
                        material_speeds=(u_plus, u_minus))


# spectra --------------------------------------------------------------------

def eigenvalues(sys: LinearSystem) -> EigenSet:
    """Real eigenvalues of the convection matrix, sorted, with wave classification.

    Raises HyperbolicityError when an imaginary part exceeds 1e-9 times the
    spectral radius.
    """
    if sys.size > 8:
        raise ValueError("eigenvalue path supports N <= 8")
    roots = real_matrix_eigenvalues(sys.A)
    radius = float(np.max(np.abs(roots))) if len(roots) else 0.0
    tol = 1e-9 * radius
    bad = [r for r in roots if abs(r.imag) > tol]
    if bad:
        raise HyperbolicityError(f"{sys.model_tag}: complex eigenvalues {bad}")
    values = np.sort(roots.real)
    tags = []
    for v in values:
        if any(abs(v - s) <= tol for s in sys.material_speeds):
            tags.append("material")
        elif v > sys.u0:
            tags.append("pressure+")
        else:
            tags.append("pressure-")
    return EigenSet(values, tuple(tags))


def expected_spectrum(sys: LinearSystem) -> np.ndarray:
    """Closed-form eigenvalue multiset of a system built by this module."""
    tag, u0 = sys.model_tag, sys.u0
    if tag == "baer-nunziato":
        P, M, _ = sys.base_state
        up, um = sys.material_speeds
        vals = [up, up, up - P.c, up + P.c, um, um - M.c, um + M.c]
    elif tag == "added-mass":
        mix, kappa = sys.base_state
        c = c_kappa(mix, kappa)
        vals = [0.0, 0.0, -c, c]
    else:
        mix = sys.base_state
        if tag == "one-velocity-isentropic":
            c, zeros = wood_speed(mix), 1
        elif tag == "one-velocity-two-temperature":
            c, zeros = wood_speed(mix), 3
        elif tag == "thermal-equilibrium":
            c, zeros = equilibrium_speed(mix)[1], 2
        elif tag == "two-velocity-isentropic":
            c, zeros = c0(mix), 2
        else:
            raise ValueError(f"no closed form for {tag}")
        vals = [u0] * zeros + [u0 - c, u0 + c]
    return np.sort(np.array(vals, dtype=float))


@dataclass(frozen=True)
class SuiteResult:
    model: str
    computed: np.ndarray
    expected: np.ndarray
    rel_err: float


def eigen_suite(mix: MixtureState, kappa: float = 10.0,
                velocities: tuple[float, float] = (0.0, 0.0)) -> list[SuiteResult]:
    """Computed and closed-form spectra of every inviscid model at one state.

    The error is the largest eigenvalue mismatch relative to the spectral radius.
    """
    systems = [build_one_velocity_isentropic(mix), build_one_velocity_two_temperature(mix),
               build_thermal_equilibrium(mix), build_two_velocity_isentropic(mix),
               build_added_mass(mix, kappa),
               build_baer_nunziato(mix.plus, mix.minus, mix.alpha_plus, *velocities)]
    out = []
    for sys in systems:
        got = eigenvalues(sys).values
        want = expected_spectrum(sys)
        scale = max(float(np.max(np.abs(want))), 1e-300)
        out.append(SuiteResult(sys.model_tag, got, want,
                               float(np.max(np.abs(got - want))) / scale))
    return out
