"""Asymptotic root expansions and empirical convergence-order checks.

Each expansion is a truncated power series in a small parameter; the
``convergence_order`` helper fits the decay rate of its remainder against the
exact roots computed by ``dispersion.solve_poly``.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .dispersion import (KNUDSEN_LIMIT, added_mass_poly, knudsen, knudsen_phases, mu_kappa,
                         ns_poly, solve_poly, stokes_a1, thermal_knudsen, thermal_poly)
from .dynamics import c_kappa
from .eos import FluidCoeffs
from .mixture import DegenerateMixtureError, MixtureState, wood_speed


class DegenerateFitError(ValueError):
    """Raised when a convergence fit would be dominated by round-off."""


@dataclass(frozen=True)
class Expansion:
    """Truncated series sum_i terms[i] * v**(leading_power + i) in the variable ``variable_tag``.

    ``claimed_order`` is the power of the first neglected term.
    """

    terms: tuple[complex, ...]
    variable_tag: str
    claimed_order: int
    branch_tag: str
    leading_power: int = 0

    def __post_init__(self):
        if self.claimed_order < 1:
            raise ValueError("claimed_order must be >= 1")
        if not all(cmath.isfinite(complex(t)) for t in self.terms):
            raise ValueError("expansion terms must be finite")

    def __call__(self, v: float) -> complex:
        return sum(t * v ** (self.leading_power + i) for i, t in enumerate(self.terms))


# single fluid, Prandtl-number expansions ----------------------------------------

def _stokes_speed(c2: float, a: float) -> complex:
    return cmath.sqrt(c2 - a * a)


def prandtl_polys(fc: FluidCoeffs, k: float) -> tuple[tuple[complex, ...], tuple[complex, ...]]:
    """The two Prandtl-independent quadratics Q and Q_T (coefficients highest first)."""
    a = k * stokes_a1(fc)
    return ((1.0, 2j * a, -fc.c ** 2), (1.0, 2j * a, -fc.c ** 2 / fc.gamma))


def factorized_cubic(fc: FluidCoeffs, k: float, Pr: float) -> tuple[complex, ...]:
    """X Q(X) + i k a1 (3 gamma / 2 Pr) Q_T(X), expanded."""
    a = k * stokes_a1(fc)
    q, qt = prandtl_polys(fc, k)
    s = 1.5j * a * fc.gamma / Pr
    return (q[0] + 0j, q[1] + s * qt[0], q[2] + s * qt[1], s * qt[2])


def with_prandtl(fc: FluidCoeffs, Pr: float) -> FluidCoeffs:
    """Same fluid with the conductivity set so that mu C_p / lam = Pr."""
    return fc.with_transport(lam=fc.mu_eff * fc.C_p / Pr)


def large_pr_expansions(fc: FluidCoeffs, k: float) -> tuple[Expansion, Expansion, Expansion]:
    """First-order expansions in 1/Pr of the (-, 0, +) roots."""
    a = k * stokes_a1(fc)
    ck = _stokes_speed(fc.c ** 2, a)
    g = fc.gamma
    out = []
    for sign, tag in ((-1.0, "acoustic-"), (1.0, "acoustic+")):
        x0 = -1j * a + sign * ck
        x1 = sign * 3.0 * (g - 1.0) * a * (a - sign * 1j * ck) / (4.0 * ck)
        out.append(Expansion((x0, x1), "1/Pr", 2, tag))
    material = Expansion((0j, -1.5j * a), "1/Pr", 2, "material")
    return out[0], material, out[1]


def large_pr_generic(fc: FluidCoeffs, k: float, Pr: float) -> np.ndarray:
    """Implicit-function first-order correction evaluated directly from Q and Q_T."""
    a = k * stokes_a1(fc)
    ck = _stokes_speed(fc.c ** 2, a)
    q, qt = prandtl_polys(fc, k)
    out = []
    for x0 in (-1j * a - ck, 0j, -1j * a + ck):
        Q = np.polyval(q, x0)
        dQ = 2.0 * x0 + q[1]
        out.append(x0 - 1.5j * a * fc.gamma / Pr * np.polyval(qt, x0) / (Q + x0 * dQ))
    return np.array(out)


def large_pr_roots(fc: FluidCoeffs, k: float, Pr: float) -> np.ndarray:
    """Approximate (-, 0, +) roots of the viscous, conducting cubic for large Pr."""
    return np.array([e(1.0 / Pr) for e in large_pr_expansions(fc, k)])


def small_pr_expansions(fc: FluidCoeffs, k: float) -> tuple[Expansion, Expansion, Expansion]:
    """First-order expansions in Pr of the (-, 0, +) roots.

    The large root is i k a1 times 3 gamma / (2 Pr) with the sign that makes
    the three-root sum equal the X^2 coefficient, i.e. a damped mode.
    """
    a = k * stokes_a1(fc)
    g, c2 = fc.gamma, fc.c ** 2
    cTk = _stokes_speed(fc.c_T ** 2, a)
    out = []
    for sign, tag in ((-1.0, "acoustic-"), (1.0, "acoustic+")):
        x0 = -1j * a + sign * cTk
        x1 = -sign * (g - 1.0) * c2 * (a + sign * 1j * cTk) / (3.0 * g * g * a * cTk)
        out.append(Expansion((x0, x1), "Pr", 2, tag))
    material = Expansion((-1.5j * a * g,), "Pr", 1, "material", leading_power=-1)
    return out[0], material, out[1]


def small_pr_roots(fc: FluidCoeffs, k: float, Pr: float) -> np.ndarray:
    """Approximate (-, 0, +) roots of the viscous, conducting cubic for small Pr."""
    return np.array([e(Pr) for e in small_pr_expansions(fc, k)])


def isothermal_limit(fc: FluidCoeffs, k: float) -> np.ndarray:
    """Limits of the two acoustic roots as Pr -> 0: -i k a1 -+ c_T(k)."""
    a = k * stokes_a1(fc)
    cTk = _stokes_speed(fc.c_T ** 2, a)
    return np.array([-1j * a - cTk, -1j * a + cTk])


# single fluid, Knudsen-number expansions ----------------------------------------

def stokes_expansion(fc: FluidCoeffs, k: float) -> tuple[float, float]:
    """Second-order phase speed and exact attenuation of the purely viscous fluid."""
    kn = knudsen(fc, k)
    if kn > KNUDSEN_LIMIT:
        warnings.warn(f"Kn = {kn:.3g} exceeds the continuum limit", stacklevel=2)
    mu, rho, c = fc.mu_eff, fc.rho, fc.c
    return c - 2.0 * k * k * mu * mu / (9.0 * rho * rho * c), 2.0 * k * k * mu / (3.0 * rho)


def stokes_speed_exact(fc: FluidCoeffs, k: float) -> float:
    """c sqrt(1 - 4 Kn^2 / 9), evaluated without cancellation."""
    x = 4.0 * knudsen(fc, k) ** 2 / 9.0
    return fc.c * (1.0 + math.expm1(0.5 * math.log1p(-x)))


def thermal_first_order(fc: FluidCoeffs, k: float) -> np.ndarray:
    """Leading-order (-, 0, +) roots of the inviscid conducting cubic."""
    g, lam, rho, cv = fc.gamma, fc.lam, fc.rho, fc.C_v
    acoustic = -1j * (g - 1.0) * k * lam / (2.0 * rho * g * cv)
    entropy = -1j * k * lam / (rho * g * cv)
    return np.array([-fc.c + acoustic, entropy, fc.c + acoustic])


# two velocities with added mass -------------------------------------------------

@dataclass(frozen=True)
class TwoVelocityCoefficients:
    c_kappa: float
    c_w: float
    phi_plus: float
    phi_minus: float
    c_tilde_plus: float
    c_tilde_minus: float
    theta_plus: float
    theta_minus: float
    delta: float


def two_velocity_coefficients(mix: MixtureState, kappa: float) -> TwoVelocityCoefficients:
    """Expansion coefficients of the added-mass acoustic roots ("+" branch signs)."""
    if not 0.0 < mix.alpha_plus < 1.0:
        raise DegenerateMixtureError("two-velocity expansions need 0 < alpha+ < 1")
    p, m = mix.plus, mix.minus
    ap, am = mix.alpha_plus, mix.alpha_minus
    rho = mix.rho
    ck, cw = c_kappa(mix, kappa), wood_speed(mix)
    ck2, cw2 = ck * ck, cw * cw
    k1 = kappa + 1.0
    den = k1 * p.rho * m.rho * ck2

    phi_p = (m.rho * (rho + kappa * ap * p.rho) * ck2 - rho * rho * am * cw2) / den
    phi_m = (p.rho * (rho + kappa * am * m.rho) * ck2 - rho * rho * ap * cw2) / den
    ct_p = (2.0 * (rho * rho * am * cw2 - m.rho * (rho + kappa * ap * p.rho) * ck2) * p.c
            / (3.0 * k1 * rho * m.rho * ck2))
    ct_m = (2.0 * (rho * rho * ap * cw2 - p.rho * (rho + kappa * am * m.rho) * ck2) * m.c
            / (3.0 * k1 * rho * p.rho * ck2))
    theta_p = phi_p * (k1 * m.rho * p.rho * phi_p * ck2 + 4.0 * rho * rho * am * cw2) / den
    theta_m = phi_m * (k1 * m.rho * p.rho * phi_m * ck2 + 4.0 * rho * rho * ap * cw2) / den
    delta = (ck2 * k1 * m.rho * p.rho * phi_p * phi_m
             + 2.0 * cw2 * rho * rho * (am * phi_m + ap * phi_p)
             - 2.0 * ck2 * rho * rho) / den
    return TwoVelocityCoefficients(ck, cw, phi_p, phi_m, ct_p, ct_m, theta_p, theta_m, delta)


def _check_two_velocity_knudsen(mix: MixtureState, k: float) -> None:
    for kn, name in zip(knudsen_phases(mix, k), ("Kn+", "Kn-")):
        if kn > KNUDSEN_LIMIT:
            warnings.warn(f"{name} = {kn:.3g} exceeds the continuum limit", stacklevel=3)


def two_velocity_first_order(mix: MixtureState, kappa: float, k: float) -> np.ndarray:
    """(+, -) acoustic roots of the added-mass model to first order in Kn+-.

    The Knudsen-number form and the viscosity form are both evaluated and must
    agree to 1e-12 relative.
    """
    _check_two_velocity_knudsen(mix, k)
    co = two_velocity_coefficients(mix, kappa)
    knp, knm = knudsen_phases(mix, k)
    kn_form = 1j * (co.c_tilde_plus * knp + co.c_tilde_minus * knm)
    mu_form = -2j * k / (3.0 * mix.rho) * (co.phi_plus * mix.plus.mu_eff
                                           + co.phi_minus * mix.minus.mu_eff)
    if abs(kn_form - mu_form) > 1e-12 * max(abs(mu_form), 1e-300):
        raise ArithmeticError(f"first-order forms disagree: {kn_form} vs {mu_form}")
    return np.array([co.c_kappa + mu_form, -co.c_kappa + mu_form])


def mu_phi(mix: MixtureState, kappa: float) -> float:
    co = two_velocity_coefficients(mix, kappa)
    return co.phi_plus * mix.plus.mu_eff + co.phi_minus * mix.minus.mu_eff


def mu_theta_sq(mix: MixtureState, kappa: float) -> float:
    co = two_velocity_coefficients(mix, kappa)
    mp, mm = mix.plus.mu_eff, mix.minus.mu_eff
    return co.theta_plus * mp * mp + 2.0 * co.delta * mp * mm + co.theta_minus * mm * mm


def two_velocity_second_order(mix: MixtureState, kappa: float, k: float) -> np.ndarray:
    """(+, -) acoustic roots of the added-mass model to second order in Kn+-."""
    first = two_velocity_first_order(mix, kappa, k)
    ck = c_kappa(mix, kappa)
    shift = 2.0 * k * k * mu_theta_sq(mix, kappa) / (9.0 * mix.rho ** 2 * ck)
    return np.array([first[0] - shift, first[1] + shift])


def viscous_summary(model: str, k: float, fc: FluidCoeffs | None = None,
                    mix: MixtureState | None = None,
                    kappa: float | None = None) -> tuple[float, float]:
    """Second-order phase speed and attenuation of the three viscous models.

    ``model`` is one of "one-fluid", "one-velocity", "two-velocity".
    """
    if model == "one-fluid":
        return stokes_expansion(fc, k)
    if model == "one-velocity":
        rho, mu, cw = mix.rho, mix.mu, wood_speed(mix)
        return cw - 2.0 * k * k * mu * mu / (9.0 * rho * rho * cw), 2.0 * k * k * mu / (3.0 * rho)
    if model == "two-velocity":
        ck = c_kappa(mix, kappa)
        c = ck - 2.0 * k * k * mu_theta_sq(mix, kappa) / (9.0 * mix.rho ** 2 * ck)
        return c, 2.0 * k * k * mu_phi(mix, kappa) / (3.0 * mix.rho)
    raise ValueError(f"unknown model {model!r}")


def two_velocity_vieta_constant(mix: MixtureState, kappa: float, k: float) -> complex:
    """Product of the three added-mass roots, i.e. minus the constant coefficient."""
    p, m = mix.plus, mix.minus
    mub = mix.alpha_plus * m.mu_eff + mix.alpha_minus * p.mu_eff
    cw = wood_speed(mix)
    return 4j * k * mub * mix.rho * cw * cw / (3.0 * p.rho * m.rho * (kappa + 1.0))


# fitting and matching -----------------------------------------------------------

def match_roots(exact: Sequence[complex], approx: Sequence[complex]) -> np.ndarray:
    """Reorder ``exact`` so that exact[i] is the root paired with approx[i].

    Pairing minimizes the total distance (optimal assignment).
    """
    exact = np.asarray(exact, dtype=complex)
    approx = np.asarray(approx, dtype=complex)
    cost = np.abs(approx[:, None] - exact[None, :])
    rows, cols = linear_sum_assignment(cost)
    out = np.empty(len(approx), dtype=complex)
    out[rows] = exact[cols]
    return out


def convergence_order(exact: Sequence[complex], approx: Sequence[complex],
                      params: Sequence[float]) -> float:
    """Least-squares slope of log|exact - approx| against log(param)."""
    exact = np.asarray(exact, dtype=complex)
    approx = np.asarray(approx, dtype=complex)
    params = np.asarray(params, dtype=float)
    if len(params) < 3:
        raise ValueError("need at least three parameter points")
    diffs = np.diff(params)
    if not (np.all(diffs > 0) or np.all(diffs < 0)):
        raise ValueError("parameters must be monotone")
    if np.any(params <= 0):
        raise ValueError("parameters must be positive")
    errors = np.abs(exact - approx)
    scale = max(float(np.max(np.abs(exact))), float(np.max(np.abs(approx))))
    if np.any(errors <= 1e-15 * scale):
        raise DegenerateFitError(
            f"remainder {errors.min():.3g} at round-off level of scale {scale:.3g}")
    slope, _ = np.polyfit(np.log(params), np.log(errors), 1)
    return float(slope)


def check_mu_kappa(mix: MixtureState, kappa: float) -> float:
    """Evaluates both viscosity forms (raises on mismatch) and returns the value."""
    return mu_kappa(mix, kappa)


# standard convergence-order checks ---------------------------------------------

@dataclass(frozen=True)
class OrderCheck:
    name: str
    slope: float
    expected: float
    band: float

    @property
    def passed(self) -> bool:
        return abs(self.slope - self.expected) <= self.band


def _fitted_slopes(params, exact_fn, approx_fn, branches) -> list[float]:
    exact, approx = [], []
    for v in params:
        a = np.asarray(approx_fn(v), dtype=complex)
        exact.append(match_roots(exact_fn(v), a))
        approx.append(a)
    exact, approx = np.array(exact), np.array(approx)
    return [convergence_order(exact[:, j], approx[:, j], params_for_fit)
            for j, params_for_fit in branches]


def _roots_at_prandtl(fc: FluidCoeffs, k: float):
    return lambda pr: solve_poly(ns_poly(with_prandtl(fc, pr), k)).speeds


def _log_grid(lo: float, hi: float, num: int = 5) -> np.ndarray:
    return np.geomspace(lo, hi, num)


def standard_order_checks(gas: FluidCoeffs, mix: MixtureState, kappa: float = 10.0,
                          k: float = 1000.0) -> list[OrderCheck]:
    """Remainder slopes of every expansion, each fitted inside its validity window.

    Prandtl expansions use ``gas`` at wavenumber ``k``; the small-Pr window
    [1e-3, 5e-2] is additionally checked at the wavenumber where k a1 = c_T / 2,
    since the expansion parameter is Pr c / (k a1).  Knudsen expansions span
    the window [1e-4, 1e-2] except where the remainder would sit at round-off.
    """
    checks: list[OrderCheck] = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")

        prs = _log_grid(30.0, 300.0)
        inv = 1.0 / prs
        s = _fitted_slopes(prs, _roots_at_prandtl(gas, k), lambda pr: large_pr_roots(gas, k, pr),
                           [(2, inv), (1, inv)])
        checks += [OrderCheck("large-Pr acoustic", s[0], 2.0, 0.2),
                   OrderCheck("large-Pr material", s[1], 2.0, 0.2)]

        k_mid = 0.5 * gas.c_T / stokes_a1(gas)
        prs = _log_grid(1e-3, 5e-2)
        s = _fitted_slopes(prs, _roots_at_prandtl(gas, k_mid),
                           lambda pr: small_pr_roots(gas, k_mid, pr), [(2, prs), (1, prs)])
        checks += [OrderCheck("small-Pr acoustic", s[0], 2.0, 0.2),
                   OrderCheck("small-Pr large root", s[1], 1.0, 0.1)]
        prs = _log_grid(1e-9, 1e-7)
        s = _fitted_slopes(prs, _roots_at_prandtl(gas, k),
                           lambda pr: small_pr_roots(gas, k, pr), [(2, prs)])
        checks.append(OrderCheck("small-Pr acoustic, continuum k", s[0], 2.0, 0.2))

        kn = _log_grid(1e-3, 1e-2)
        ks = kn * gas.rho * gas.c / gas.mu_eff
        checks.append(OrderCheck(
            "Stokes speed", convergence_order([stokes_speed_exact(gas, x) for x in ks],
                                              [stokes_expansion(gas, x)[0] for x in ks], kn),
            4.0, 0.3))

        inert = gas.with_transport(mu=0.0)
        kn = _log_grid(1e-4, 1e-2)
        ks = kn / thermal_knudsen(inert, 1.0)
        s = _fitted_slopes(ks, lambda x: solve_poly(thermal_poly(inert, x)).speeds,
                           lambda x: thermal_first_order(inert, x), [(2, kn), (1, kn)])
        checks += [OrderCheck("thermal acoustic", s[0], 2.0, 0.2),
                   # P(-X; -Kn) = -P(X; Kn), so the entropy root is odd in Kn
                   OrderCheck("thermal entropy", s[1], 3.0, 0.3)]

        per_k = max(knudsen_phases(mix, 1.0))
        exact = lambda x: solve_poly(added_mass_poly(mix, kappa, x)).speeds
        kn = _log_grid(1e-4, 1e-2)
        s = _fitted_slopes(kn / per_k, exact,
                           lambda x: two_velocity_first_order(mix, kappa, x), [(0, kn)])
        checks.append(OrderCheck("two-velocity first order", s[0], 2.0, 0.2))
        kn = _log_grid(5e-4, 1e-2)
        s = _fitted_slopes(kn / per_k, exact,
                           lambda x: two_velocity_second_order(mix, kappa, x), [(0, kn)])
        checks.append(OrderCheck("two-velocity second order", s[0], 3.0, 0.3))
    return checks
