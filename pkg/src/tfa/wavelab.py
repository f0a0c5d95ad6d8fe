"""Time-domain check of dispersion relations on a single Fourier mode.

A perturbation W(t) exp(ikx) of a linear system W_t + A W_x = B W_xx obeys
dW/dt = M W with M = -ik A - k^2 B.  The amplitude is integrated with
classical RK4 and the complex frequencies are recovered from the sampled
trajectory with a multichannel matrix-pencil fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dispersion import (ModeSet, added_mass_matrices, added_mass_poly, knudsen,
                         knudsen_phases, knudsen_wood, ns_poly, ns_system,
                         one_velocity_viscous_system, solve_poly,
                         two_fluid_one_velocity_poly)
from .dynamics import LinearSystem

STABILITY_LIMIT = 0.1


class StabilityError(ValueError):
    """Raised when the time step does not resolve the fastest mode."""


class RankDeficiencyError(ArithmeticError):
    """Raised when the sampled signal does not determine its modes."""


@dataclass
class ModeEvolution:
    system: LinearSystem
    k: float
    times: np.ndarray
    states: np.ndarray  # shape (len(times), N)
    fitted: list[tuple[float, float]] = field(default_factory=list)

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])


def mode_matrix(system: LinearSystem, k: float) -> np.ndarray:
    """Generator M = -ik A - k^2 B of the amplitude equation dW/dt = M W."""
    A, B = np.asarray(system.A), np.asarray(system.B)
    if A.shape != B.shape:
        raise ValueError("A and B must have the same shape")
    return -1j * k * A - k * k * B


def mode_frequencies(system: LinearSystem, k: float) -> np.ndarray:
    """omega = i lambda for the eigenvalues lambda of M."""
    return 1j * np.linalg.eigvals(mode_matrix(system, k))


def rk4_propagator(M: np.ndarray, dt: float) -> np.ndarray:
    """One classical RK4 step for a constant matrix, as a matrix."""
    n = M.shape[0]
    h = dt * M
    h2 = h @ h
    return np.eye(n) + h + h2 / 2.0 + h2 @ h / 6.0 + h2 @ h2 / 24.0


def spectral_radius(M: np.ndarray) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(M))))


def evolve(system: LinearSystem, k: float, initial, t_end: float, steps: int,
           record_every: int = 1) -> ModeEvolution:
    """Integrate dW/dt = M W from W(0) = ``initial`` over ``steps`` RK4 steps."""
    if steps < 1 or t_end <= 0.0:
        raise ValueError("need steps >= 1 and t_end > 0")
    M = mode_matrix(system, k)
    dt = t_end / steps
    rate = spectral_radius(M)
    if dt * rate > STABILITY_LIMIT:
        raise StabilityError(
            f"dt |omega|max = {dt * rate:.3g} exceeds {STABILITY_LIMIT}; use more steps")
    step = rk4_propagator(M, dt)
    w = np.asarray(initial, dtype=complex).copy()
    if w.shape != (M.shape[0],):
        raise ValueError(f"initial amplitude must have length {M.shape[0]}")
    times, states = [0.0], [w.copy()]
    for n in range(1, steps + 1):
        w = step @ w
        if n % record_every == 0:
            times.append(n * dt)
            states.append(w.copy())
    return ModeEvolution(system, k, np.array(times), np.array(states))


def matrix_pencil(samples: np.ndarray, tau: float, rank_tol: float = 1e-10) -> np.ndarray:
    """Complex frequencies omega (signals ~ exp(-i omega t)) of uniformly sampled channels.

    ``samples`` has shape (n_samples, n_channels).  Each channel is scaled to
    unit peak, Hankel blocks are stacked, and singular values below
    ``rank_tol`` times the largest are discarded.
    """
    y = np.asarray(samples, dtype=complex)
    if y.ndim == 1:
        y = y[:, None]
    n = y.shape[0]
    if n < 8:
        raise RankDeficiencyError("too few samples")
    peaks = np.max(np.abs(y), axis=0)
    y = y[:, peaks > 0] / peaks[peaks > 0]
    if y.shape[1] == 0:
        return np.zeros(0, dtype=complex)
    L = n // 2
    rows = n - L
    blocks = [np.lib.stride_tricks.sliding_window_view(y[:, c], L + 1)[:rows]
              for c in range(y.shape[1])]
    Y = np.vstack(blocks)
    _, s, vh = np.linalg.svd(Y, full_matrices=False)
    r = int(np.sum(s > rank_tol * s[0]))
    if r >= min(Y.shape) - 1:
        raise RankDeficiencyError(
            f"signal rank {r} not below the pencil size {min(Y.shape)}; modes not separable")
    # rows of Y lie in the span of the leading rows of vh
    v = vh[:r].T
    z = np.linalg.eigvals(np.linalg.pinv(v[:-1]) @ v[1:])
    return 1j * np.log(z) / tau


def fit_modes(evolution: ModeEvolution, rank_tol: float = 1e-10,
              min_samples: int = 64) -> list[tuple[float, float]]:
    """(omega_R, omega_I) of every mode present in the recorded trajectory."""
    n = len(evolution.times)
    if n < min_samples:
        raise RankDeficiencyError(f"{n} samples recorded, need at least {min_samples}")
    omegas = matrix_pencil(evolution.states, evolution.dt, rank_tol)
    omegas = sorted(omegas, key=lambda w: (-w.real, w.imag))
    evolution.fitted = [(float(w.real), float(w.imag)) for w in omegas]
    return evolution.fitted


def modal_norm(system: LinearSystem, k: float, states: np.ndarray) -> np.ndarray:
    """Norm of the modal coordinates V^-1 W along a trajectory.

    Each coordinate evolves as exp(-i omega t), so the norm cannot grow when
    every mode is damped or neutral.
    """
    _, V = np.linalg.eig(mode_matrix(system, k))
    coords = np.linalg.solve(V, np.asarray(states).T)
    return np.linalg.norm(coords, axis=0)


def modal_initial_state(system: LinearSystem, k: float) -> np.ndarray:
    """Initial amplitude exciting every eigenmode with unit weight."""
    _, V = np.linalg.eig(mode_matrix(system, k))
    return V @ np.ones(V.shape[1])


# closure of time-domain fits against the dispersion polynomials -----------------

@dataclass(frozen=True)
class ClosureRow:
    model: str
    k: float
    c_predicted: float
    c_measured: float
    sigma_predicted: float
    sigma_measured: float

    @property
    def rel_err(self) -> float:
        return max(abs(self.c_measured - self.c_predicted) / abs(self.c_predicted),
                   abs(self.sigma_measured - self.sigma_predicted) / abs(self.sigma_predicted))


def _predicted_modes(model: str, fluid, k: float, kappa: float) -> tuple[LinearSystem, ModeSet]:
    if model == "one-fluid":
        return ns_system(fluid), solve_poly(ns_poly(fluid, k))
    if model == "one-velocity":
        return one_velocity_viscous_system(fluid), solve_poly(two_fluid_one_velocity_poly(fluid, k))
    if model == "two-velocity":
        return added_mass_matrices(fluid, kappa), solve_poly(added_mass_poly(fluid, kappa, k))
    raise ValueError(f"unknown model {model!r}")


def closure(model: str, fluid, k: float, kappa: float = 0.0, phase_step: float = 0.01,
            periods: float = 4.0, samples: int = 256) -> ClosureRow:
    """Compare the fitted "+" acoustic branch with the polynomial prediction.

    The step keeps dt |omega|max at ``phase_step`` so that RK4 dissipation
    stays far below the physical attenuation; the run spans ``periods``
    acoustic periods and is decimated to about ``samples`` points.
    """
    system, predicted = _predicted_modes(model, fluid, k, kappa)
    target = predicted.of_kind("acoustic+")
    M = mode_matrix(system, k)
    rate = spectral_radius(M)
    t_end = periods * 2.0 * math.pi / abs(target.omega.real)
    steps = max(int(math.ceil(t_end * rate / phase_step)), samples)
    record_every = max(steps // samples, 1)
    steps = record_every * int(math.ceil(steps / record_every))
    evo = evolve(system, k, modal_initial_state(system, k), t_end, steps, record_every)
    fitted = [complex(r, i) for r, i in fit_modes(evo)]
    best = min(fitted, key=lambda w: abs(w - target.omega))
    return ClosureRow(model, k, target.phase_speed, best.real / k,
                      target.attenuation, -best.imag)


def knudsen_of(model: str, fluid, k: float) -> float:
    if model == "one-fluid":
        return knudsen(fluid, k)
    if model == "one-velocity":
        return knudsen_wood(fluid, k)
    return max(knudsen_phases(fluid, k))


def k_for_knudsen(model: str, fluid, kn: float) -> float:
    """Wavenumber at which the model's governing Knudsen number equals ``kn``."""
    return kn / knudsen_of(model, fluid, 1.0)
