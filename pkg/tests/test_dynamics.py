
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfa import dynamics
from tfa.dynamics import LinearSystem
from tfa.eos import acoustic_fluid
from tfa.mixture import DegenerateMixtureError, MixtureState, equilibrium_speed, wood_speed

from conftest import mixtures

# 50-digit evaluations of the closed forms, rounded to double precision
C0_TEXTBOOK_HALF = 330.18835210509160
CKAPPA10_TEXTBOOK_HALF = 101.91127135884392
C0_DEFAULTS_HALF = 346.19440622339506
CKAPPA10_DEFAULTS_HALF = 106.82622734477275


def test_c0_textbook(textbook_mix):
    assert dynamics.c0(textbook_mix) == pytest.approx(C0_TEXTBOOK_HALF, rel=1e-13)
    assert round(dynamics.c0(textbook_mix), 1) == 330.2


def test_c_kappa_textbook(textbook_mix):
    assert dynamics.c_kappa(textbook_mix, 10.0) == pytest.approx(CKAPPA10_TEXTBOOK_HALF,
                                                                 rel=1e-13)
    assert round(dynamics.c_kappa(textbook_mix, 10.0), 1) == 101.9


def test_defaults_speeds(water_air):
    assert dynamics.c0(water_air) == pytest.approx(C0_DEFAULTS_HALF, rel=1e-13)
    assert dynamics.c_kappa(water_air, 10.0) == pytest.approx(CKAPPA10_DEFAULTS_HALF, rel=1e-13)


def test_c_kappa_limits(water_air):
    assert dynamics.c_kappa(water_air, 0.0) == dynamics.c0(water_air)
    assert dynamics.c_kappa(water_air, 1e12) == pytest.approx(wood_speed(water_air), rel=1e-6)


def test_c_kappa_rejects_negative(water_air):
    with pytest.raises(ValueError):
        dynamics.c_kappa(water_air, -1.0)


@given(mixtures(), st.floats(0.0, 1e4))
def test_interpolation_identity(mix, kappa):
    lhs = dynamics.c_kappa(mix, kappa) ** 2
    rhs = dynamics.c_kappa_interpolated(mix, kappa) ** 2
    assert abs(lhs - rhs) < 1e-12 * dynamics.c0(mix) ** 2


@given(mixtures(), st.floats(0.0, 100.0), st.floats(0.01, 100.0))
def test_c_kappa_decreasing_in_kappa(mix, kappa, dk):
    c0, cw = dynamics.c0(mix), wood_speed(mix)
    if (c0 - cw) / c0 < 1e-6:
        return
    assert dynamics.c_kappa(mix, kappa + dk) < dynamics.c_kappa(mix, kappa)


def test_c0_not_below_wood_on_grid(water, air):
    base = MixtureState(water, air, 0.5)
    for a in np.linspace(0.0, 1.0, 1000):
        m = base.at(float(a))
        assert dynamics.c0(m) >= wood_speed(m) * (1.0 - 1e-14)


@pytest.mark.parametrize("alpha", [0.0, 1.0])
def test_c0_equals_wood_at_pure_phases(water, air, alpha):
    m = MixtureState(water, air, alpha)
    assert dynamics.c0(m) == pytest.approx(wood_speed(m), rel=1e-12)


def test_c0_equals_wood_for_equal_densities():
    m = MixtureState(acoustic_fluid(800.0, 1200.0), acoustic_fluid(800.0, 400.0), 0.3)
    assert dynamics.c0(m) == pytest.approx(wood_speed(m), rel=1e-12)


def test_c0_monotone_in_alpha(water, air):
    vals = [dynamics.c0(MixtureState(water, air, float(a))) for a in np.linspace(0, 1, 201)]
    diffs = np.diff(vals)
    assert np.all(diffs >= 0) or np.all(diffs <= 0)


def test_c0_pure_limit(water, air):
    m = MixtureState(water, air, 1.0 - 1e-9)
    assert dynamics.c0(m) == pytest.approx(water.c, rel=1e-3)


def test_one_velocity_spectrum(water_air):
    ev = dynamics.eigenvalues(dynamics.build_one_velocity_isentropic(water_air))
    cw = wood_speed(water_air)
    assert ev.values == pytest.approx([-cw, 0.0, cw], abs=1e-10 * cw)
    assert ev.classification == ("pressure-", "material", "pressure+")
    assert round(cw, 2) == 23.83


def test_two_velocity_spectrum(textbook_mix):
    ev = dynamics.eigenvalues(dynamics.build_two_velocity_isentropic(textbook_mix))
    c = C0_TEXTBOOK_HALF
    assert ev.values == pytest.approx([-c, 0.0, 0.0, c], rel=1e-12, abs=1e-9 * c)


def test_thermal_equilibrium_spectrum(water_air):
    ev = dynamics.eigenvalues(dynamics.build_thermal_equilibrium(water_air))
    c = equilibrium_speed(water_air)[1]
    assert ev.values == pytest.approx([-c, 0.0, 0.0, c], abs=1e-9 * c)


def test_added_mass_spectrum(water_air):
    ev = dynamics.eigenvalues(dynamics.build_added_mass(water_air, 10.0))
    c = dynamics.c_kappa(water_air, 10.0)
    assert ev.values == pytest.approx([-c, 0.0, 0.0, c], abs=1e-9 * c)


def test_baer_nunziato_spectrum(water, air):
    ev = dynamics.eigenvalues(dynamics.build_baer_nunziato(water, air, 0.5))
    want = sorted([-water.c, -air.c, 0, 0, 0, air.c, water.c])
    assert ev.values == pytest.approx(want, abs=1e-9 * water.c)
    assert ev.classification.count("material") == 3


def test_baer_nunziato_galilean(water, air):
    ev = dynamics.eigenvalues(dynamics.build_baer_nunziato(water, air, 0.5, 5.0, 5.0))
    want = sorted([5 - water.c, 5 - air.c, 5, 5, 5, 5 + air.c, 5 + water.c])
    assert ev.values == pytest.approx(want, abs=1e-9 * water.c)


def test_baer_nunziato_identical_fluids(water):
    ev = dynamics.eigenvalues(dynamics.build_baer_nunziato(water, water, 0.4))
    c = water.c
    assert ev.values == pytest.approx([-c, -c, 0, 0, 0, c, c], abs=1e-9 * c)


def test_baer_nunziato_needs_interior(water, air):
    with pytest.raises(DegenerateMixtureError):
        dynamics.build_baer_nunziato(water, air, 1.0)


def test_two_velocity_needs_interior(water, air):
    with pytest.raises(DegenerateMixtureError):
        dynamics.build_two_velocity_isentropic(MixtureState(water, air, 0.0))


def test_diagonal_matrix():
    sys = LinearSystem(np.diag([1.0, 2.0, 3.0]), np.zeros((3, 3)), ("a", "b", "c"), "diag", None)
    assert dynamics.eigenvalues(sys).values == pytest.approx([1, 2, 3], abs=1e-14)


def test_rotation_is_not_hyperbolic():
    sys = LinearSystem([[0.0, -1.0], [1.0, 0.0]], np.zeros((2, 2)), ("a", "b"), "rot", None)
    with pytest.raises(dynamics.HyperbolicityError):
        dynamics.eigenvalues(sys)


def test_size_mismatch_rejected():
    with pytest.raises(ValueError):
        LinearSystem(np.eye(2), np.zeros((2, 2)), ("a",), "bad", None)


def test_eigen_suite(water_air):
    results = dynamics.eigen_suite(water_air, 10.0)
    assert len(results) == 6
    for r in results:
        assert r.rel_err <= 1e-9, r.model


def test_eigen_suite_textbook(textbook_mix):
    for r in dynamics.eigen_suite(textbook_mix, 3.0, velocities=(2.0, -1.0)):
        assert r.rel_err <= 1e-9, r.model


BUILDERS = [dynamics.build_one_velocity_isentropic, dynamics.build_one_velocity_two_temperature,
            dynamics.build_thermal_equilibrium, dynamics.build_two_velocity_isentropic]


@pytest.mark.parametrize("builder", BUILDERS)
def test_galilean_shift(water_air, builder):
    base = dynamics.eigenvalues(builder(water_air)).values
    moved = dynamics.eigenvalues(builder(water_air, u0=10.0)).values
    assert moved == pytest.approx(base + 10.0, abs=1e-9 * np.max(np.abs(moved)))


def test_added_mass_velocity_rows_are_consistent(water_air):
    # with equal phase velocities every convected row sums to that velocity
    A0 = dynamics.added_mass_convection(water_air, 2.0)
    A1 = dynamics.added_mass_convection(water_air, 2.0, 7.0, 7.0)
    assert A1[0, 0] == pytest.approx(7.0, rel=1e-14)
    assert A1[1, 1] == pytest.approx(7.0, rel=1e-14)
    assert A1[2, 2] + A1[2, 3] == pytest.approx(7.0, rel=1e-14)
    assert A1[3, 2] + A1[3, 3] == pytest.approx(7.0, rel=1e-14)
    assert np.array_equal(A1[:, :2][2:], A0[:, :2][2:])


@given(mixtures(), st.floats(0.0, 50.0))
def test_spectra_symmetric_at_rest(mix, kappa):
    for r in dynamics.eigen_suite(mix, kappa):
        assert np.allclose(np.sort(r.computed), np.sort(-r.computed),
                           rtol=0, atol=1e-10 * np.max(np.abs(r.computed)) + 1e-300)
        assert r.rel_err <= 1e-9


def test_mixture_pressure_zero_at_base(water_air):
    eta = water_air.eta_plus - water_air.eta_minus
    assert abs(dynamics.mixture_pressure(water_air, water_air.rho, eta)) < 1e-6


def test_mixture_pressure_density_derivative_is_wood(water_air):
    dp_drho, _ = dynamics.mixture_pressure_derivatives(water_air)
    assert dp_drho == pytest.approx(wood_speed(water_air) ** 2, rel=1e-6)
