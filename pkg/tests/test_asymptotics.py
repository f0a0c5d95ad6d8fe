import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfa import asymptotics, dispersion
from tfa.asymptotics import DegenerateFitError, Expansion
from tfa.eos import acoustic_fluid
from tfa.mixture import MixtureState

from conftest import mixtures


def exact_ns(fc, k, pr):
    return dispersion.solve_poly(dispersion.ns_poly(asymptotics.with_prandtl(fc, pr), k)).speeds


@pytest.mark.parametrize("pr", [1e-3, 0.71, 7.0, 1e3])
def test_factorization_identity(air, pr):
    k = 1000.0
    fc = asymptotics.with_prandtl(air, pr)
    direct = dispersion.ns_poly(fc, k).coeffs
    factored = asymptotics.factorized_cubic(air, k, pr)
    for a, b in zip(direct, factored):
        assert abs(a - b) <= 1e-14 * max(abs(a), abs(b))


def test_with_prandtl(air):
    assert asymptotics.with_prandtl(air, 0.3).prandtl == pytest.approx(0.3, rel=1e-15)


def test_large_pr_routes_agree(air):
    for pr in (10.0, 100.0, 1e4):
        series = asymptotics.large_pr_roots(air, 1000.0, pr)
        generic = asymptotics.large_pr_generic(air, 1000.0, pr)
        assert np.max(np.abs(series - generic)) < 1e-12 * air.c


def test_large_pr_limit_is_stokes(air):
    stokes = dispersion.stokes_roots(air, 1000.0).speeds
    limit = asymptotics.large_pr_roots(air, 1000.0, 1e300)
    assert np.max(np.abs(np.sort_complex(limit) - np.sort_complex(stokes))) < 1e-12 * air.c


def test_small_pr_large_root_is_damped(air):
    k, pr = 1000.0, 1e-8
    roots = exact_ns(air, k, pr)
    big = roots[np.argmax(np.abs(roots))]
    assert big.imag < 0.0
    approx = asymptotics.small_pr_expansions(air, k)[1](pr)
    assert abs(big - approx) < 1e-6 * abs(big)


def test_small_pr_limit_is_isothermal(air):
    k = 1000.0
    roots = exact_ns(air, k, 1e-12)
    iso = asymptotics.isothermal_limit(air, k)
    for r in iso:
        assert np.min(np.abs(roots - r)) < 1e-6 * air.c
    assert abs(iso[1].real) < air.c


@pytest.mark.parametrize("pr", [1e-4, 0.71, 100.0])
def test_root_product_sign(air, pr):
    k = 500.0
    roots = exact_ns(air, k, pr)
    want = 1.5j * k * dispersion.stokes_a1(air) * air.c ** 2 / pr
    assert abs(np.prod(roots) - want) < 1e-12 * abs(want)


def test_standard_order_checks_defaults(air, water_air):
    checks = asymptotics.standard_order_checks(air, water_air)
    assert len(checks) == 10
    for c in checks:
        assert c.passed, c


def test_standard_order_checks_textbook(textbook_mix):
    checks = asymptotics.standard_order_checks(textbook_mix.minus, textbook_mix, kappa=3.0)
    for c in checks:
        assert c.passed, c


def test_stokes_speed_expansion(air):
    kn = 1e-3
    k = kn * air.rho * air.c / air.mu
    exact = asymptotics.stokes_speed_exact(air, k)
    c2, sigma = asymptotics.stokes_expansion(air, k)
    assert abs(exact - c2) < 10 * kn ** 4 * air.c
    assert sigma == dispersion.stokes_attenuation(air, k)
    direct = dispersion.stokes_roots(air, k).of_kind("acoustic+").phase_speed
    assert exact == pytest.approx(direct, rel=1e-14)


def test_thermal_first_order(air):
    inert = air.with_transport(mu=0.0)
    k = 1e-3 / dispersion.thermal_knudsen(inert, 1.0)
    approx = asymptotics.thermal_first_order(inert, k)
    exact = asymptotics.match_roots(dispersion.solve_poly(dispersion.thermal_poly(inert, k))
                                    .speeds, approx)
    assert np.max(np.abs(exact - approx)) < 1e-5 * air.c


def test_table_summary_one_fluid(air):
    assert asymptotics.viscous_summary("one-fluid", 100.0, fc=air) == \
        asymptotics.stokes_expansion(air, 100.0)


def test_table_summary_one_velocity(textbook_mix):
    k = 100.0
    c, sigma = asymptotics.viscous_summary("one-velocity", k, mix=textbook_mix)
    exact = dispersion.solve_poly(dispersion.two_fluid_one_velocity_poly(textbook_mix, k))
    plus = exact.of_kind("acoustic+")
    assert sigma == pytest.approx(plus.attenuation, rel=1e-12)
    assert c == pytest.approx(plus.phase_speed, rel=1e-12)


def test_table_summary_two_velocity(water_air):
    kn = 1e-3
    k = kn / max(dispersion.knudsen_phases(water_air, 1.0))
    c, sigma = asymptotics.viscous_summary("two-velocity", k, mix=water_air, kappa=10.0)
    exact = dispersion.solve_poly(dispersion.added_mass_poly(water_air, 10.0, k))
    plus = exact.of_kind("acoustic+")
    assert abs(c - plus.phase_speed) < 10 * kn ** 3 * c
    assert sigma == pytest.approx(plus.attenuation, rel=10 * kn)


def test_table_summary_unknown_model():
    with pytest.raises(ValueError):
        asymptotics.viscous_summary("three-velocity", 1.0)


def test_equal_fluids_reduce_to_stokes():
    fc = acoustic_fluid(1.2, 346.0, mu=1.8e-5)
    mix = MixtureState(fc, fc, 0.3)
    co = asymptotics.two_velocity_coefficients(mix, 5.0)
    assert co.phi_plus + co.phi_minus == pytest.approx(1.0, rel=1e-14)
    k = 1e-3 * fc.rho * fc.c / fc.mu
    first = asymptotics.two_velocity_first_order(mix, 5.0, k)
    stokes = dispersion.stokes_roots(fc, k)
    assert first[0].imag == pytest.approx(stokes.of_kind("acoustic+").omega.imag / k, rel=1e-12)


@given(mixtures(viscous=True), st.floats(0.0, 100.0))
def test_first_order_forms_agree(mix, kappa):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        roots = asymptotics.two_velocity_first_order(mix, kappa, 1.0)
    assert roots[0].imag == pytest.approx(roots[1].imag, rel=1e-14)


@given(mixtures(viscous=True), st.floats(0.0, 100.0), st.floats(1.0, 100.0))
def test_vieta_constant(mix, kappa, k):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        poly = dispersion.added_mass_poly(mix, kappa, k)
    want = asymptotics.two_velocity_vieta_constant(mix, kappa, k)
    assert abs(-poly.coeffs[-1] - want) <= 1e-12 * abs(want) + 1e-300


@given(mixtures(viscous=True), st.floats(0.0, 100.0))
def test_check_mu_kappa(mix, kappa):
    assert asymptotics.check_mu_kappa(mix, kappa) == dispersion.mu_kappa(mix, kappa)


@pytest.mark.parametrize("order", [1.0, 2.0, 3.0, 4.0])
def test_convergence_order_geometric(order):
    params = np.geomspace(1e-4, 1e-2, 6)
    exact = np.zeros(6)
    approx = 3.0j * params ** order
    assert asymptotics.convergence_order(exact, approx, params) == pytest.approx(order, abs=1e-10)


def test_convergence_order_roundoff_is_degenerate():
    with pytest.raises(DegenerateFitError):
        asymptotics.convergence_order([1.0, 1.0, 1.0], [1.0, 1.0 + 1e-17, 1.0], [1, 2, 3])


def test_convergence_order_rejects_bad_params():
    with pytest.raises(ValueError):
        asymptotics.convergence_order([1, 1, 1], [2, 2, 2], [1.0, 3.0, 2.0])
    with pytest.raises(ValueError):
        asymptotics.convergence_order([1, 1], [2, 2], [1.0, 2.0])


def test_match_roots():
    exact = [3 + 0j, -1j, 5]
    approx = np.array([5.1, 2.9, -0.9j])
    assert list(asymptotics.match_roots(exact, approx)) == [5, 3, -1j]


def test_expansion_validation():
    with pytest.raises(ValueError):
        Expansion((1.0,), "Pr", 0, "x")
    with pytest.raises(ValueError):
        Expansion((math.inf,), "Pr", 1, "x")
    e = Expansion((2.0, 3.0), "Pr", 2, "x", leading_power=-1)
    assert e(2.0) == pytest.approx(1.0 + 3.0)
