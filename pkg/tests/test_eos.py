import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfa import eos
from tfa.eos import AIR, WATER, IdealGas, InvalidStateError, StiffenedGas


def test_shipped_water_reproduces_its_fit_state():
    fc = eos.coeffs_at(WATER, 101325.0, 298.15)
    assert fc.rho == pytest.approx(997.0, rel=1e-13)
    assert fc.c == pytest.approx(1497.0, rel=1e-13)


def test_shipped_air_reproduces_its_fit_state():
    fc = eos.coeffs_at(AIR, 101325.0, 298.15)
    assert fc.rho == pytest.approx(1.184, rel=1e-13)
    assert fc.c == pytest.approx(346.0, rel=1e-13)
    assert AIR.gamma == pytest.approx(1.184 * 346.0 ** 2 / 101325.0, rel=1e-15)


def test_ideal_gas_closed_forms():
    gas = IdealGas(1.4, 287.0)
    fc = eos.coeffs_at(gas, 1.0e5, 300.0)
    assert fc.rho == pytest.approx(1.0e5 / (287.0 * 300.0), rel=1e-15)
    assert fc.c ** 2 == pytest.approx(1.4 * 287.0 * 300.0, rel=1e-14)
    assert fc.C_v == pytest.approx(287.0 / 0.4, rel=1e-15)
    assert fc.Gamma == pytest.approx(0.4)


def test_invalid_states_raise():
    with pytest.raises(InvalidStateError):
        eos.coeffs_at(IdealGas(1.4, 287.0), 1e5, -1.0)
    with pytest.raises(InvalidStateError):
        eos.coeffs_at(StiffenedGas(4.4, 6e8, 1000.0), -7e8, 300.0)
    with pytest.raises(InvalidStateError):
        eos.coeffs_at(IdealGas(0.9, 287.0), 1e5, 300.0)
    with pytest.raises(InvalidStateError):
        eos.acoustic_fluid(1.0, 300.0, gamma=1.0)


def test_thermally_inert_acoustic_fluid_has_no_expansion():
    fc = eos.acoustic_fluid(1000.0, 1500.0, gamma=1.0, C_v=4180.0)
    assert fc.chi == 0.0 and fc.Gamma == 0.0 and fc.c_T == fc.c


def test_transport_bookkeeping():
    fc = eos.acoustic_fluid(1.2, 340.0, mu=1.8e-5, lam=0.026, mu_bulk=4e-5)
    assert fc.mu_eff == pytest.approx(1.8e-5 + 0.75 * 4e-5)
    assert fc.prandtl == pytest.approx(fc.mu_eff * fc.C_p / 0.026)
    assert eos.acoustic_fluid(1.2, 340.0, mu=1e-5).prandtl == math.inf
    assert fc.with_transport(lam=1.0).lam == 1.0


def test_measured_fluid_satisfies_identities():
    fc = eos.measured_fluid(997.0, 1497.0, 298.15, 4181.0, 2.57e-4)
    assert np.all(eos.identity_residuals(fc) < 1e-14)
    assert fc.gamma == pytest.approx(1.0 + 1497.0 ** 2 * 298.15 * 2.57e-4 ** 2 / 4181.0)


@pytest.mark.parametrize("spec", [WATER, AIR], ids=["water", "air"])
@pytest.mark.parametrize("p", [5e4, 1.01325e5, 1e6, 1e7])
@pytest.mark.parametrize("T", [280.0, 298.15, 350.0])
def test_identity_residuals_on_grid(spec, p, T):
    assert np.all(eos.identity_residuals(eos.coeffs_at(spec, p, T)) < 1e-12)


@pytest.mark.parametrize("spec", [WATER, AIR], ids=["water", "air"])
def test_finite_difference_cross_checks(spec):
    checks = eos.finite_difference_checks(spec, 2e5, 310.0)
    assert set(checks) == {"c2", "dp_ds", "dT_drho", "dT_ds", "Gamma"}
    assert max(checks.values()) < 1e-6


@given(st.floats(1.01, 5.0), st.floats(0.0, 1e9), st.floats(100.0, 5000.0),
       st.floats(1e4, 1e8), st.floats(200.0, 800.0))
def test_stiffened_gas_round_trips(gamma, p_inf, cv, p, T):
    spec = StiffenedGas(gamma, p_inf, cv)
    rho = eos.density(spec, p, T)
    assert eos.pressure(spec, rho, T) == pytest.approx(p, rel=1e-10)
    e = eos.internal_energy(spec, rho, T)
    assert eos.pressure_from_energy(spec, rho, e) == pytest.approx(p, rel=1e-9, abs=1e-6 * p_inf)
    s = eos.entropy(spec, rho, T)
    assert eos.temperature_from_entropy(spec, rho, s) == pytest.approx(T, rel=1e-10)
    assert np.all(eos.identity_residuals(eos.coeffs_at(spec, p, T)) < 1e-12)


@given(st.floats(0.1, 2000.0), st.floats(50.0, 3000.0), st.floats(1e4, 1e7),
       st.floats(200.0, 600.0), st.floats(1.05, 8.0))
def test_stiffened_fit_recovers_rho_and_c(rho, c, p, T, gamma):
    spec = eos.fit_stiffened_gas(rho, c, p, T, gamma)
    fc = eos.coeffs_at(spec, p, T)
    assert fc.rho == pytest.approx(rho, rel=1e-10)
    assert fc.c == pytest.approx(c, rel=1e-10)
