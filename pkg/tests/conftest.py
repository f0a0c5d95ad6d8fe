import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tfa import defaults
from tfa.eos import acoustic_fluid
from tfa.mixture import MixtureState

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def fluids(draw, viscous=False, conducting=False):
    rho = draw(st.floats(0.5, 2000.0))
    c = draw(st.floats(100.0, 2000.0))
    gamma = draw(st.floats(1.05, 3.0))
    mu = draw(st.floats(1e-6, 1e-2)) if viscous else 0.0
    lam = draw(st.floats(1e-3, 1.0)) if conducting else 0.0
    return acoustic_fluid(rho, c, gamma=gamma, mu=mu, lam=lam)


@st.composite
def mixtures(draw, viscous=False, interior=True):
    plus = draw(fluids(viscous=viscous))
    minus = draw(fluids(viscous=viscous))
    lo, hi = (0.01, 0.99) if interior else (0.0, 1.0)
    return MixtureState(plus, minus, draw(st.floats(lo, hi)))


@pytest.fixture
def water():
    return defaults.water()


@pytest.fixture
def air():
    return defaults.air()


@pytest.fixture
def water_air():
    return defaults.water_air(0.5)


@pytest.fixture
def textbook_mix():
    """Round-number water and air: rho+ = 1000, c+ = 1500, rho- = 1.2, c- = 330."""
    plus = acoustic_fluid(1000.0, 1500.0, gamma=7.0, mu=1.0e-3, lam=0.6)
    minus = acoustic_fluid(1.2, 330.0, gamma=1.4, mu=1.8e-5, lam=0.026)
    return MixtureState(plus, minus, 0.5)
