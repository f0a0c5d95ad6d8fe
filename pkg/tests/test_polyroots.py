from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfa import polyroots
from tfa.polyroots import NonConvergenceError


def _sorted(z):
    return np.array(sorted(np.asarray(z, dtype=complex), key=lambda w: (w.real, w.imag)))


def test_horner_value_and_derivative():
    p, dp = polyroots.horner([1.0, -3.0, 2.0], 5.0)
    assert (p, dp) == (12.0, 7.0)


def test_strip_zero_roots():
    reduced, n = polyroots.strip_zero_roots([1.0, 2.0, 0.0, 0.0])
    assert reduced == [1.0, 2.0] and n == 2


def test_aberth_known_cubic():
    roots = _sorted(polyroots.aberth([1.0, 0.0, -346.0 ** 2, 0.0]))
    np.testing.assert_allclose(roots, [-346.0, 0.0, 346.0], atol=1e-10)


def test_aberth_is_deterministic():
    coeffs = [1.0, 2.0 + 1j, -3.0, 0.5j]
    a = polyroots.aberth(coeffs)
    b = polyroots.aberth(coeffs)
    assert a.tobytes() == b.tobytes()


def test_aberth_reports_nonconvergence():
    with pytest.raises(NonConvergenceError) as info:
        polyroots.aberth([1.0, 0.0, 0.0, -1.0], max_iter=1)
    assert len(info.value.residuals) == 3


complex_roots = st.builds(complex, st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))


@given(st.lists(complex_roots, min_size=3, max_size=3))
def test_planted_cubic_roots_recovered(planted):
    planted = np.array(planted)
    gaps = [abs(a - b) for i, a in enumerate(planted) for b in planted[i + 1:]]
    scale = max(np.max(np.abs(planted)), 1.0)
    if min(gaps) < 1e-2 * scale:
        return
    found = polyroots.aberth(np.poly(planted))
    for r in planted:
        assert np.min(np.abs(found - r)) <= 1e-12 * scale


def test_merge_clusters_centroid():
    merged = polyroots.merge_clusters(np.array([1.0, 1.0 + 1e-9, 5.0]), 1e-7)
    assert merged[0] == merged[1] == pytest.approx(1.0 + 5e-10)
    assert merged[2] == 5.0


def test_charpoly_matches_numpy():
    rng = np.random.default_rng(3)
    m = rng.normal(size=(5, 5))
    np.testing.assert_allclose(polyroots.charpoly(m.tolist()), np.poly(m), rtol=1e-10, atol=1e-12)


def test_exact_charpoly_is_exact():
    m = np.array([[2.0, 1.0], [0.5, 3.0]])
    assert polyroots.exact_charpoly(m) == [1, Fraction(-5), Fraction(11, 2)]


def test_squarefree_factors_multiplicities():
    # (x - 1)^3 (x + 2)
    p = [Fraction(c) for c in np.poly([1, 1, 1, -2]).round().astype(int)]
    factors = polyroots.squarefree_factors(p)
    assert [(list(map(int, f)), m) for f, m in factors] == [([1, 2], 1), ([1, -1], 3)]


def test_repeated_eigenvalues_recovered_exactly():
    m = np.diag([3.0, 3.0, 3.0, -1.0])
    m[0, 3] = 0.25
    ev = np.sort(polyroots.real_matrix_eigenvalues(m).real)
    np.testing.assert_array_equal(ev, [-1.0, 3.0, 3.0, 3.0])


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_squarefree_product_reconstructs(roots):
    p = [Fraction(int(c)) for c in np.poly(roots).round().astype(int)]
    rebuilt = [Fraction(1)]
    for f, mult in polyroots.squarefree_factors(p):
        for _ in range(mult):
            n = len(rebuilt) + len(f) - 1
            rebuilt = [sum(rebuilt[j] * f[i - j] for j in range(len(rebuilt))
                           if 0 <= i - j < len(f)) for i in range(n)]
    assert rebuilt == p
