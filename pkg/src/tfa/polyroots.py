"""Polynomial root finding and characteristic polynomials of small matrices.

Coefficient lists are ordered from the highest degree down (numpy.polyval
convention).  Exact arithmetic routines accept ``fractions.Fraction`` entries.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np


class NonConvergenceError(ArithmeticError):
    def __init__(self, message: str, residuals: Sequence[float]):
        super().__init__(f"{message}; residuals={list(residuals)}")
        self.residuals = list(residuals)


def horner(coeffs: Sequence[complex], z: complex) -> tuple[complex, complex]:
    """Value and first derivative of the polynomial at ``z``."""
    p = coeffs[0]
    dp = 0.0
    for a in coeffs[1:]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def strip_zero_roots(coeffs: Sequence[complex]) -> tuple[list[complex], int]:
    """Remove exactly vanishing trailing coefficients; returns (reduced, count)."""
    coeffs = list(coeffs)
    zeros = 0
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
        zeros += 1
    return coeffs, zeros


def aberth(coeffs: Sequence[complex], tol: float = 1e-13,
           max_iter: int = 200) -> np.ndarray:
    """All roots of a polynomial by Aberth-Ehrlich simultaneous iteration.

    Initial guesses lie on the circle of radius 1 + max|a_i / a_0| at fixed
    angles, so results are reproducible bit for bit.  A root is frozen once
    its correction drops below ``tol`` times its modulus or its residual
    reaches the rounding level of Horner evaluation; one Newton step
    polishes every root at the end.
    """
    a = np.asarray(coeffs, dtype=complex)
    if a[0] == 0:
        raise ValueError("leading coefficient must be nonzero")
    a = a / a[0]
    n = len(a) - 1
    if n == 0:
        return np.zeros(0, dtype=complex)
    if n == 1:
        return np.array([-a[1]])
    radius = 1.0 + float(np.max(np.abs(a[1:])))
    angles = 2.0 * math.pi * np.arange(n) / n + 0.4
    z = radius * np.exp(1j * angles)
    active = np.ones(n, dtype=bool)
    coeff_list = list(a)
    moduli = list(np.abs(a))
    eps = np.finfo(float).eps
    for _ in range(max_iter):
        for i in np.flatnonzero(active):
            p, dp = horner(coeff_list, z[i])
            # |p| below the Horner rounding bound: no further digits can be gained
            if abs(p) <= 4.0 * n * eps * horner(moduli, abs(z[i]))[0]:
                active[i] = False
                continue
            ratio = p / dp if dp != 0 else complex(radius)
            others = z[i] - np.delete(z, i)
            repulsion = np.sum(1.0 / others) if n > 1 else 0.0
            w = ratio / (1.0 - ratio * repulsion)
            z[i] -= w
            scale = abs(z[i]) if z[i] != 0 else 1e-300
            if abs(w) <= tol * scale:
                active[i] = False
        if not active.any():
            break
    else:
        residuals = [abs(horner(coeff_list, zi)[0]) for zi in z]
        raise NonConvergenceError("Aberth iteration did not converge", residuals)
    for i in range(n):
        p, dp = horner(coeff_list, z[i])
        if dp != 0:
            z[i] -= p / dp
    return z


def merge_clusters(roots: np.ndarray, rel_tol: float,
                   coeffs: Sequence[complex] | None = None) -> np.ndarray:
    """Replace tight root clusters by their centroid.

    A multiple root splits into a cluster under coefficient rounding.  When
    ``coeffs`` is given, the centroid of an m-fold cluster is refined by
    Newton steps on the (m-1)-th derivative, whose root there is simple.
    """
    roots = np.array(roots, dtype=complex)
    if len(roots) < 2:
        return roots
    scale = max(float(np.max(np.abs(roots))), 1e-300)
    n = len(roots)
    label = list(range(n))

    def find(i):
        while label[i] != i:
            label[i] = label[label[i]]
            i = label[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(roots[i] - roots[j]) <= rel_tol * scale:
                label[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    for members in groups.values():
        if len(members) > 1:
            center = np.mean(roots[members])
            if coeffs is not None:
                center = _polish_center(coeffs, center, len(members))
            roots[members] = center
    return roots


def _polish_center(coeffs: Sequence[complex], z: complex, mult: int,
                   steps: int = 8) -> complex:
    d = np.polyder(np.asarray(coeffs, dtype=complex), mult - 1)
    d1 = np.polyder(d)
    for _ in range(steps):
        f, df = np.polyval(d, z), np.polyval(d1, z)
        if df == 0:
            break
        step = f / df
        z = z - step
        if abs(step) <= 1e-16 * max(abs(z), 1e-300):
            break
    return z


# exact polynomial arithmetic over the rationals ---------------------------

def _trim(p: list) -> list:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _deriv(p: list) -> list:
    n = len(p) - 1
    if n == 0:
        return [Fraction(0)]
    return [c * (n - i) for i, c in enumerate(p[:-1])]


def _divmod(num: list, den: list) -> tuple[list, list]:
    num, den = _trim(list(num)), _trim(list(den))
    if len(num) < len(den):
        return [Fraction(0)], num
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    r = list(num)
    for i in range(len(q)):
        coef = r[i] / den[0]
        q[i] = coef
        if coef:
            for j, d in enumerate(den):
                r[i + j] -= coef * d
    rem = _trim(r[len(q):]) if len(den) > 1 else [Fraction(0)]
    return q, rem


def _monic(p: list) -> list:
    p = _trim(p)
    return [c / p[0] for c in p]


def _gcd(a: list, b: list) -> list:
    a, b = _trim(a), _trim(b)
    while not (len(b) == 1 and b[0] == 0):
        _, r = _divmod(a, b)
        a, b = b, r
    return _monic(a)


def squarefree_factors(p: Sequence[Fraction]) -> list[tuple[list, int]]:
    """Yun's square-free decomposition: [(factor, multiplicity), ...]."""
    f = _monic(list(p))
    if len(f) == 1:
        return []
    df = _deriv(f)
    a = _gcd(f, df)
    b, _ = _divmod(f, a)
    c, _ = _divmod(df, a)
    d = _sub(c, _deriv(b))
    out = []
    i = 1
    while len(_trim(b)) > 1:
        a = _gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b, _ = _divmod(b, a)
        c, _ = _divmod(d, a)
        d = _sub(c, _deriv(b))
        i += 1
    return out


def _sub(p: list, q: list) -> list:
    width = max(len(p), len(q))
    p = [Fraction(0)] * (width - len(p)) + list(p)
    q = [Fraction(0)] * (width - len(q)) + list(q)
    return _trim([x - y for x, y in zip(p, q)])


def charpoly(matrix) -> list:
    """Characteristic polynomial det(x I - M) by the Faddeev-LeVerrier recursion.

    Works for any element type closed under +, * and division by int
    (float, complex, Fraction).  Returns n + 1 coefficients, leading 1.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    zero = m[0][0] * 0
    coeffs = [zero + 1]
    acc = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        # acc <- M (acc + c_{k-1} I)
        prev = coeffs[-1]
        shifted = [[acc[i][j] + (prev if i == j else zero) for j in range(n)]
                   for i in range(n)]
        acc = [[sum((m[i][l] * shifted[l][j] for l in range(n)), zero)
                for j in range(n)] for i in range(n)]
        trace = sum((acc[i][i] for i in range(n)), zero)
        coeffs.append(-trace / k)
    return coeffs


def exact_charpoly(matrix: np.ndarray) -> list[Fraction]:
    """Characteristic polynomial of a real float matrix, computed exactly."""
    entries = [[Fraction(float(x)) for x in row] for row in np.asarray(matrix, float)]
    return charpoly(entries)


class GaussianRational:
    """Exact complex number with Fraction parts; enough arithmetic for ``charpoly``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re, self.im = Fraction(re), Fraction(im)

    @classmethod
    def lift(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        z = complex(x)
        return cls(Fraction(z.real), Fraction(z.imag))

    def __add__(self, other):
        o = GaussianRational.lift(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.lift(other))

    def __mul__(self, other):
        o = GaussianRational.lift(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, n: int):
        return GaussianRational(self.re / n, self.im / n)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


def exact_pencil_charpoly(A: np.ndarray, B: np.ndarray, k: float) -> list[complex]:
    """det(x I - A + i k B) for real float A, B; exact until the final rounding."""
    A, B = np.asarray(A, float), np.asarray(B, float)
    kk = Fraction(float(k))
    entries = [[GaussianRational(Fraction(float(a)), -kk * Fraction(float(b)))
                for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]
    return [complex(c) for c in charpoly(entries)]


def real_matrix_eigenvalues(matrix: np.ndarray, cluster_tol: float = 1e-7) -> np.ndarray:
    """Eigenvalues of a small real matrix through its exact characteristic polynomial.

    The polynomial is split into square-free factors so that repeated
    eigenvalues produced by the matrix structure are recovered exactly in
    multiplicity; each factor is solved by ``aberth``.
    """
    poly = exact_charpoly(matrix)
    roots: list[complex] = []
    for factor, mult in squarefree_factors(poly):
        reduced, zeros = strip_zero_roots(factor)
        found = list(aberth([complex(c) for c in reduced])) if len(reduced) > 1 else []
        found += [0j] * zeros
        roots.extend(found * mult)
    return merge_clusters(np.array(roots, dtype=complex), cluster_tol,
                          [complex(c) for c in poly])
