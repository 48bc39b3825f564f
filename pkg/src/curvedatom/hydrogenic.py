"""Hydrogenic bound states: radial functions and radial moments <r^k>."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from curvedatom.constants import PhysicalContext

K_MIN, K_MAX = -2, 3


@dataclass(frozen=True, order=True)
class AtomState:
    n: int
    l: int
    m_l: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.l <= self.n - 1:
            raise ValueError(f"l must satisfy 0 <= l <= n-1, got n={self.n}, l={self.l}")
        if abs(self.m_l) > self.l:
            raise ValueError(f"|m_l| must be <= l, got l={self.l}, m_l={self.m_l}")


def manifold(n: int, l: int | None = None) -> list[AtomState]:
    """Basis ordered by l then m_l = -l..l; the whole n-shell when ``l`` is None."""
    ls = range(n) if l is None else [l]
    return [AtomState(n, ll, m) for ll in ls for m in range(-ll, ll + 1)]


def _check_k(k: int) -> None:
    if int(k) != k or not K_MIN <= k <= K_MAX:
        raise ValueError(f"moment order k must be an integer in [{K_MIN}, {K_MAX}], got {k!r}")


@lru_cache(maxsize=None)
def radial_polynomial(n: int, l: int) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Exact form of R_nl in units of the Bohr radius a.

    Returns ``(norm_sq, coeffs)`` with
    R_nl(x a) = sqrt(norm_sq) * sum_p coeffs[p] x**p * exp(-x/n) * a**(-3/2).
    """
    AtomState(n, l)
    k, alpha = n - l - 1, 2 * l + 1
    coeffs = [Fraction(0)] * (n)
    for i in range(k + 1):
        lag = Fraction((-1) ** i * math.comb(k + alpha, k - i), math.factorial(i))
        coeffs[l + i] += lag * Fraction(2, n) ** (l + i)
    norm_sq = Fraction(2, n) ** 3 * Fraction(math.factorial(k), 2 * n * math.factorial(n + l))
    return norm_sq, tuple(coeffs)


def radial_function(n: int, l: int, x: np.ndarray) -> np.ndarray:
    """R_nl at x = r/a, in units of a**(-3/2)."""
    norm_sq, coeffs = radial_polynomial(n, l)
    poly = np.polynomial.polynomial.polyval(x, [float(c) for c in coeffs])
    return math.sqrt(norm_sq) * poly * np.exp(-np.asarray(x) / n)


@lru_cache(maxsize=None)
def _exact_overlap(n: int, l1: int, l2: int, k: int) -> tuple[Fraction, Fraction]:
    ns1, c1 = radial_polynomial(n, l1)
    ns2, c2 = radial_polynomial(n, l2)
    half_n = Fraction(n, 2)
    total = Fraction(0)
    for p, a in enumerate(c1):
        if not a:
            continue
        for q, b in enumerate(c2):
            if not b:
                continue
            power = p + q + k + 2
            total += a * b * math.factorial(power) * half_n ** (power + 1)
    return total, ns1 * ns2


def radial_matrix_element(ctx: PhysicalContext, n: int, l1: int, l2: int, k: int) -> float:
    """<n l1 | r^k | n l2> by exact integration of the polynomial radial functions.

    Valid for l1 != l2 too; this is what the Stark blocks need.
    """
    _check_k(k)
    AtomState(n, l1)
    AtomState(n, l2)
    total, norm_sq = _exact_overlap(n, l1, l2, k)
    root, exact = _rational_sqrt(norm_sq)
    value = float(total * root) if exact else float(total) * math.sqrt(norm_sq)
    return value * ctx.bohr_radius() ** k


def _rational_sqrt(q: Fraction) -> tuple[Fraction, bool]:
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den), True
    return Fraction(0), False


def radial_expectation(ctx: PhysicalContext, state: AtomState, k: int) -> float:
    """Closed-form <r^k>_{n,l}, k in [-2, 3], in units of length**k."""
    _check_k(k)
    a = ctx.bohr_radius()
    n, L = state.n, state.l * (state.l + 1)
    if k == 0:
        return 1.0
    if k == -1:
        return 1.0 / (a * n**2)
    if k == -2:
        return 1.0 / (a**2 * n**3 * (state.l + 0.5))
    r1 = a / 2.0 * (3 * n**2 - L)
    if k == 1:
        return r1
    r2 = a**2 * n**2 / 2.0 * (5 * n**2 + 1 - 3 * L)
    if k == 2:
        return r2
    # Kramers relation at k = 3 solved for <r^3>.
    return n**2 / 4.0 * (7.0 * a * r2 - 0.75 * ((2 * state.l + 1) ** 2 - 9) * a**2 * r1)


class QuadratureError(RuntimeError):
    pass


PANEL_NODES = 64


@lru_cache(maxsize=8)
def _composite_rule(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre on [-1, 1] with equal panels of PANEL_NODES points.

    A single very high order rule loses accuracy in its weights; panels keep
    each rule small.
    """
    panels = max(1, nodes // PANEL_NODES)
    t, w = np.polynomial.legendre.leggauss(PANEL_NODES)
    edges = np.linspace(-1.0, 1.0, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    wt = (half[:, None] * w[None, :]).ravel()
    return x, wt


def _quad_moment(n: int, l: int, k: int, nodes: int) -> float:
    x_max = 40.0 * n**2
    t, w = _composite_rule(nodes)
    x = 0.5 * x_max * (t + 1.0)
    f = radial_function(n, l, x) ** 2 * x ** (k + 2)
    return 0.5 * x_max * float(np.dot(w, f))


def radial_expectation_quadrature(ctx: PhysicalContext, state: AtomState, k: int,
                                  nodes: int = 2048, rtol: float = 1e-9) -> float:
    """<r^k> by composite Gauss-Legendre quadrature of |R_nl|^2 r^(k+2) on [0, 40 n^2 a].

    Convergence is checked by doubling the node count.
    """
    _check_k(k)
    if nodes < 2000:
        raise ValueError("at least 2000 nodes are required")
    coarse = _quad_moment(state.n, state.l, k, nodes)
    fine = _quad_moment(state.n, state.l, k, 2 * nodes)
    if abs(fine - coarse) > rtol * abs(fine):
        raise QuadratureError(f"node doubling changed <r^{k}> by "
                              f"{abs(fine - coarse) / abs(fine):.2e} relative")
    return fine * ctx.bohr_radius() ** k
