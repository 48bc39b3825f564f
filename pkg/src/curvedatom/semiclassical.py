"""Bohr-quantized circular orbits with curvature and a uniform magnetic field.

The orbit radius solves

    (n - b rho^2)^2 = alpha rho + gamma rho^3 + delta rho^4

with b = e B0 / (2 c hbar), alpha = m Q e / hbar^2, gamma = m Q e R / (4 hbar^2)
and delta = m^2 c^2 R / hbar^2 + b^2, where R is the lab-frame R_0202.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from curvedatom.constants import PhysicalContext
from curvedatom.curvature import IDENTITY_AXES, CurvatureTensor

CONTINUATION_STEPS = 8
BRACKET = (1e-3, 1e3)
GRID_POINTS = 4000


class RootSelectionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SemiclassicalResult:
    n: int
    rho: float  # cm
    v: float  # cm/s
    r_a: float  # cm, inf when R <= 0
    residual: float  # |f| / largest term
    path: tuple[float, ...] = ()  # rho along the continuation


@dataclass(frozen=True)
class _Quartic:
    """Coefficients in the scaled variable u = rho / L."""

    n: int
    b: float
    alpha: float
    gamma: float
    delta: float

    def terms(self, u: float) -> tuple[float, float, float, float]:
        return ((self.n - self.b * u * u) ** 2, self.alpha * u,
                self.gamma * u**3, self.delta * u**4)

    def __call__(self, u):
        return (self.n - self.b * u * u) ** 2 - self.alpha * u - self.gamma * u**3 - self.delta * u**4

    def derivative(self, u: float) -> float:
        return (-4.0 * self.b * u * (self.n - self.b * u * u) - self.alpha
                - 3.0 * self.gamma * u * u - 4.0 * self.delta * u**3)

    def residual(self, u: float) -> float:
        return abs(self(u)) / max(abs(t) for t in self.terms(u))


def _coefficients(ctx: PhysicalContext, R: float, B0: float, n: int,
                  charge_scale: float, length: float) -> _Quartic:
    hbar2 = ctx.hbar**2
    b = ctx.e_charge * B0 / (2.0 * ctx.c * ctx.hbar)
    alpha = charge_scale * ctx.m_electron * ctx.qe / hbar2
    gamma = alpha * R / 4.0
    delta = ctx.m_electron**2 * ctx.c**2 * R / hbar2 + b * b
    return _Quartic(n, b * length**2, alpha * length, gamma * length**3, delta * length**4)


def _polish(q: _Quartic, u: float) -> float:
    for _ in range(3):
        d = q.derivative(u)
        if d == 0.0:
            break
        step = q(u) / d
        if not math.isfinite(step) or abs(step) > 1e-6 * u:
            break
        u -= step
    return u


def _positive_roots(q: _Quartic, lo: float, hi: float) -> list[float]:
    grid = np.geomspace(lo, hi, GRID_POINTS)
    vals = q(grid)
    roots = []
    for i in np.nonzero(vals == 0.0)[0]:
        roots.append(float(grid[i]))
    for i in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]:
        u = brentq(q, grid[i], grid[i + 1], xtol=1e-300, rtol=4 * np.finfo(float).eps)
        roots.append(_polish(q, u))
    return sorted(roots)


def _pick(roots: list[float], previous: float) -> float:
    if not roots:
        raise RootSelectionError("no real positive root in the search bracket")
    near = [u for u in roots if abs(u - previous) < 0.5 * previous]
    if len(near) > 1:
        raise RootSelectionError(f"ambiguous continuation: roots {near} all near {previous}")
    if not near:
        raise RootSelectionError(f"continuation lost the root near {previous}")
    return near[0]


def orbit_radius(ctx: PhysicalContext, curv: CurvatureTensor, B0: float, n: int,
                 axes=IDENTITY_AXES, charge_scale: float = 1.0) -> SemiclassicalResult:
    """Physical root of the orbit equation, continued from the flat Bohr radius.

    R and B0 are switched on together in ``CONTINUATION_STEPS`` equal steps.
    With ``charge_scale = 0`` (free charge) the start is instead the flat
    Landau radius sqrt(n c hbar / (e B0)) and only R is switched on.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if B0 < 0:
        raise ValueError(f"B0 must be non-negative, got {B0!r}")
    if charge_scale < 0:
        raise ValueError("charge_scale must be non-negative")
    R = float(curv.time_components(axes)[1])
    length = ctx.bohr_radius()
    lo, hi = BRACKET[0] * n**2, BRACKET[1] * n**2

    if charge_scale > 0:
        u = n**2 / (charge_scale * ctx.m_electron * ctx.qe * length / ctx.hbar**2)
        schedule = [(t * R, t * B0) for t in np.linspace(0.0, 1.0, CONTINUATION_STEPS + 1)[1:]]
    else:
        if B0 <= 0:
            raise ValueError("a free charge needs B0 > 0 to bind")
        u = math.sqrt(n * ctx.c * ctx.hbar / (ctx.e_charge * B0)) / length
        schedule = [(t * R, B0) for t in np.linspace(0.0, 1.0, CONTINUATION_STEPS + 1)[1:]]
    if not lo <= u <= hi:
        raise RootSelectionError(f"starting radius {u * length:.6g} cm lies outside the bracket")

    path = [float(u * length)]
    q = None
    for r_t, b_t in schedule:
        q = _coefficients(ctx, r_t, b_t, n, charge_scale, length)
        u = float(_pick(_positive_roots(q, lo, hi), u))
        path.append(float(u * length))

    rho = float(u * length)
    v = n * ctx.hbar / (ctx.m_electron * rho)
    return SemiclassicalResult(n, rho, v, curvature_radius(ctx, curv, axes),
                               float(q.residual(u)), tuple(path))


def curvature_radius(ctx: PhysicalContext, curv: CurvatureTensor, axes=IDENTITY_AXES) -> float:
    """r_a = (4 hbar^2 / (3 m Q e R))^(1/3); inf for R <= 0 (straight-line motion)."""
    R = float(curv.time_components(axes)[1])
    return curvature_radius_from(ctx, R)


def curvature_radius_from(ctx: PhysicalContext, R: float) -> float:
    if R <= 0:
        return math.inf
    return np.cbrt(4.0 * ctx.hbar**2 / (3.0 * ctx.m_electron * ctx.qe * R)).item()
