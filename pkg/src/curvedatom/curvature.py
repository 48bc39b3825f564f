"""Schwarzschild curvature at the atom and the first-order normal-coordinate metric.

Index convention: 0 is time, 1..3 are local spatial axes.  In the
curvature frame axis 1 is radial.  Every function that needs the tensor in a
"lab" frame takes ``axes``: lab axis k (x, y, z) is curvature axis
``axes[k]``.  The identity ``(1, 2, 3)`` puts the radial direction along x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from curvedatom.constants import PhysicalContext, check_outside_horizon

IDENTITY_AXES = (1, 2, 3)
SPATIAL_PAIRS = ((1, 2, 1, 2), (1, 3, 1, 3), (2, 3, 2, 3))


class CurvatureMode(str, Enum):
    EXACT_PRINTED = "exact_printed"
    LEADING_ORTHONORMAL = "leading_orthonormal"


class RegimeError(ValueError):
    """Point lies outside the region where the first-order expansion holds."""

    def __init__(self, message: str, product: float):
        super().__init__(message)
        self.product = product


def check_axes(axes) -> tuple[int, int, int]:
    axes = tuple(int(a) for a in axes)
    if sorted(axes) != [1, 2, 3]:
        raise ValueError(f"axes must be a permutation of (1, 2, 3), got {axes!r}")
    return axes


@dataclass(frozen=True)
class CurvatureTensor:
    """Nonvanishing Riemann components of a diagonal (Petrov-D-like) tensor.

    ``r0i0j`` holds R_0101, R_0202, R_0303 in cm^-2.  ``spatial`` maps the
    index patterns in ``SPATIAL_PAIRS`` to their values.  In ``exact_printed``
    mode the (2,3,2,3) entry is the dimensionless coordinate-basis value
    R^3_232 = 2GM/(c^2 r), so that mode cannot feed the full tensor.
    """

    r0i0j: tuple[float, float, float]
    spatial: dict = field(default_factory=dict)
    mode: CurvatureMode = CurvatureMode.LEADING_ORTHONORMAL
    M: float = 0.0
    r: float = math.inf

    def time_components(self, axes=IDENTITY_AXES) -> np.ndarray:
        """R_0i0i in the lab frame (index 0 = lab x)."""
        axes = check_axes(axes)
        return np.array([self.r0i0j[a - 1] for a in axes], dtype=float)

    def spatial_component(self, i: int, j: int, axes=IDENTITY_AXES) -> float:
        """R_ijij for lab axes i != j (1-based)."""
        axes = check_axes(axes)
        a, b = sorted((axes[i - 1], axes[j - 1]))
        if a == b:
            return 0.0
        if self.mode is CurvatureMode.EXACT_PRINTED and (a, b) == (2, 3):
            raise ValueError("R_2323 is stored as a dimensionless coordinate-basis value "
                             "in exact_printed mode; use leading_orthonormal")
        return float(self.spatial.get((a, b, a, b), 0.0))

    def riemann(self, axes=IDENTITY_AXES) -> np.ndarray:
        """Full R_{abcd} as a 4x4x4x4 array in the lab frame."""
        if self.mode is not CurvatureMode.LEADING_ORTHONORMAL:
            raise ValueError("the full tensor needs leading_orthonormal components")
        axes = check_axes(axes)
        R = np.zeros((4, 4, 4, 4))
        for i, v in enumerate(self.time_components(axes), start=1):
            R[0, i, 0, i] = R[i, 0, i, 0] = v
            R[0, i, i, 0] = R[i, 0, 0, i] = -v
        for i in range(1, 4):
            for j in range(i + 1, 4):
                w = self.spatial_component(i, j, axes)
                R[i, j, i, j] = R[j, i, j, i] = w
                R[i, j, j, i] = R[j, i, i, j] = -w
        return R

    def ricci(self, axes=IDENTITY_AXES) -> np.ndarray:
        eta = np.diag([-1.0, 1.0, 1.0, 1.0])
        return np.einsum("ab,ambn->mn", eta, self.riemann(axes))

    def ricci_scalar(self) -> float:
        eta = np.diag([-1.0, 1.0, 1.0, 1.0])
        return float(np.einsum("mn,mn->", eta, self.ricci()))

    def max_abs(self) -> float:
        vals = list(self.r0i0j)
        if self.mode is CurvatureMode.LEADING_ORTHONORMAL:
            vals += list(self.spatial.values())
        else:
            vals += [v for k, v in self.spatial.items() if k != (2, 3, 2, 3)]
        return max(abs(v) for v in vals)

    def scaled(self, factor: float) -> "CurvatureTensor":
        return CurvatureTensor(
            tuple(factor * v for v in self.r0i0j),
            {k: factor * v for k, v in self.spatial.items()},
            self.mode, self.M, self.r,
        )


def schwarzschild_curvature(ctx: PhysicalContext, M: float, r: float,
                            mode: str | CurvatureMode = CurvatureMode.LEADING_ORTHONORMAL
                            ) -> CurvatureTensor:
    """Riemann components of the Schwarzschild field at radius ``r``.

    ``leading_orthonormal`` gives the static-observer frame values to leading
    order in r_s/r.  ``exact_printed`` gives the closed forms in spherical
    coordinates, including the coordinate-basis R^3_232.
    """
    mode = CurvatureMode(mode)
    check_outside_horizon(ctx, M, r)
    G, c = ctx.G, ctx.c
    gm = G * M
    if mode is CurvatureMode.LEADING_ORTHONORMAL:
        s = gm / (c**2 * r**3)
        return CurvatureTensor(
            (-2.0 * s, s, s),
            {(1, 2, 1, 2): -s, (1, 3, 1, 3): -s, (2, 3, 2, 3): 2.0 * s},
            mode, M, r,
        )
    r1010 = 2.0 * gm * (2.0 * gm - r * c**2) / (c**4 * r**4)
    r2020 = gm * (r * c**2 - 2.0 * gm) / (c**4 * r**4)
    r2121 = gm / (r**2 * (2.0 * gm - r * c**2))
    r3232 = 2.0 * gm / (c**2 * r)
    return CurvatureTensor(
        (r1010, r2020, r2020),
        {(1, 2, 1, 2): r2121, (1, 3, 1, 3): r2121, (2, 3, 2, 3): r3232},
        mode, M, r,
    )


@dataclass(frozen=True)
class MetricSample:
    g00: float
    g0i: np.ndarray
    gij: np.ndarray
    det_g: float
    g00_inv: float
    gij_inv: np.ndarray

    def matrix(self) -> np.ndarray:
        g = np.zeros((4, 4))
        g[0, 0] = self.g00
        g[0, 1:] = g[1:, 0] = self.g0i
        g[1:, 1:] = self.gij
        return g


@dataclass(frozen=True)
class ConnectionSample:
    gamma: np.ndarray  # gamma[upper, lower1, lower2]

    def __getitem__(self, idx):
        return float(self.gamma[idx])

    def as_dict(self) -> dict:
        return {idx: float(v) for idx, v in np.ndenumerate(self.gamma)}


def _check_regime(curv: CurvatureTensor, x: np.ndarray) -> None:
    product = float(np.linalg.norm(x)) * math.sqrt(curv.max_abs())
    if product >= 1.0:
        raise RegimeError(f"|x| sqrt(max|R|) = {product:.3g} >= 1: outside the expansion regime",
                          product)


def rnc_metric(curv: CurvatureTensor, x, axes=IDENTITY_AXES) -> MetricSample:
    """Metric components to first order in curvature at local position ``x``."""
    x = np.asarray(x, dtype=float).reshape(3)
    _check_regime(curv, x)
    R = curv.riemann(axes)
    Ric = curv.ricci(axes)
    xs = x
    tt = np.einsum("lk,l,k->", R[0, 1:, 0, 1:], xs, xs)
    g0i = -2.0 / 3.0 * np.einsum("lik,l,k->i", R[0, 1:, 1:, 1:], xs, xs)
    quad = np.einsum("iljk,l,k->ij", R[1:, 1:, 1:, 1:], xs, xs)
    gij = np.eye(3) - quad / 3.0
    gij_inv = np.eye(3) + quad / 3.0
    det_g = -1.0 + np.einsum("lk,l,k->", Ric[1:, 1:] - 2.0 * R[0, 1:, 0, 1:], xs, xs) / 3.0
    return MetricSample(-1.0 - tt, g0i, gij, float(det_g), -1.0 + tt, gij_inv)


def rnc_connections(curv: CurvatureTensor, x, axes=IDENTITY_AXES) -> ConnectionSample:
    """Christoffel symbols linear in ``x``; symmetric in the lower pair."""
    x = np.asarray(x, dtype=float).reshape(3)
    _check_regime(curv, x)
    R = curv.riemann(axes)
    S = R[1:, 1:, 1:, 1:]
    T = R[0, 1:, 1:, 1:]  # R_{0ijk}
    gam = np.zeros((4, 4, 4))
    gam[0, 1:, 1:] = (np.einsum("ijk,k->ij", T, x) + np.einsum("jik,k->ij", T, x)) / 3.0
    g0i = np.einsum("ik,k->i", R[0, 1:, 0, 1:], x)
    gam[0, 0, 1:] = gam[0, 1:, 0] = g0i
    gam[1:, 1:, 1:] = (np.einsum("jikl,l->ijk", S, x) + np.einsum("kijl,l->ijk", S, x)) / 3.0
    gi0j = np.einsum("kji,k->ij", T, x)
    gam[1:, 0, 1:] = gi0j
    gam[1:, 1:, 0] = gi0j
    gam[1:, 0, 0] = g0i
    return ConnectionSample(gam)
