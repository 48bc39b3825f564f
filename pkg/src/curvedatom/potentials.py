"""First-order solutions of the curvature-deformed Maxwell equations.

Three sources are covered: the point nucleus, a uniform magnetic field and a
uniform electric field (the limit of a separating dipole pair).  Pieces with
1/r factors are kept as ``RadialTerm`` objects; polynomial pieces are
``PolyField`` instances with exact coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from curvedatom.constants import PhysicalContext
from curvedatom.curvature import IDENTITY_AXES, CurvatureMode, CurvatureTensor
from curvedatom.polyfield import PolyField, X, Y, Z, divergence

ZERO3 = (PolyField(), PolyField(), PolyField())


class Source(str, Enum):
    NUCLEUS = "nucleus"
    UNIFORM_B = "uniform_B"
    DIPOLE_PAIR_E = "dipole_pair_E"


@dataclass(frozen=True, eq=False)
class RadialTerm:
    """coefficient * r**r_power * (x . form . x), or without the form when it is None."""

    coefficient: float
    r_power: int
    form: np.ndarray | None = None

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        r = float(np.linalg.norm(x))
        quad = 1.0 if self.form is None else float(x @ self.form @ x)
        return self.coefficient * r**self.r_power * quad

    def is_zero(self) -> bool:
        if self.coefficient == 0:
            return True
        return self.form is not None and not np.any(self.form)


@dataclass(frozen=True)
class PotentialSolution:
    source_label: Source
    a0_terms: tuple = ()
    a0_flat: PolyField = field(default_factory=PolyField)
    a0_correction: PolyField = field(default_factory=PolyField)
    a_terms: tuple = ((), (), ())
    a_flat: tuple = ZERO3
    a_correction: tuple = ZERO3
    source: tuple | None = None

    @property
    def a_vec(self) -> tuple[PolyField, PolyField, PolyField]:
        return tuple(f + c for f, c in zip(self.a_flat, self.a_correction))

    @property
    def a0_poly(self) -> PolyField:
        return self.a0_flat + self.a0_correction

    def scalar(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return float(self.a0_poly(*x) + sum(t(x) for t in self.a0_terms))

    def scalar_correction(self, x) -> float:
        """Curvature part of A_0 at ``x`` (drops the flat Coulomb/uniform piece)."""
        x = np.asarray(x, dtype=float)
        rest = sum(t(x) for t in self.a0_terms if not (t.r_power == -1 and t.form is None))
        return float(self.a0_correction(*x) + rest)

    def vector(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = [a(*x) + sum(t(x) for t in terms) for a, terms in zip(self.a_vec, self.a_terms)]
        return np.array(out, dtype=float)


def _require_leading(curv: CurvatureTensor) -> None:
    if curv.mode is not CurvatureMode.LEADING_ORTHONORMAL:
        raise ValueError("potentials need leading_orthonormal curvature")


def laplacian(f: PolyField) -> PolyField:
    return f.laplacian()


def nuclear_potential(ctx: PhysicalContext, curv: CurvatureTensor, Q: float | None = None,
                      axes=IDENTITY_AXES) -> PotentialSolution:
    """Potentials of a point nucleus to first order in curvature.

    Ricci-bearing terms are kept; they vanish for a vacuum tensor.
    """
    _require_leading(curv)
    Q = ctx.nuclear_charge if Q is None else Q
    R = curv.riemann(axes)
    ric = curv.ricci(axes)
    scal = float(np.trace(np.diag([-1.0, 1.0, 1.0, 1.0]) @ ric))
    # R^0_{j0k} is identified with R_{0j0k}.
    r0j0k = R[0, 1:, 0, 1:]
    a0 = (
        RadialTerm(-Q, -1),
        RadialTerm(Q / 12.0 * (scal + 4.0 * ric[0, 0]), 1),
        RadialTerm(Q / 12.0, -1, 3.0 * r0j0k - ric[1:, 1:]),
    )
    a_terms = tuple(
        (RadialTerm(0.5 * Q * ric[0, m], 1), RadialTerm(Q / 6.0, -1, R[0, 1:, m, 1:].copy()))
        for m in (1, 2, 3)
    )
    return PotentialSolution(Source.NUCLEUS, a0_terms=a0, a_terms=a_terms)


def zeeman_curvature_factor(curv: CurvatureTensor, axes=IDENTITY_AXES) -> float:
    """3 R^2_002 + 2 R^1_212 in the lab frame, with R^2_002 = R_2002 = -R_0202."""
    r0202 = curv.time_components(axes)[1]
    return -3.0 * r0202 + 2.0 * curv.spatial_component(1, 2, axes)


def uniform_b_potential(ctx: PhysicalContext, curv: CurvatureTensor, B0: float,
                        axes=IDENTITY_AXES) -> PotentialSolution:
    """Vector potential of B = B0 z-hat to first order in curvature (Coulomb gauge).

    The correction is (B0/6) K times the sum of two exact cubics: the
    harmonic, curl-free pattern (y^3/3 - y x^2, -x^3/3 + x y^2, 0) and the
    particular solution (x^2 + y^2)(y, -x, 0)/8, whose Laplacian equals the
    source (y, -x, 0).
    """
    _require_leading(curv)
    if B0 < 0:
        raise ValueError(f"B0 must be non-negative, got {B0!r}")
    K = zeeman_curvature_factor(curv, axes)
    half = Fraction(1, 2)
    third = Fraction(1, 3)
    flat = ((-half * Y).with_scale(B0), (half * X).with_scale(B0), PolyField())
    harmonic = (third * Y**3 - Y * X**2, -third * X**3 + X * Y**2, PolyField())
    rho2 = X**2 + Y**2
    particular = (Fraction(1, 8) * rho2 * Y, Fraction(-1, 8) * rho2 * X, PolyField())
    scale = B0 * K / 6.0
    correction = tuple((h + p).with_scale(scale) for h, p in zip(harmonic, particular))
    source = (Y.with_scale(scale), (-X).with_scale(scale), PolyField())
    return PotentialSolution(Source.UNIFORM_B, a_flat=flat, a_correction=correction,
                             source=source)


def printed_b_correction() -> tuple[PolyField, PolyField, PolyField]:
    """The bare cubic pattern of the correction as printed (no prefactor)."""
    third = Fraction(1, 3)
    return (third * Y**3 - Y * X**2, -third * X**3 + X * Y**2, PolyField())


def dipole_pair_charge(E0: float, separation: float) -> float:
    """Charge Q with 2Q/R^2 = E0 for charges +-Q at -+R z-hat."""
    return 0.5 * E0 * separation**2


def uniform_e_potential(ctx: PhysicalContext, curv: CurvatureTensor, E0: float,
                        axes=IDENTITY_AXES) -> PotentialSolution:
    """A_0 = -E0 z - (E0/4) R^0_{i0j} x^i x^j z, the R -> infinity dipole-pair limit."""
    _require_leading(curv)
    if E0 < 0:
        raise ValueError(f"E0 must be non-negative, got {E0!r}")
    r0i0i = curv.time_components(axes)
    flat = (-Z).with_scale(E0)
    correction = PolyField()
    for axis, var in enumerate((X, Y, Z)):
        correction = correction + (Fraction(-1, 4) * var**2 * Z).with_scale(E0 * r0i0i[axis])
    return PotentialSolution(Source.DIPOLE_PAIR_E, a0_flat=flat, a0_correction=correction)


def coulomb_gauge_residual(solution: PotentialSolution) -> PolyField:
    return divergence(solution.a_vec)
