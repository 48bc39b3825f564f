"""First-order perturbation matrices for the bare, Zeeman and Stark configurations.

Every block is assembled as (coupling) x (radial moment) x (angular matrix).
The angular matrices come from the harmonic decomposition of x_i^2/r^2 and
the Gaunt integral; the radial moments come from ``hydrogenic``.

The curvature tensor enters through its lab-frame R_0i0i.  ``axes`` maps lab
x, y, z onto curvature axes (default: radial along x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy.optimize import linear_sum_assignment

from curvedatom.angular import clebsch_gordan, quadratic_decomposition, triple_y_integral
from curvedatom.constants import PhysicalContext, ValidityReport, validity_report
from curvedatom.curvature import IDENTITY_AXES, CurvatureTensor
from curvedatom.eigen import diagonalize, eigenvalues
from curvedatom.hydrogenic import (
    AtomState,
    manifold,
    radial_expectation,
    radial_matrix_element,
)
from curvedatom.potentials import zeeman_curvature_factor

STARK_MAX_N = 4


class TermTag(str, Enum):
    MASS_QUADRUPOLE = "mass_quadrupole"
    NUCLEAR_CURVATURE = "nuclear_curvature"
    ZEEMAN_FLAT = "zeeman_flat"
    ZEEMAN_CURVATURE = "zeeman_curvature"
    STARK_FLAT = "stark_flat"
    STARK_CURVATURE = "stark_curvature"


TERM_ORDER = tuple(TermTag)
FLAT_TERMS = (TermTag.ZEEMAN_FLAT, TermTag.STARK_FLAT)
CURVATURE_TERMS = tuple(t for t in TermTag if t not in FLAT_TERMS)


@dataclass(frozen=True)
class PerturbationMatrix:
    basis: tuple[AtomState, ...]
    entries: np.ndarray
    term_tag: TermTag

    def __post_init__(self):
        n = len(self.basis)
        if self.entries.shape != (n, n):
            raise ValueError(f"entries shape {self.entries.shape} does not match basis size {n}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def hermiticity_error(self) -> float:
        scale = max(np.linalg.norm(self.entries), 1e-300)
        return float(np.linalg.norm(self.entries - self.entries.conj().T) / scale)


@dataclass(frozen=True)
class EnergyCorrection:
    """First-order level: flat energy plus per-term shifts."""

    state: AtomState
    flat_energy: float
    terms: dict
    validity: ValidityReport | None = None
    vector: np.ndarray | None = field(default=None, repr=False)

    @property
    def shift(self) -> float:
        return math.fsum(self.terms.values())

    @property
    def total(self) -> float:
        return self.flat_energy + self.shift

    def term(self, tag) -> float:
        return self.terms.get(TermTag(tag), 0.0)


@dataclass(frozen=True)
class BareAtomResult:
    beta: float
    eigenvalues: tuple[tuple[float, int], ...]  # (value, multiplicity)


@dataclass(frozen=True)
class PintoRatio:
    printed_formula: float
    printed_scaling: float
    direct_ratio: float


# angular matrices ---------------------------------------------------------

def _harmonic_weights(weights) -> dict:
    """Y_LM coefficients of sum_i weights[i] x_i^2 / r^2."""
    out: dict = {}
    for w, axis in zip(weights, "xyz"):
        if w == 0:
            continue
        for key, c in quadratic_decomposition(axis).coefficients.items():
            out[key] = out.get(key, 0.0) + w * c
    return out


def angular_quadratic(rows, cols, weights) -> np.ndarray:
    """<l m| sum_i w_i x_i^2/r^2 |l' m'> over (l, m) pairs."""
    coeffs = _harmonic_weights(weights)
    out = np.zeros((len(rows), len(cols)))
    for i, (l, m) in enumerate(rows):
        for j, (lp, mp) in enumerate(cols):
            if abs(l - lp) not in (0, 2):
                continue
            out[i, j] = sum(c * triple_y_integral(L, M, lp, mp, l, m)
                            for (L, M), c in coeffs.items() if c)
    return out


def angular_cos(rows, cols) -> np.ndarray:
    """<l m| cos(theta) |l' m'>."""
    k = math.sqrt(4.0 * math.pi / 3.0)
    out = np.zeros((len(rows), len(cols)))
    for i, (l, m) in enumerate(rows):
        for j, (lp, mp) in enumerate(cols):
            if abs(l - lp) == 1 and m == mp:
                out[i, j] = k * triple_y_integral(1, 0, lp, mp, l, m)
    return out


def angular_quadratic_cos(rows, cols, weights) -> np.ndarray:
    """<l m| (sum_i w_i x_i^2/r^2) cos(theta) |l' m'> by inserting a complete set.

    cos(theta) raises l' by at most one, so the intermediate sum is finite.
    """
    lmax = max(l for l, _ in list(rows) + list(cols)) + 1
    mid = [(l, m) for l in range(lmax + 1) for m in range(-l, l + 1)]
    return angular_quadratic(rows, mid, weights) @ angular_cos(mid, cols)


# radial helper --------------------------------------------------------------

def _radial(ctx: PhysicalContext, n: int, l1: int, l2: int, k: int) -> float:
    if l1 == l2:
        return radial_expectation(ctx, AtomState(n, l1), k)
    return radial_matrix_element(ctx, n, l1, l2, k)


def _block(ctx, basis, k, angular, prefactor) -> np.ndarray:
    out = np.zeros((len(basis), len(basis)))
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            if angular[i, j] != 0.0:
                out[i, j] = prefactor * _radial(ctx, a.n, a.l, b.l, k) * angular[i, j]
    return out


def _lm(basis) -> list[tuple[int, int]]:
    return [(s.l, s.m_l) for s in basis]


def _bare_blocks(ctx, curv, basis, axes) -> list[PerturbationMatrix]:
    w = curv.time_components(axes)
    ang = angular_quadratic(_lm(basis), _lm(basis), w)
    mass = _block(ctx, basis, 2, ang, 0.5 * ctx.m_electron * ctx.c**2)
    nuclear = _block(ctx, basis, 1, ang, 0.25 * ctx.qe)
    basis = tuple(basis)
    return [PerturbationMatrix(basis, mass, TermTag.MASS_QUADRUPOLE),
            PerturbationMatrix(basis, nuclear, TermTag.NUCLEAR_CURVATURE)]


# public operations ----------------------------------------------------------

def bare_atom_matrix(ctx: PhysicalContext, curv: CurvatureTensor, n: int, l: int,
                     axes=IDENTITY_AXES) -> list[PerturbationMatrix]:
    """Mass-quadrupole and nuclear-curvature blocks over the (n, l) manifold.

    The mass term is (m c^2 / 2) R_0i0j x^i x^j; the nuclear term is
    (Q e / 4) R_0i0j x^i x^j / r.  Basis order is m_l = -l..l.
    """
    return _bare_blocks(ctx, curv, manifold(n, l), axes)


def beta(ctx: PhysicalContext, curv: CurvatureTensor, n: int, axes=IDENTITY_AXES) -> float:
    """(1/10) Q e R_0303 a (3 n^2 - 2) with a the Z-scaled Bohr radius."""
    r0303 = curv.time_components(axes)[2]
    return 0.1 * ctx.qe * r0303 * ctx.bohr_radius() * (3 * n**2 - 2)


def bare_atom_result(ctx: PhysicalContext, curv: CurvatureTensor, n: int, l: int = 1,
                     axes=IDENTITY_AXES) -> BareAtomResult:
    nuclear = bare_atom_matrix(ctx, curv, n, l, axes)[1]
    spectrum = tuple((e.value, e.multiplicity) for e in diagonalize(nuclear))
    return BareAtomResult(beta(ctx, curv, n, axes), spectrum)


def pinto_ratio(ctx: PhysicalContext, curv: CurvatureTensor, n: int, l: int,
                axes=IDENTITY_AXES) -> PintoRatio:
    """Nuclear-curvature shift relative to the mass-quadrupole shift.

    ``printed_formula`` is 0.1 Q e <r> / (m c^2 <r^2>); ``printed_scaling`` is
    0.1 e^2 (3n^2 - l(l+1)) / (2 m c^2 a n^3 (2l+1)); ``direct_ratio`` is the
    ratio of the two blocks' spectral norms.
    """
    if l == 0:
        raise ValueError("l = 0: both corrections vanish and the ratio is 0/0")
    state = AtomState(n, l)
    mass, nuclear = bare_atom_matrix(ctx, curv, n, l, axes)
    mass_norm = np.linalg.norm(mass.entries, 2)
    if mass_norm == 0.0:
        raise ValueError("zero curvature: the ratio is undefined")
    direct = float(np.linalg.norm(nuclear.entries, 2) / mass_norm)
    mc2 = ctx.m_electron * ctx.c**2
    r1 = radial_expectation(ctx, state, 1)
    r2 = radial_expectation(ctx, state, 2)
    printed = 0.1 * ctx.qe * r1 / (mc2 * r2)
    scaling = 0.1 * ctx.e_charge**2 * (3 * n**2 - l * (l + 1)) / (
        2.0 * mc2 * ctx.bohr_radius() * n**3 * (2 * l + 1))
    return PintoRatio(printed, scaling, direct)


def zeeman_bracket(l: int, m_l: int) -> float:
    """1 - C^{2l,l}_{00,0} C^{2l,l}_{0 m, m}."""
    prod = clebsch_gordan(2, 0, l, 0, l, 0) * clebsch_gordan(2, 0, l, m_l, l, m_l)
    return float(1 - prod.rational) if prod.radicand == 1 else 1.0 - prod.value


def zeeman_bracket_exact(l: int, m_l: int) -> Fraction:
    prod = clebsch_gordan(2, 0, l, 0, l, 0) * clebsch_gordan(2, 0, l, m_l, l, m_l)
    if prod.radicand != 1:
        raise ArithmeticError("bracket is irrational")
    return 1 - prod.rational


def zeeman_terms(ctx: PhysicalContext, curv: CurvatureTensor, B0: float, state: AtomState,
                 axes=IDENTITY_AXES) -> dict:
    if B0 < 0:
        raise ValueError(f"B0 must be non-negative, got {B0!r}")
    mu = ctx.e_charge * B0 / (ctx.m_electron * ctx.c)
    flat = -0.5 * mu * state.m_l * ctx.hbar
    K = zeeman_curvature_factor(curv, axes)
    r2 = radial_expectation(ctx, state, 2)
    curved = mu / 18.0 * K * r2 * state.m_l * ctx.hbar * zeeman_bracket(state.l, state.m_l)
    return {TermTag.ZEEMAN_FLAT: float(flat), TermTag.ZEEMAN_CURVATURE: float(curved)}


def zeeman_correction(ctx: PhysicalContext, curv: CurvatureTensor, B0: float,
                      state: AtomState, axes=IDENTITY_AXES) -> EnergyCorrection:
    """Normal Zeeman shift and its curvature correction for one |n l m_l>."""
    terms = zeeman_terms(ctx, curv, B0, state, axes)
    return EnergyCorrection(state, ctx.bohr_energy(state.n), terms,
                            validity_report(ctx, curv.M, curv.r, B0))


def stark_matrix(ctx: PhysicalContext, curv: CurvatureTensor, E0: float, n: int,
                 axes=IDENTITY_AXES) -> list[PerturbationMatrix]:
    """Stark and bare-atom blocks over the full n-shell (dimension n^2).

    Returned in the order stark_flat, stark_curvature, mass_quadrupole,
    nuclear_curvature.
    """
    if E0 < 0:
        raise ValueError(f"E0 must be non-negative, got {E0!r}")
    if not 1 <= n <= STARK_MAX_N:
        raise ValueError(f"Stark manifold supported for 1 <= n <= {STARK_MAX_N}, got {n}")
    basis = tuple(manifold(n))
    lm = _lm(basis)
    w = curv.time_components(axes)
    e = ctx.e_charge
    flat = _block(ctx, basis, 1, angular_cos(lm, lm), e * E0)
    curved = _block(ctx, basis, 3, angular_quadratic_cos(lm, lm, w), 0.25 * e * E0)
    return [PerturbationMatrix(basis, flat, TermTag.STARK_FLAT),
            PerturbationMatrix(basis, curved, TermTag.STARK_CURVATURE),
            *_bare_blocks(ctx, curv, basis, axes)]


# level resolution -------------------------------------------------------------

def resolve_levels(basis, flat: np.ndarray, curvature: dict) -> list[tuple[AtomState, dict, np.ndarray]]:
    """Two-stage degenerate perturbation theory.

    The flat (curvature-free) perturbation is diagonalized first; the summed
    curvature blocks are then diagonalized inside each of its degenerate
    eigenspaces, which keeps every curvature shift linear in the curvature.
    Each level gets the basis label of maximal overlap (one-to-one). The flat
    value reported is the eigenvalue of its flat eigenspace, so it does not
    depend on the curvature.
    """
    dim = len(basis)
    total_curv = sum(curvature.values(), np.zeros((dim, dim)))
    levels = []
    for space in diagonalize(flat):
        V = space.vectors
        sub = V.conj().T @ total_curv @ V
        for inner in diagonalize(sub):
            for w in inner.vectors.T:
                v = V @ w
                terms = {tag: float(np.vdot(v, M @ v).real) for tag, M in curvature.items()}
                levels.append((float(space.value), terms, v))
    overlap = np.array([np.abs(v) ** 2 for _, _, v in levels])
    rows, cols = linear_sum_assignment(-overlap)
    label = dict(zip(rows, cols))
    out = []
    for i, (flat_value, terms, v) in enumerate(levels):
        out.append((basis[label[i]], {"flat": flat_value, **terms}, v))
    return out


def first_order_levels(ctx: PhysicalContext, curv: CurvatureTensor, mode: str, n: int,
                       l: int | None = None, B0: float = 0.0, E0: float = 0.0,
                       axes=IDENTITY_AXES) -> list[EnergyCorrection]:
    """All first-order levels of one degenerate manifold, sorted by label.

    ``bare`` and ``zeeman`` use the (n, l) manifold; ``stark`` the n-shell.
    """
    validity = validity_report(ctx, curv.M, curv.r, B0)
    if mode == "stark":
        blocks = stark_matrix(ctx, curv, E0, n, axes)
        basis = blocks[0].basis
        flat_tag = TermTag.STARK_FLAT
        flat = blocks[0].entries
        curvature = {b.term_tag: b.entries for b in blocks[1:]}
    elif mode in ("bare", "zeeman"):
        if l is None:
            raise ValueError(f"{mode} mode needs l")
        blocks = bare_atom_matrix(ctx, curv, n, l, axes)
        basis = blocks[0].basis
        curvature = {b.term_tag: b.entries for b in blocks}
        flat = np.zeros((len(basis), len(basis)))
        flat_tag = None
        if mode == "zeeman":
            flat_tag = TermTag.ZEEMAN_FLAT
            zt = [zeeman_terms(ctx, curv, B0, s, axes) for s in basis]
            flat = np.diag([t[TermTag.ZEEMAN_FLAT] for t in zt])
            curvature[TermTag.ZEEMAN_CURVATURE] = np.diag([t[TermTag.ZEEMAN_CURVATURE] for t in zt])
    else:
        raise ValueError(f"unknown mode {mode!r}")
    out = []
    for state, values, v in resolve_levels(basis, flat, curvature):
        terms = {tag: 0.0 for tag in TERM_ORDER}
        for tag, val in values.items():
            if tag == "flat":
                if flat_tag is not None:
                    terms[flat_tag] = val
            else:
                terms[tag] = val
        out.append(EnergyCorrection(state, ctx.bohr_energy(n), terms, validity, v))
    return sorted(out, key=lambda e: (e.state.l, e.state.m_l))


__all__ = [
    "TermTag",
    "PerturbationMatrix",
    "EnergyCorrection",
    "BareAtomResult",
    "PintoRatio",
    "angular_quadratic",
    "angular_cos",
    "angular_quadratic_cos",
    "bare_atom_matrix",
    "beta",
    "bare_atom_result",
    "pinto_ratio",
    "zeeman_bracket",
    "zeeman_correction",
    "stark_matrix",
    "resolve_levels",
    "first_order_levels",
    "eigenvalues",
]
