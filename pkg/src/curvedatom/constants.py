"""Unit system, physical constants and regime-validity checks.

All physics is done in Gaussian cgs.  The ``atomic`` system sets
hbar = e = m_e = 1 (lengths in bohr, masses in electron masses) and is
mainly useful for clean test fixtures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

from scipy import constants as sc

# statC per coulomb is c[SI] / 10 exactly.
_STATC_PER_C = sc.c * 10.0

CODATA_CGS = {
    "G": sc.G * 1e3,
    "c": sc.c * 1e2,
    "hbar": sc.hbar * 1e7,
    "e_charge": sc.e * _STATC_PER_C,
    "m_electron": sc.m_e * 1e3,
}

SOLAR_MASS_G = 1.989e33
SOLAR_RADIUS_CM = 6.957e10

WEAK_FIELD_THRESHOLD = 1e-2
CURVATURE_ATOM_THRESHOLD = 1e-2
WEAK_B_FIELD_GAUSS = 1e-2


class UnitSystem(str, Enum):
    GAUSSIAN_CGS = "gaussian_cgs"
    ATOMIC = "atomic"


class HorizonError(ValueError):
    """Raised when the atom sits at or inside the Schwarzschild radius."""


def _atomic_defaults() -> dict[str, float]:
    cgs = CODATA_CGS
    a0 = cgs["hbar"] ** 2 / (cgs["m_electron"] * cgs["e_charge"] ** 2)
    hartree = cgs["e_charge"] ** 2 / a0
    t_au = cgs["hbar"] / hartree
    return {
        "G": cgs["G"] * cgs["m_electron"] * t_au**2 / a0**3,
        "c": cgs["c"] * t_au / a0,
        "hbar": 1.0,
        "e_charge": 1.0,
        "m_electron": 1.0,
    }


@dataclass(frozen=True)
class PhysicalContext:
    G: float
    c: float
    hbar: float
    e_charge: float
    m_electron: float
    Z: int = 1
    unit_system: UnitSystem = UnitSystem.GAUSSIAN_CGS

    def __post_init__(self):
        for name in ("G", "c", "hbar", "e_charge", "m_electron"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"constant {name} must be positive, got {value!r}")
        if int(self.Z) != self.Z or self.Z < 1:
            raise ValueError(f"Z must be an integer >= 1, got {self.Z!r}")

    @property
    def nuclear_charge(self) -> float:
        """Q = Z e."""
        return self.Z * self.e_charge

    @property
    def qe(self) -> float:
        """Coulomb coupling Q e between nucleus and electron."""
        return self.Z * self.e_charge**2

    def bohr_radius(self, Z: int | None = None) -> float:
        """hbar^2 / (m_e Z e^2); defaults to the context's own Z."""
        Z = self.Z if Z is None else Z
        return self.hbar**2 / (self.m_electron * Z * self.e_charge**2)

    def schwarzschild_radius(self, M: float) -> float:
        return 2.0 * self.G * M / self.c**2

    def bohr_energy(self, n: int) -> float:
        """Unperturbed level -m (Qe)^2 / (2 hbar^2 n^2)."""
        return -self.m_electron * self.qe**2 / (2.0 * self.hbar**2 * n**2)


_KNOWN = ("G", "c", "hbar", "e_charge", "m_electron", "Z")


def make_context(unit_system: str | UnitSystem = UnitSystem.GAUSSIAN_CGS,
                 overrides: dict | None = None) -> PhysicalContext:
    """Build a context with CODATA 2018 defaults, then apply ``overrides``."""
    system = UnitSystem(unit_system)
    values: dict = dict(CODATA_CGS if system is UnitSystem.GAUSSIAN_CGS else _atomic_defaults())
    values["Z"] = 1
    for key, value in (overrides or {}).items():
        if key not in _KNOWN:
            raise ValueError(f"unknown constant {key!r}; known: {', '.join(_KNOWN)}")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"constant {key!r} must be a number, got {value!r}")
        if not value > 0:
            raise ValueError(f"constant {key!r} must be positive, got {value!r}")
        values[key] = value
    if int(values["Z"]) != values["Z"]:
        raise ValueError(f"Z must be an integer, got {values['Z']!r}")
    values["Z"] = int(values["Z"])
    return PhysicalContext(unit_system=system, **values)


@dataclass(frozen=True)
class ValidityReport:
    weak_field_parameter: float
    curvature_atom_parameter: float
    weak_b_field: bool
    warnings: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.warnings


def check_outside_horizon(ctx: PhysicalContext, M: float, r: float) -> None:
    if r <= 0:
        raise ValueError(f"radius must be positive, got {r!r}")
    if M < 0:
        raise ValueError(f"mass must be non-negative, got {M!r}")
    rs = ctx.schwarzschild_radius(M)
    if M > 0 and r <= rs:
        where = "at horizon" if math.isclose(r, rs, rel_tol=1e-12) else "inside horizon"
        raise HorizonError(f"{where}: r = {r!r} <= 2GM/c^2 = {rs!r}")


def validity_report(ctx: PhysicalContext, M: float, r: float, B0: float = 0.0) -> ValidityReport:
    """Annotate (never block) a configuration with its expansion parameters.

    Only a position at or inside the horizon is an error.
    """
    if B0 < 0:
        raise ValueError(f"B0 must be non-negative, got {B0!r}")
    check_outside_horizon(ctx, M, r)
    weak = ctx.schwarzschild_radius(M) / r
    # Largest leading-order component is |R_0101| = 2GM/(c^2 r^3).
    r_max = 2.0 * ctx.G * M / (ctx.c**2 * r**3)
    curv_atom = r_max * ctx.bohr_radius() ** 2
    warnings = []
    if weak > WEAK_FIELD_THRESHOLD:
        warnings.append(f"weak-field parameter {weak:.3g} exceeds {WEAK_FIELD_THRESHOLD:g}")
    if curv_atom > CURVATURE_ATOM_THRESHOLD:
        warnings.append(f"curvature-atom parameter {curv_atom:.3g} exceeds {CURVATURE_ATOM_THRESHOLD:g}")
    weak_b = B0 <= WEAK_B_FIELD_GAUSS
    if not weak_b:
        warnings.append(f"B0 = {B0:.3g} G exceeds the weak-field bound {WEAK_B_FIELD_GAUSS:g} G")
    return ValidityReport(weak, curv_atom, weak_b, tuple(warnings))


def with_constants(ctx: PhysicalContext, **changes) -> PhysicalContext:
    return replace(ctx, **changes)
