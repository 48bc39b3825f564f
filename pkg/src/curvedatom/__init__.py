"""First-order curvature corrections to hydrogenic levels in a Schwarzschild background."""

from curvedatom.constants import PhysicalContext, ValidityReport, make_context, validity_report
from curvedatom.curvature import (
    CurvatureTensor,
    schwarzschild_curvature,
    rnc_metric,
    rnc_connections,
)
from curvedatom.angular import clebsch_gordan, triple_y_integral, quadratic_decomposition
from curvedatom.hydrogenic import AtomState, radial_expectation, radial_expectation_quadrature
from curvedatom.polyfield import PolyField
from curvedatom.potentials import (
    nuclear_potential,
    uniform_b_potential,
    uniform_e_potential,
    laplacian,
)
from curvedatom.eigen import diagonalize
from curvedatom.perturbation import (
    PerturbationMatrix,
    EnergyCorrection,
    bare_atom_matrix,
    bare_atom_result,
    pinto_ratio,
    zeeman_correction,
    stark_matrix,
    first_order_levels,
)
from curvedatom.semiclassical import orbit_radius, curvature_radius

__version__ = "0.1.0"

__all__ = [
    "PhysicalContext",
    "ValidityReport",
    "make_context",
    "validity_report",
    "CurvatureTensor",
    "schwarzschild_curvature",
    "rnc_metric",
    "rnc_connections",
    "clebsch_gordan",
    "triple_y_integral",
    "quadratic_decomposition",
    "AtomState",
    "radial_expectation",
    "radial_expectation_quadrature",
    "PolyField",
    "nuclear_potential",
    "uniform_b_potential",
    "uniform_e_potential",
    "laplacian",
    "diagonalize",
    "PerturbationMatrix",
    "EnergyCorrection",
    "bare_atom_matrix",
    "bare_atom_result",
    "pinto_ratio",
    "zeeman_correction",
    "stark_matrix",
    "first_order_levels",
    "orbit_radius",
    "curvature_radius",
]
