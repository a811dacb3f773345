from .energies import (
    EG2Audit,
    deformation_contraction,
    eg2_audit,
    energy_series,
    generator_energy,
    quadratic_invariant,
    radial_momentum,
)
from .integrate import integrate_null
from .radial import RadialPotential, RadialPotentialSpec, TrappedOrbit, find_trapped, radial_potential
from .sampling import random_null_states
from .state import NullGeodesicState, Trajectory, make_null_initial, null_residual

__all__ = [
    "NullGeodesicState", "Trajectory", "make_null_initial", "null_residual",
    "integrate_null", "random_null_states",
    "generator_energy", "quadratic_invariant", "radial_momentum",
    "energy_series", "deformation_contraction", "eg2_audit", "EG2Audit",
    "RadialPotentialSpec", "RadialPotential", "radial_potential",
    "TrappedOrbit", "find_trapped",
]
