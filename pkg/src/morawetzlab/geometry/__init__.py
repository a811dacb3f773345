from .chart import SpacetimeChart, kerr, minkowski, schwarzschild
from .generators import (
    GeneratorField,
    RadialProfile,
    TimelikeReport,
    constant_profile,
    deformation_rtheta,
    deformation_tensor,
    generator_components,
    generator_eval,
    photon_sphere_profile,
    t_chi,
    timelike_scan,
)
from .killing import KillingTensor, killing_tensor_eval, killing_tensor_rtheta
from .symbolic import FAMILIES, KERR, MINKOWSKI, SCHWARZSCHILD

__all__ = [
    "SpacetimeChart", "kerr", "minkowski", "schwarzschild",
    "GeneratorField", "RadialProfile", "TimelikeReport",
    "constant_profile", "photon_sphere_profile", "t_chi",
    "generator_components", "generator_eval",
    "deformation_rtheta", "deformation_tensor", "timelike_scan",
    "KillingTensor", "killing_tensor_eval", "killing_tensor_rtheta",
    "FAMILIES", "KERR", "MINKOWSKI", "SCHWARZSCHILD",
]
