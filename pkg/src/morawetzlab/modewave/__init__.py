from .evolve import REFLECT_LEFT, SOMMERFELD, ModeGrid, ModeState, Probes, diagnostics, evolve, gaussian_packet
from .ledgers import (
    SIGMA,
    energy_balance_residual,
    energy_ledger,
    im_flux,
    local_energy,
    morawetz_balance_residual,
    morawetz_ledger,
    order_n_energy,
    order_n_energy_series,
)
from .potentials import MultiplierProfile, PotentialSpec, effective_potential, photon_sphere_multiplier
from .tortoise import r_of_rstar, tortoise

__all__ = [
    "ModeGrid", "ModeState", "Probes", "evolve", "diagnostics", "gaussian_packet",
    "SOMMERFELD", "REFLECT_LEFT", "SIGMA",
    "PotentialSpec", "MultiplierProfile", "effective_potential", "photon_sphere_multiplier",
    "tortoise", "r_of_rstar",
    "energy_ledger", "im_flux", "local_energy", "morawetz_ledger",
    "energy_balance_residual", "morawetz_balance_residual",
    "order_n_energy", "order_n_energy_series",
]
