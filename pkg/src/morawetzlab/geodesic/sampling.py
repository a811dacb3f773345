"""Seeded random initial data for null geodesic batches."""

from __future__ import annotations

import numpy as np

from ..geometry.chart import SpacetimeChart
from .state import NullGeodesicState, make_null_initial


def random_null_states(chart: SpacetimeChart, n: int, rng: np.random.Generator,
                       r_range=(8.0, 20.0), theta_range=(np.pi / 4, 3 * np.pi / 4),
                       radial_sign: int = 0) -> list[NullGeodesicState]:
    """Draw n random null states with O(1) velocity normalization.

    radial_sign > 0 restricts to outgoing data (scattering-only batches),
    < 0 to ingoing, 0 mixed.  The draw order is fixed, so a given seed
    reproduces the batch exactly.
    """
    states = []
    for _ in range(n):
        r0 = rng.uniform(*r_range)
        th0 = rng.uniform(*theta_range)
        ph0 = rng.uniform(0.0, 2 * np.pi)
        d_r = rng.uniform(0.3, 1.0)
        if radial_sign == 0:
            d_r *= rng.choice([-1.0, 1.0])
        elif radial_sign < 0:
            d_r = -d_r
        d_th = rng.uniform(-0.5, 0.5) / r0
        d_ph = rng.uniform(-0.8, 0.8) / (r0 * np.sin(th0))
        states.append(make_null_initial(chart, (0.0, r0, th0, ph0), (d_r, d_th, d_ph)))
    return states
