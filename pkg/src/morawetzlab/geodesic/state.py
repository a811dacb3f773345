"""Null geodesic states, trajectories, and null initial data."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import DegenerateDirection
from ..geometry.chart import SpacetimeChart


def null_residual(chart: SpacetimeChart, position, velocity) -> float:
    """Relative null-constraint residual |g(v,v)| / sum_ab |g_ab v^a v^b|."""
    g = chart.metric_rtheta(position[1], position[2])
    v = np.asarray(velocity, float)
    num = abs(float(v @ g @ v))
    scale = float(np.abs(v) @ np.abs(g) @ np.abs(v))
    return num / scale if scale > 0 else num


@dataclass
class NullGeodesicState:
    """Chart position, contravariant velocity per affine parameter, and the
    affine parameter itself."""

    position: np.ndarray
    velocity: np.ndarray
    affine: float = 0.0

    def __post_init__(self):
        self.position = np.asarray(self.position, float).copy()
        self.velocity = np.asarray(self.velocity, float).copy()
        if self.position.shape != (4,) or self.velocity.shape != (4,):
            raise ValueError("position and velocity must be 4-vectors")


@dataclass
class Trajectory:
    """Dense-sampled null geodesic with per-sample constraint bookkeeping.

    positions/velocities have shape (n, 4); lambdas is strictly increasing.
    termination is one of 'span', 'out_of_chart', 'step_underflow'.
    """

    chart: SpacetimeChart
    lambdas: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    residuals: np.ndarray
    termination: str
    dense: Optional[object] = field(default=None, repr=False)  # scipy OdeSolution

    def __len__(self):
        return self.lambdas.size

    @property
    def r(self) -> np.ndarray:
        return self.positions[:, 1]

    @property
    def theta(self) -> np.ndarray:
        return self.positions[:, 2]

    def state(self, i: int) -> NullGeodesicState:
        return NullGeodesicState(self.positions[i], self.velocities[i], float(self.lambdas[i]))

    def resample(self, n: int):
        """Uniform resampling of the dense solution: (lambdas, positions, velocities)."""
        if self.dense is None:
            raise ValueError("trajectory carries no dense solution")
        lam = np.linspace(self.lambdas[0], self.lambdas[-1], n)
        y = self.dense(lam)
        return lam, y[:4].T.copy(), y[4:].T.copy()


def make_null_initial(chart: SpacetimeChart, position, direction) -> NullGeodesicState:
    """Build a future-oriented null state from a spatial direction.

    `direction` holds the (d^r, d^theta, d^phi) components; gdot^t is the
    positive root of g_ab v^a v^b = 0.  Scaling the direction by c > 0 scales
    the whole velocity by c (affine freedom).
    """
    position = np.asarray(position, float)
    direction = np.asarray(direction, float)
    _, r, th, _ = position
    chart.require(r, th)
    if direction.shape != (3,) or not np.any(direction != 0.0):
        raise DegenerateDirection("spatial direction must be a nonzero 3-vector")
    g = chart.metric_rtheta(r, th)
    d = direction
    A = g[0, 0]
    B = g[0, 1] * d[0] + g[0, 2] * d[1] + g[0, 3] * d[2]
    C = float(d @ g[1:, 1:] @ d)
    disc = B * B - A * C
    if disc <= 0.0:
        raise DegenerateDirection("no real null solution for this spatial direction")
    sq = np.sqrt(disc)
    # stable quadratic roots of A u^2 + 2 B u + C = 0
    q = -(B + np.copysign(sq, B)) if B != 0.0 else sq
    roots = []
    if A != 0.0:
        roots.append(q / A)
    if q != 0.0:
        roots.append(C / q)
    positive = [u for u in roots if u > 0.0]
    if not positive:
        raise DegenerateDirection("no future-oriented null solution at this point")
    u = max(positive)
    velocity = np.array([u, d[0], d[1], d[2]])
    return NullGeodesicState(position, velocity)
