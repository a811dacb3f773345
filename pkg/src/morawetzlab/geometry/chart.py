"""Exterior charts for the Minkowski, Schwarzschild and Kerr families."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import OutOfChart
from . import symbolic
from .symbolic import KERR, MINKOWSKI, SCHWARZSCHILD, assemble, compiled

DEFAULT_AXIS_MARGIN = 1e-6
DEFAULT_FLOOR_FACTOR = 1e-3


@dataclass(frozen=True)
class SpacetimeChart:
    """A metric family plus parameters, restricted to an exterior chart.

    Coordinates are (t, r, theta, phi): standard spherical for Minkowski and
    Schwarzschild, Boyer-Lindquist type for Kerr.  Geometrized units G=c=1;
    mass and spin carry length units.
    """

    family: str
    mass: float = 0.0
    spin: float = 0.0
    r_min: float = field(default=-1.0)  # sentinel: computed in __post_init__
    axis_margin: float = DEFAULT_AXIS_MARGIN

    def __post_init__(self):
        if self.family not in symbolic.FAMILIES:
            raise ValueError(f"unknown metric family {self.family!r}")
        if self.family in (SCHWARZSCHILD, KERR) and self.mass <= 0:
            raise ValueError("black-hole charts need mass M > 0")
        if self.family == KERR and abs(self.spin) >= self.mass:
            raise ValueError("Kerr chart needs |a| < M")
        if self.family in (MINKOWSKI, SCHWARZSCHILD) and self.spin != 0.0:
            raise ValueError(f"{self.family} chart takes spin a = 0")
        if not (0 < self.axis_margin < math.pi / 2):
            raise ValueError("axis margin must lie in (0, pi/2)")
        if self.r_min < 0:
            object.__setattr__(self, "r_min", self._default_floor())
        if self.family != MINKOWSKI and self.r_min <= self.r_plus:
            raise ValueError("exterior floor r_min must lie above the horizon")

    def _default_floor(self) -> float:
        if self.family == MINKOWSKI:
            return 0.0
        return self.r_plus * (1.0 + DEFAULT_FLOOR_FACTOR)

    @property
    def r_plus(self) -> float:
        """Outer horizon radius (0 for Minkowski)."""
        if self.family == MINKOWSKI:
            return 0.0
        return self.mass + math.sqrt(self.mass**2 - self.spin**2)

    @property
    def horizon_angular_speed(self) -> float:
        """Angular velocity of the outer horizon, a / (r_+^2 + a^2)."""
        if self.family == MINKOWSKI:
            return 0.0
        return self.spin / (self.r_plus**2 + self.spin**2)

    # -- chart membership -------------------------------------------------

    def contains(self, r, theta) -> np.ndarray:
        r = np.asarray(r)
        theta = np.asarray(theta)
        return (r > self.r_min) & (theta > self.axis_margin) & (theta < math.pi - self.axis_margin)

    def require(self, r, theta):
        if not np.all(self.contains(r, theta)):
            raise OutOfChart(
                f"point outside exterior chart (need r > {self.r_min:g}, "
                f"theta in ({self.axis_margin:g}, pi - {self.axis_margin:g}))"
            )

    # -- tensor evaluators -------------------------------------------------

    def metric(self, point) -> np.ndarray:
        """Covariant metric components g_ab at a chart point (t, r, theta, phi)."""
        _, r, th, _ = point
        self.require(r, th)
        return self.metric_rtheta(r, th)

    def metric_rtheta(self, r, th) -> np.ndarray:
        """Vectorized g_ab over broadcastable r, theta arrays; shape (4,4)+broadcast."""
        r, th = np.broadcast_arrays(np.asarray(r, float), np.asarray(th, float))
        tab = compiled(self.family).metric(self.mass, self.spin, r, th)
        return assemble(tab, r.shape)

    def inverse_metric(self, point) -> np.ndarray:
        _, r, th, _ = point
        self.require(r, th)
        return self.inverse_rtheta(r, th)

    def inverse_rtheta(self, r, th) -> np.ndarray:
        r, th = np.broadcast_arrays(np.asarray(r, float), np.asarray(th, float))
        tab = compiled(self.family).inverse(self.mass, self.spin, r, th)
        return assemble(tab, r.shape)

    def christoffel(self, point) -> np.ndarray:
        """Gamma^a_bc at a chart point, shape (4,4,4), symmetric in (b,c)."""
        _, r, th, _ = point
        self.require(r, th)
        return self.christoffel_rtheta(r, th)

    def christoffel_rtheta(self, r, th) -> np.ndarray:
        r, th = np.broadcast_arrays(np.asarray(r, float), np.asarray(th, float))
        tab = compiled(self.family).christoffel(self.mass, self.spin, r, th)
        return assemble(tab, r.shape)

    def geodesic_accel(self, r, th, v) -> np.ndarray:
        """-Gamma^a_bc v^b v^c for a single point; fast path for integrators."""
        out = compiled(self.family).accel(self.mass, self.spin, r, th, v[0], v[1], v[2], v[3])
        return np.asarray(out, dtype=float)

    # -- index gymnastics --------------------------------------------------

    def lower(self, v, point) -> np.ndarray:
        """Lower a contravariant 4-vector at a point."""
        return self.metric(point) @ np.asarray(v, float)

    def raise_index(self, w, point) -> np.ndarray:
        """Raise a covariant 4-vector at a point."""
        return self.inverse_metric(point) @ np.asarray(w, float)

    def norm2(self, v, point) -> float:
        """g(v, v) at a point."""
        v = np.asarray(v, float)
        return float(v @ self.metric(point) @ v)


def minkowski(r_min: float = 0.0, axis_margin: float = DEFAULT_AXIS_MARGIN) -> SpacetimeChart:
    return SpacetimeChart(MINKOWSKI, 0.0, 0.0, r_min, axis_margin)


def schwarzschild(mass: float, r_min: float = -1.0, axis_margin: float = DEFAULT_AXIS_MARGIN) -> SpacetimeChart:
    return SpacetimeChart(SCHWARZSCHILD, mass, 0.0, r_min, axis_margin)


def kerr(mass: float, spin: float, r_min: float = -1.0, axis_margin: float = DEFAULT_AXIS_MARGIN) -> SpacetimeChart:
    return SpacetimeChart(KERR, mass, spin, r_min, axis_margin)
