"""Killing 2-tensors: the Kerr/Schwarzschild Carter tensor and the Minkowski
total-angular-momentum quadratic (sum of squared rotation generators).

Index convention: components are covariant (K_ab); contract twice with a
contravariant velocity to get the conserved quadratic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chart import SpacetimeChart
from .symbolic import KERR, MINKOWSKI, SCHWARZSCHILD


@dataclass(frozen=True)
class KillingTensor:
    chart: SpacetimeChart

    def components_rtheta(self, r, th) -> np.ndarray:
        """K_ab, shape (4,4) + broadcast(r, th)."""
        return killing_tensor_rtheta(self.chart, r, th)

    def components(self, point) -> np.ndarray:
        _, r, th, _ = point
        self.chart.require(r, th)
        return killing_tensor_rtheta(self.chart, r, th)

    def contract(self, v, point) -> float:
        """K_ab v^a v^b at a point."""
        K = self.components(point)
        v = np.asarray(v, float)
        return float(v @ K @ v)


def killing_tensor_eval(chart: SpacetimeChart, point) -> np.ndarray:
    """K_ab at a chart point (see `killing_tensor_rtheta`)."""
    _, r, th, _ = point
    chart.require(r, th)
    return killing_tensor_rtheta(chart, r, th)


def killing_tensor_rtheta(chart: SpacetimeChart, r, th) -> np.ndarray:
    r, th = np.broadcast_arrays(np.asarray(r, float), np.asarray(th, float))
    g = chart.metric_rtheta(r, th)
    if chart.family == MINKOWSKI:
        # r^2 times the angular block of the metric: contracts to
        # (gdot_theta)^2 + sin^-2(theta) (gdot_phi)^2 in lowered components.
        K = np.zeros_like(g)
        K[2, 2] = r**2 * g[2, 2]
        K[3, 3] = r**2 * g[3, 3]
        return K
    # Carter tensor K_ab = 2 Sigma l_(a n_b) + r^2 g_ab built from the
    # principal null directions in Boyer-Lindquist components.
    M, a = chart.mass, chart.spin
    Sigma = r**2 + a**2 * np.cos(th) ** 2
    Delta = r**2 - 2.0 * M * r + a**2
    shape = (4,) + r.shape
    l_up = np.zeros(shape)
    n_up = np.zeros(shape)
    l_up[0] = (r**2 + a**2) / Delta
    l_up[1] = 1.0
    l_up[3] = a / Delta
    n_up[0] = (r**2 + a**2) / (2.0 * Sigma)
    n_up[1] = -Delta / (2.0 * Sigma)
    n_up[3] = a / (2.0 * Sigma)
    l_dn = np.einsum("ab...,b...->a...", g, l_up)
    n_dn = np.einsum("ab...,b...->a...", g, n_up)
    outer = np.einsum("a...,b...->ab...", l_dn, n_dn)
    return Sigma * (outer + np.swapaxes(outer, 0, 1)) + r**2 * g
