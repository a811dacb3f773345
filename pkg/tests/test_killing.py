"""Killing-tensor checks: the defining symmetrized-derivative identity by
finite differences, and the known contractions."""

import numpy as np
import pytest

from morawetzlab.geometry import KillingTensor, kerr, minkowski, schwarzschild
from morawetzlab.geometry.killing import killing_tensor_rtheta


def _covariant_derivative_fd(chart, r, th, h=1e-5):
    """nabla_c K_ab at scattered points, via centered differences of the
    covariant components plus the two Christoffel corrections."""
    dK = np.zeros((4, 4, 4) + r.shape)
    dK[1] = (killing_tensor_rtheta(chart, r + h, th)
             - killing_tensor_rtheta(chart, r - h, th)) / (2 * h)
    dK[2] = (killing_tensor_rtheta(chart, r, th + h)
             - killing_tensor_rtheta(chart, r, th - h)) / (2 * h)
    K = killing_tensor_rtheta(chart, r, th)
    gam = chart.christoffel_rtheta(r, th)
    corr = (np.einsum("dca...,db...->cab...", gam, K)
            + np.einsum("dcb...,ad...->cab...", gam, K))
    return dK - corr


@pytest.mark.parametrize("chart", [minkowski(), schwarzschild(1.0), kerr(1.0, 0.7)])
def test_killing_equation_fd(chart):
    rng = np.random.default_rng(17)
    r = rng.uniform(max(chart.r_min, 0.5) + 2.0, 20.0, size=60)
    th = rng.uniform(0.4, np.pi - 0.4, size=60)
    nab = _covariant_derivative_fd(chart, r, th)
    sym = (nab + np.transpose(nab, (1, 2, 0) + (3,) * (nab.ndim - 3))
           + np.transpose(nab, (2, 0, 1) + (3,) * (nab.ndim - 3))) / 3.0
    scale = np.max(np.abs(killing_tensor_rtheta(chart, r, th)))
    assert np.max(np.abs(sym)) < 1e-6 * scale


def test_minkowski_contraction_is_angular_quadratic():
    chart = minkowski()
    r, th = 7.0, 1.2
    K = KillingTensor(chart)
    v = np.array([1.3, 0.4, 0.02, 0.05])
    got = K.contract(v, (0.0, r, th, 0.0))
    g = chart.metric_rtheta(r, th)
    low = g @ v
    want = low[2] ** 2 + low[3] ** 2 / np.sin(th) ** 2
    np.testing.assert_allclose(got, want, rtol=1e-12)


def test_schwarzschild_limit_of_carter():
    # at a=0 the Carter quadratic collapses to the same angular form
    chart = schwarzschild(1.0)
    r, th = 6.0, 0.9
    v = np.array([0.7, 0.2, 0.03, 0.01])
    got = KillingTensor(chart).contract(v, (0.0, r, th, 0.0))
    g = chart.metric_rtheta(r, th)
    low = g @ v
    want = low[2] ** 2 + low[3] ** 2 / np.sin(th) ** 2
    np.testing.assert_allclose(got, want, rtol=1e-10)


def test_carter_tensor_symmetry():
    chart = kerr(1.0, 0.9)
    K = killing_tensor_rtheta(chart, 4.0, 0.8)
    np.testing.assert_allclose(K, K.T, atol=1e-14)
