import numpy as np
import pytest

from morawetzlab.errors import FamilyMismatch, OutOfChart
from morawetzlab.geometry import (
    GeneratorField,
    SpacetimeChart,
    deformation_rtheta,
    kerr,
    minkowski,
    photon_sphere_profile,
    schwarzschild,
    t_chi,
    timelike_scan,
)


def test_schwarzschild_metric_frozen_values():
    chart = schwarzschild(1.0)
    g = chart.metric((0.0, 4.0, np.pi / 2, 0.0))
    np.testing.assert_allclose(g[0, 0], -0.5)
    np.testing.assert_allclose(g[1, 1], 2.0)
    np.testing.assert_allclose(g[2, 2], 16.0)
    np.testing.assert_allclose(g[3, 3], 16.0)
    assert np.count_nonzero(g - np.diag(np.diag(g))) == 0


def test_kerr_metric_reduces_to_schwarzschild():
    # continuity in the spin: a = 1e-6 should agree with a = 0 to ~a^2
    r, th = 5.0, 1.1
    gk = kerr(1.0, 1e-6).metric_rtheta(r, th)
    gs = schwarzschild(1.0).metric_rtheta(r, th)
    np.testing.assert_allclose(gk[np.ix_([0, 1, 2], [0, 1, 2])],
                               gs[np.ix_([0, 1, 2], [0, 1, 2])],
                               rtol=1e-10, atol=1e-10)
    # the frame-dragging component is O(a)
    assert abs(gk[0, 3]) < 1e-5


def test_kerr_inverse_is_inverse():
    chart = kerr(1.0, 0.7)
    rng = np.random.default_rng(11)
    r = rng.uniform(chart.r_min * 1.01, 30.0, size=50)
    th = rng.uniform(0.2, np.pi - 0.2, size=50)
    g = chart.metric_rtheta(r, th)
    ginv = chart.inverse_rtheta(r, th)
    prod = np.einsum("ab...,bc...->ac...", g, ginv)
    eye = np.zeros_like(prod)
    for i in range(4):
        eye[i, i] = 1.0
    np.testing.assert_allclose(prod, eye, atol=5e-13)


@pytest.mark.parametrize("chart", [minkowski(), schwarzschild(1.0), kerr(1.0, 0.6)])
def test_christoffel_fd_oracle(chart):
    """Gamma^a_bc = (1/2) g^ad (d_b g_dc + d_c g_db - d_d g_bc) with the
    metric derivatives taken by central differences."""
    rng = np.random.default_rng(3)
    n = 200
    r = rng.uniform(max(chart.r_min, 0.1) + 2.0, 25.0, size=n)
    th = rng.uniform(0.3, np.pi - 0.3, size=n)
    h = 1e-5
    dg = np.zeros((4, 4, 4, n))
    dg[1] = (chart.metric_rtheta(r + h, th) - chart.metric_rtheta(r - h, th)) / (2 * h)
    dg[2] = (chart.metric_rtheta(r, th + h) - chart.metric_rtheta(r, th - h)) / (2 * h)
    ginv = chart.inverse_rtheta(r, th)
    # dg[d, b, c] = d_d g_bc
    term = np.einsum("ad...,bdc...->abc...", ginv, dg)
    term = term + np.swapaxes(term, 1, 2)
    term = term - np.einsum("ad...,dbc...->abc...", ginv, dg)
    gamma_fd = 0.5 * term
    gamma = chart.christoffel_rtheta(r, th)
    np.testing.assert_allclose(gamma, gamma_fd, atol=1e-6)


def test_chart_validation():
    with pytest.raises(ValueError):
        SpacetimeChart("kerr", 1.0, 1.2)
    with pytest.raises(ValueError):
        SpacetimeChart("schwarzschild", -1.0)
    with pytest.raises(ValueError):
        SpacetimeChart("minkowski", spin=0.3)
    chart = schwarzschild(1.0)
    with pytest.raises(OutOfChart):
        chart.metric((0.0, 1.5, np.pi / 2, 0.0))
    with pytest.raises(OutOfChart):
        chart.metric((0.0, 5.0, 1e-9, 0.0))


def test_horizon_quantities():
    chart = kerr(1.0, 0.6)
    np.testing.assert_allclose(chart.r_plus, 1.8)
    np.testing.assert_allclose(chart.horizon_angular_speed, 0.6 / (1.8**2 + 0.36))
    assert schwarzschild(1.0).r_plus == 2.0


def test_killing_generators_have_zero_deformation():
    for chart in (schwarzschild(1.0), kerr(1.0, 0.5)):
        r = np.linspace(chart.r_min * 1.01, 20.0, 40)
        th = np.linspace(0.3, np.pi - 0.3, 17)
        for kind in ("T", "Phi"):
            pi = deformation_rtheta(GeneratorField(kind), chart,
                                    r[:, None], th[None, :])
            assert np.max(np.abs(pi)) < 1e-13


def test_radial_generator_deformation_is_nontrivial():
    chart = schwarzschild(1.0)
    gen = GeneratorField("A_f", profile=photon_sphere_profile(1.0))
    pi = deformation_rtheta(gen, chart, 5.0, np.pi / 2)
    assert np.max(np.abs(pi)) > 1e-3


def test_t_chi_family_guard():
    with pytest.raises(FamilyMismatch):
        t_chi(schwarzschild(1.0))


def test_t_chi_killing_outside_window():
    chart = kerr(1.0, 0.1)
    gen = t_chi(chart)
    for r in (3.0, 4.9, 6.1, 30.0):
        pi = deformation_rtheta(gen, chart, r, 1.0)
        assert np.max(np.abs(pi)) < 1e-13
    assert np.max(np.abs(deformation_rtheta(gen, chart, 5.5, 1.0))) > 1e-6


def test_timelike_scan_static_generator():
    chart = schwarzschild(1.0)
    report = timelike_scan(GeneratorField("T"), chart,
                           np.linspace(2.5, 20.0, 60), np.linspace(0.3, 2.8, 15))
    assert report.all_timelike
    # -g(T,T) = 1 - 2M/r, worst near the inner edge of the scan
    np.testing.assert_allclose(report.min_value, 1 - 2.0 / 2.5, rtol=1e-12)
    assert report.worst_point[0] == 2.5
