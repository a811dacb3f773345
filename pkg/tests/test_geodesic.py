import numpy as np
import pytest

from morawetzlab.errors import DegenerateDirection, NoTrappedOrbit
from morawetzlab.geodesic import (
    RadialPotentialSpec,
    eg2_audit,
    find_trapped,
    integrate_null,
    make_null_initial,
    null_residual,
    radial_potential,
    random_null_states,
)
from morawetzlab.geodesic.energies import energy_series
from morawetzlab.geometry import (
    GeneratorField,
    kerr,
    minkowski,
    photon_sphere_profile,
    schwarzschild,
)


def test_null_initial_is_null_and_future_oriented():
    chart = kerr(1.0, 0.5)
    st = make_null_initial(chart, (0.0, 8.0, 1.1, 0.4), (0.3, 0.02, -0.05))
    assert null_residual(chart, st.position, st.velocity) < 1e-15
    assert st.velocity[0] > 0


def test_null_initial_affine_homogeneity():
    chart = schwarzschild(1.0)
    d = np.array([0.4, 0.01, 0.03])
    a = make_null_initial(chart, (0.0, 9.0, 1.3, 0.0), d)
    b = make_null_initial(chart, (0.0, 9.0, 1.3, 0.0), 2.5 * d)
    np.testing.assert_allclose(b.velocity, 2.5 * a.velocity, rtol=1e-13)


def test_null_initial_rejects_zero_direction():
    with pytest.raises(DegenerateDirection):
        make_null_initial(minkowski(), (0.0, 5.0, 1.0, 0.0), (0.0, 0.0, 0.0))


def test_minkowski_straight_line():
    # a purely radial null ray moves at coordinate speed one
    chart = minkowski()
    st = make_null_initial(chart, (0.0, 5.0, np.pi / 2, 0.0), (1.0, 0.0, 0.0))
    traj = integrate_null(st, chart, span=10.0)
    np.testing.assert_allclose(traj.r, 5.0 + traj.lambdas, rtol=1e-12)
    np.testing.assert_allclose(traj.positions[:, 0], traj.lambdas, rtol=1e-12)


def test_infalling_ray_terminates_at_floor():
    chart = schwarzschild(1.0)
    st = make_null_initial(chart, (0.0, 5.0, np.pi / 2, 0.0), (-1.0, 0.0, 0.0))
    traj = integrate_null(st, chart, span=50.0)
    assert traj.termination == "out_of_chart"
    assert traj.r[-1] < chart.r_min * 1.01


def test_schwarzschild_conservation():
    chart = schwarzschild(1.0)
    rng = np.random.default_rng(4)
    for st in random_null_states(chart, 5, rng, r_range=(6.0, 12.0)):
        traj = integrate_null(st, chart, span=80.0)
        e = energy_series(chart, GeneratorField("T"), traj.lambdas,
                          traj.positions, traj.velocities)
        assert np.max(np.abs(e - e[0])) / max(1.0, abs(e[0])) < 1e-9
        assert np.max(traj.residuals) < 1e-9


def test_eg2_refinement_order():
    """Quadrature residual of the energy-change identity drops 4x per
    sample-spacing halving."""
    chart = schwarzschild(1.0)
    st = make_null_initial(chart, (0.0, 10.0, np.pi / 2, 0.0), (0.5, 0.0, 0.04))
    traj = integrate_null(st, chart, span=60.0)
    gen = GeneratorField("A_f", profile=photon_sphere_profile(1.0))
    coarse = eg2_audit(traj, gen, n_samples=1001)
    fine = eg2_audit(traj, gen, n_samples=2001)
    assert 3.0 < coarse.residual / fine.residual < 5.0


def test_radial_potential_roots_schwarzschild():
    # impact parameter above sqrt(27) M: two exterior turning points
    spec = RadialPotentialSpec(1.0, 6.0, 0.0, 1.0)
    pot = radial_potential(spec, r_min=2.0)
    assert len(pot.exterior_roots) == 2
    for r in pot.exterior_roots:
        assert abs(pot(r)) < 1e-9
    # below the critical value: no turning point outside the horizon
    spec = RadialPotentialSpec(1.0, 4.0, 0.0, 1.0)
    assert radial_potential(spec, r_min=2.0).exterior_roots == ()


def test_trapped_schwarzschild_and_kerr():
    orb = find_trapped(schwarzschild(1.0))
    np.testing.assert_allclose(orb.r_trap, 3.0, atol=1e-12)
    np.testing.assert_allclose(orb.spec.angular_momentum, np.sqrt(27.0), rtol=1e-12)

    pro = find_trapped(kerr(1.0, 0.3), branch="prograde")
    ret = find_trapped(kerr(1.0, 0.3), branch="retrograde")
    assert pro.r_trap < 3.0 < ret.r_trap
    # closed-form equatorial photon radii r = 2M(1 + cos((2/3) acos(-+a/M)))
    # prograde: arccos(-a/M) (gives r -> M as a -> M); retrograde: arccos(a/M)
    want_pro = 2.0 * (1.0 + np.cos(2.0 / 3.0 * np.arccos(-0.3)))
    want_ret = 2.0 * (1.0 + np.cos(2.0 / 3.0 * np.arccos(0.3)))
    np.testing.assert_allclose(pro.r_trap, want_pro, atol=1e-8)
    np.testing.assert_allclose(ret.r_trap, want_ret, atol=1e-8)


def test_trapped_needs_bracketing_interval():
    with pytest.raises(NoTrappedOrbit):
        find_trapped(schwarzschild(1.0), seed_interval=(7.0, 9.0))
