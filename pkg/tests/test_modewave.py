import numpy as np
import pytest

from morawetzlab.errors import (
    CFLViolation,
    GridMismatch,
    InvalidSpec,
    WindowOutsideGrid,
)
from morawetzlab.modewave import (
    REFLECT_LEFT,
    ModeGrid,
    ModeState,
    PotentialSpec,
    Probes,
    energy_balance_residual,
    evolve,
    gaussian_packet,
    morawetz_balance_residual,
    order_n_energy,
    photon_sphere_multiplier,
    r_of_rstar,
    tortoise,
)


def test_tortoise_roundtrip():
    rstar = np.linspace(-8.0, 200.0, 500)
    r = r_of_rstar(rstar, 1.0)
    np.testing.assert_allclose(tortoise(r, 1.0), rstar, atol=1e-12)
    assert np.all(r > 2.0)


def test_tortoise_deep_negative_is_horizon_limit():
    r = r_of_rstar(np.array([-60.0, -200.0]), 1.0)
    np.testing.assert_allclose(r, 2.0, rtol=1e-12)


def test_tortoise_flat_identity():
    x = np.linspace(1.0, 40.0, 7)
    np.testing.assert_array_equal(tortoise(x, 0.0), x)
    np.testing.assert_array_equal(r_of_rstar(x, 0.0), x)


def test_potential_spec_validation():
    with pytest.raises(InvalidSpec):
        PotentialSpec(spin_weight=2, multipole=1, mass=1.0)
    with pytest.raises(InvalidSpec):
        PotentialSpec(spin_weight=3, multipole=4, mass=1.0)
    with pytest.raises(InvalidSpec):
        PotentialSpec(spin_weight=0, multipole=2, mass=0.0, bump_amplitude=0.1)


def test_potential_shape():
    spec = PotentialSpec(spin_weight=0, multipole=2, mass=1.0)
    r = np.linspace(2.001, 200.0, 4000)
    V = spec.real_part(r)
    assert V[0] < 1e-3 and V[-1] < 1e-3
    # peak sits near the photon sphere for the centrifugal-dominated case
    assert abs(r[np.argmax(V)] - 3.0) < 0.4
    # s=1 kills the curvature term entirely
    spec1 = PotentialSpec(spin_weight=1, multipole=2, mass=1.0)
    H = 1.0 - 2.0 / r
    np.testing.assert_allclose(spec1.real_part(r), H * 6.0 / r**2, rtol=1e-12)


def test_flat_advection():
    """With M=0, l=0 the equation is the 1D wave equation: a rightgoing
    packet translates at unit speed with O(dx^2) shape error."""
    errs = []
    for n in (2001, 4001):
        grid = ModeGrid.make(0.0, 10.0, 110.0, n)
        spec = PotentialSpec(spin_weight=0, multipole=0, mass=0.0)
        psi, pi = gaussian_packet(grid, center=30.0, width=4.0, direction=1)
        state = ModeState(grid=grid, spec=spec, psi=psi, pi=pi)
        n_steps = int(round(40.0 / state.dt))
        final, _ = evolve(state, n_steps)
        shift = final.time
        expected = np.exp(-((grid.rstar - 30.0 - shift) ** 2) / (2.0 * 4.0**2))
        errs.append(np.max(np.abs(final.psi.real - expected)))
    assert errs[0] / errs[1] > 3.0
    assert errs[1] < 2e-4


def test_evolution_linearity():
    grid = ModeGrid.make(1.0, -60.0, 60.0, 601)
    spec = PotentialSpec(spin_weight=0, multipole=2, mass=1.0)
    p1, q1 = gaussian_packet(grid, 0.0, 5.0)
    p2, q2 = gaussian_packet(grid, 10.0, 3.0, amplitude=0.5, direction=-1)
    run = lambda psi, pi: evolve(ModeState(grid=grid, spec=spec, psi=psi, pi=pi), 200)[0]
    a = run(p1, q1)
    b = run(p2, q2)
    c = run(p1 + 2.0 * p2, q1 + 2.0 * q2)
    np.testing.assert_allclose(c.psi, a.psi + 2.0 * b.psi, atol=1e-12)


def test_energy_balance_small():
    grid = ModeGrid.make(1.0, -80.0, 80.0, 1601)
    spec = PotentialSpec(spin_weight=0, multipole=2, mass=1.0)
    psi, pi = gaussian_packet(grid, 0.0, 6.0)
    state = ModeState(grid=grid, spec=spec, psi=psi, pi=pi)
    _, led = evolve(state, 400, stride=4)
    res = energy_balance_residual(led)
    assert np.max(res) / led.column("E")[0] < 5e-3


def test_morawetz_residual_converges():
    spec = PotentialSpec(spin_weight=0, multipole=2, mass=1.0)
    probes = Probes(multiplier=photon_sphere_multiplier(1.0))
    res = []
    for n in (801, 1601):
        grid = ModeGrid.make(1.0, -80.0, 80.0, n)
        psi, pi = gaussian_packet(grid, 0.0, 6.0)
        state = ModeState(grid=grid, spec=spec, psi=psi, pi=pi)
        steps = int(round(30.0 / state.dt))
        _, led = evolve(state, steps, probes, stride=4)
        res.append(np.max(morawetz_balance_residual(led)))
    assert 3.0 < res[0] / res[1] < 5.0


def test_reflecting_wall_pins_left_end():
    grid = ModeGrid.make(0.0, 1.0, 61.0, 601)
    spec = PotentialSpec(spin_weight=0, multipole=0, mass=0.0)
    psi, pi = gaussian_packet(grid, 20.0, 3.0, direction=-1)
    state = ModeState(grid=grid, spec=spec, psi=psi, pi=pi, boundary=REFLECT_LEFT)
    final, _ = evolve(state, 400)
    assert final.psi[0] == 0.0


def test_cfl_guard():
    grid = ModeGrid.make(1.0, -20.0, 20.0, 101)
    spec = PotentialSpec(spin_weight=0, multipole=2, mass=1.0)
    psi, pi = gaussian_packet(grid, 0.0, 3.0)
    with pytest.raises(CFLViolation):
        ModeState(grid=grid, spec=spec, psi=psi, pi=pi, cfl=1.5)


def test_window_guard():
    grid = ModeGrid.make(1.0, -20.0, 20.0, 101)
    with pytest.raises(WindowOutsideGrid):
        grid.window_mask(-30.0, 10.0)


def test_order_n_energy_requires_shared_grid():
    spec = PotentialSpec(spin_weight=0, multipole=2, mass=1.0)
    g1 = ModeGrid.make(1.0, -20.0, 20.0, 101)
    g2 = ModeGrid.make(1.0, -20.0, 20.0, 201)
    s1 = ModeState(grid=g1, spec=spec, psi=np.zeros(101), pi=np.zeros(101))
    s2 = ModeState(grid=g2, spec=spec, psi=np.zeros(201), pi=np.zeros(201))
    with pytest.raises(GridMismatch):
        order_n_energy([s1, s2], 1)
