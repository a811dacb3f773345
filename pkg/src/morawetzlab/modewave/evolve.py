"""Leapfrog evolution of the 1+1 mode equation psi_tt = psi_xx - V psi on a
uniform tortoise grid, with outgoing (Sommerfeld) boundaries and per-step
ledger sampling."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from ..errors import CFLViolation, NonFiniteField, WindowOutsideGrid
from ..series import Ledger
from .potentials import MultiplierProfile, PotentialSpec
from .tortoise import r_of_rstar

SOMMERFELD = "sommerfeld"
REFLECT_LEFT = "reflect-left"  # Dirichlet wall at the inner end (flat-space grids)


@dataclass(frozen=True)
class ModeGrid:
    """Uniform r* grid with the inverted radial coordinate cached."""

    rstar: np.ndarray
    r: np.ndarray
    dx: float
    mass: float

    @classmethod
    def make(cls, mass: float, lo: float, hi: float, n: int) -> "ModeGrid":
        if n < 8 or hi <= lo:
            raise ValueError("grid needs hi > lo and at least 8 points")
        rstar = np.linspace(lo, hi, n)
        if mass == 0.0:
            if lo <= 0.0:
                raise ValueError("flat-space grid must satisfy r = r* > 0")
            r = rstar.copy()
        else:
            r = r_of_rstar(rstar, mass)
        return cls(rstar=rstar, r=r, dx=float(rstar[1] - rstar[0]), mass=mass)

    def window_mask(self, lo: float, hi: float) -> np.ndarray:
        if lo < self.rstar[0] - 1e-12 or hi > self.rstar[-1] + 1e-12:
            raise WindowOutsideGrid(f"window [{lo}, {hi}] outside grid "
                                    f"[{self.rstar[0]}, {self.rstar[-1]}]")
        return (self.rstar >= lo) & (self.rstar <= hi)


@dataclass
class ModeState:
    """Complex field pair (psi, pi = psi_t) at one instant, plus its potential."""

    grid: ModeGrid
    spec: PotentialSpec
    psi: np.ndarray
    pi: np.ndarray
    time: float = 0.0
    cfl: float = 0.9
    boundary: str = SOMMERFELD
    v_real: np.ndarray = field(default=None, repr=False)
    v_imag: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        self.psi = np.asarray(self.psi, complex).copy()
        self.pi = np.asarray(self.pi, complex).copy()
        n = self.grid.rstar.size
        if self.psi.shape != (n,) or self.pi.shape != (n,):
            raise ValueError("field arrays must match the grid")
        if not 0 < self.cfl <= 1.0:
            raise CFLViolation(f"CFL factor {self.cfl} outside (0, 1]")
        if self.boundary not in (SOMMERFELD, REFLECT_LEFT):
            raise ValueError(f"unknown boundary rule {self.boundary!r}")
        if self.v_real is None:
            self.v_real = self.spec.real_part(self.grid.r)
        if self.v_imag is None:
            self.v_imag = self.spec.imag_part(self.grid.rstar)

    @property
    def dt(self) -> float:
        return self.cfl * self.grid.dx

    def copy(self) -> "ModeState":
        return ModeState(grid=self.grid, spec=self.spec, psi=self.psi, pi=self.pi,
                         time=self.time, cfl=self.cfl, boundary=self.boundary,
                         v_real=self.v_real, v_imag=self.v_imag)


def gaussian_packet(grid: ModeGrid, center: float, width: float, amplitude=1.0,
                    direction: int = 0) -> Tuple[np.ndarray, np.ndarray]:
    """Gaussian data: direction=0 gives time-symmetric (pi=0), +1/-1 gives a
    packet moving toward larger/smaller r*."""
    x = grid.rstar
    psi = amplitude * np.exp(-((x - center) ** 2) / (2.0 * width**2))
    if direction == 0:
        pi = np.zeros_like(psi)
    else:
        pi = -direction * np.gradient(psi, grid.dx, edge_order=2)
    return psi.astype(complex), pi.astype(complex)


def _acceleration(state: ModeState, psi: np.ndarray, pi: np.ndarray) -> np.ndarray:
    """psi_xx - V psi with the boundary rule folded into ghost points.

    Sommerfeld ends use psi_x = -+ pi (outgoing advection) to define the ghost
    value; the reflecting wall pins psi = 0 at the left end."""
    dx = state.grid.dx
    out = np.empty_like(psi)
    out[1:-1] = (psi[2:] - 2.0 * psi[1:-1] + psi[:-2]) / dx**2
    out[-1] = (2.0 * psi[-2] - 2.0 * psi[-1] - 2.0 * dx * pi[-1]) / dx**2
    if state.boundary == REFLECT_LEFT:
        out[0] = 0.0
    else:
        out[0] = (2.0 * psi[1] - 2.0 * psi[0] - 2.0 * dx * pi[0]) / dx**2
    V = state.v_real + 1j * state.v_imag
    out -= V * psi
    if state.boundary == REFLECT_LEFT:
        out[0] = 0.0
    return out


@dataclass(frozen=True)
class Probes:
    """Optional per-sample diagnostics for the evolution ledger."""

    multiplier: Optional[MultiplierProfile] = None
    window: Optional[Tuple[float, float]] = None


def diagnostics(state: ModeState, probes: Probes = Probes()) -> dict:
    """One row of ledger scalars for a synchronized state."""
    grid, psi, pi = state.grid, state.psi, state.pi
    dx, x = grid.dx, grid.rstar
    psi_x = np.gradient(psi, dx, edge_order=2)
    dens = 0.5 * (np.abs(pi) ** 2 + np.abs(psi_x) ** 2 + state.v_real * np.abs(psi) ** 2)
    row = {"E": np.trapezoid(dens, x)}
    flux = np.real(np.conj(psi_x) * pi)
    row["bflux"] = flux[-1] - flux[0]
    row["F"] = np.trapezoid(state.v_imag * np.imag(np.conj(psi) * pi), x)
    if probes.window is not None:
        mask = grid.window_mask(*probes.window)
        row["local_E"] = np.trapezoid(dens[mask], x[mask])
    prof = probes.multiplier
    if prof is not None:
        r = grid.r
        f0, f1, f2, f3 = prof.f(r), prof.f1(r), prof.f2(r), prof.f3(r)
        mterm = f0 * psi_x + 0.5 * f1 * psi
        row["I"] = np.trapezoid(np.real(np.conj(pi) * mterm), x)
        vp = state.spec.real_part_drstar(r)
        b_pos = np.trapezoid(f1 * np.abs(psi_x) ** 2, x)
        b_psi2 = -np.trapezoid((0.25 * f3 + 0.5 * f0 * vp) * np.abs(psi) ** 2, x)
        row["B_pos"] = b_pos
        row["B_psi2"] = b_psi2
        row["B"] = b_pos + b_psi2
        bnd = (0.5 * f0 * (np.abs(pi) ** 2 + np.abs(psi_x) ** 2)
               + 0.5 * f1 * np.real(np.conj(psi_x) * psi)
               - 0.25 * f2 * np.abs(psi) ** 2
               - 0.5 * state.v_real * f0 * np.abs(psi) ** 2)
        row["bnd_I"] = bnd[-1] - bnd[0]
        row["I_im"] = -np.trapezoid(state.v_imag * np.imag(np.conj(psi) * mterm), x)
    return row


def evolve(state: ModeState, n_steps: int, probes: Probes = Probes(),
           stride: int = 1) -> Tuple[ModeState, Ledger]:
    """Advance n_steps of kick-drift-kick leapfrog; ledger rows every `stride`
    steps (always including the initial and final states).

    Deterministic for a fixed configuration; raises NonFiniteField with the
    offending time if the field blows up."""
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    if state.dt > state.grid.dx:
        raise CFLViolation(f"dt={state.dt} exceeds grid spacing {state.grid.dx}")
    st = state.copy()
    dt = st.dt
    rows = [diagnostics(st, probes)]
    times = [st.time]
    for k in range(1, n_steps + 1):
        pi_h = st.pi + 0.5 * dt * _acceleration(st, st.psi, st.pi)
        st.psi = st.psi + dt * pi_h
        st.pi = pi_h + 0.5 * dt * _acceleration(st, st.psi, pi_h)
        if st.boundary == REFLECT_LEFT:
            st.psi[0] = 0.0
            st.pi[0] = 0.0
        st.time += dt
        if k % stride == 0 or k == n_steps:
            if not (np.all(np.isfinite(st.psi)) and np.all(np.isfinite(st.pi))):
                raise NonFiniteField(f"field became non-finite at t={st.time:.6g}")
            rows.append(diagnostics(st, probes))
            times.append(st.time)
    keys = rows[0].keys()
    columns = {k: np.array([row[k] for row in rows]) for k in keys}
    meta = {"dx": st.grid.dx, "dt": dt, "n_steps": n_steps, "stride": stride,
            "boundary": st.boundary, "spin_weight": st.spec.spin_weight,
            "multipole": st.spec.multipole}
    ledger = Ledger(name="wave", index_name="time", index=np.array(times),
                    columns=columns, units={"time": "M"}, meta=meta)
    return st, ledger
