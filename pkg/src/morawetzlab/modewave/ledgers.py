"""Energy, multiplier, and flux ledgers plus their discrete balance audits.

Sign conventions, fixed by deriving d/dt of each integral from
psi_tt = psi_xx - (V_R + i V_I) psi and integrating by parts:

    dE/dt = [Re(conj(psi_x) pi)]_L^R - F,      F = int V_I Im(conj(psi) pi)
    dI/dt = -B + [bnd_I]_L^R + I_im

so SIGMA below is -1 in dE/dt = SIGMA * F + boundary flux.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import GridMismatch
from ..series import Ledger
from .evolve import ModeState, Probes, diagnostics

SIGMA = -1.0


def energy_ledger(state: ModeState) -> float:
    """E = (1/2) int |pi|^2 + |psi_x|^2 + V_R |psi|^2 dr* (trapezoid)."""
    return float(diagnostics(state)["E"])


def im_flux(state: ModeState) -> float:
    """F = int V_I Im(conj(psi) pi) dr*."""
    return float(diagnostics(state)["F"])


def local_energy(state: ModeState, window) -> float:
    """Energy integrand restricted to r* in [w1, w2]."""
    row = diagnostics(state, Probes(window=tuple(window)))
    return float(row["local_E"])


def morawetz_ledger(state: ModeState, profile) -> dict:
    """Instantaneous multiplier diagnostics {I, B, B_pos, B_psi2, bnd_I, I_im}."""
    row = diagnostics(state, Probes(multiplier=profile))
    return {k: float(row[k]) for k in ("I", "B", "B_pos", "B_psi2", "bnd_I", "I_im")}


def _cumtrapz(y: np.ndarray, t: np.ndarray) -> np.ndarray:
    out = np.zeros_like(y)
    out[1:] = np.cumsum(0.5 * (y[1:] + y[:-1]) * np.diff(t))
    return out


def energy_balance_residual(ledger: Ledger) -> np.ndarray:
    """|E(t) - E(0) - int bflux + int F| along the ledger; second-order small
    for resolved runs."""
    t = ledger.index
    E = ledger.column("E")
    res = E - E[0] - _cumtrapz(ledger.column("bflux"), t) - SIGMA * _cumtrapz(ledger.column("F"), t)
    return np.abs(res)


def morawetz_balance_residual(ledger: Ledger) -> np.ndarray:
    """|I(t) - I(0) + int B - int bnd_I - int I_im| along the ledger."""
    t = ledger.index
    I = ledger.column("I")
    res = (I - I[0] + _cumtrapz(ledger.column("B"), t)
           - _cumtrapz(ledger.column("bnd_I"), t) - _cumtrapz(ledger.column("I_im"), t))
    return np.abs(res)


def order_n_energy(states: Sequence[ModeState], n: int) -> float:
    """Angular-operator-strengthened energy: sum_l (l(l+1))^n E_l over a mode
    collection sharing grid, time and boundary rule."""
    _check_collection(states)
    total = 0.0
    for st in states:
        l = st.spec.multipole
        total += (l * (l + 1)) ** n * energy_ledger(st)
    return total


def order_n_energy_series(ledgers: Sequence[Ledger], multipoles: Sequence[int], n: int) -> Ledger:
    """Series version of `order_n_energy` from per-mode evolution ledgers."""
    if len(ledgers) != len(multipoles) or not ledgers:
        raise GridMismatch("need one multipole per ledger")
    t = ledgers[0].index
    for led in ledgers[1:]:
        if led.index.size != t.size or not np.allclose(led.index, t, rtol=0, atol=1e-12):
            raise GridMismatch("ledgers do not share a common time index")
    total = np.zeros_like(t)
    for led, l in zip(ledgers, multipoles):
        total += float((l * (l + 1)) ** n) * led.column("E")
    return Ledger(name=f"order_{n}_energy", index_name="time", index=t,
                  columns={f"E_order_{n}": total}, units={"time": "M"})


def _check_collection(states: Sequence[ModeState]):
    if not states:
        raise GridMismatch("empty mode collection")
    ref = states[0]
    for st in states[1:]:
        if st.grid.rstar.size != ref.grid.rstar.size or \
                not np.array_equal(st.grid.rstar, ref.grid.rstar):
            raise GridMismatch("modes do not share a grid")
        if abs(st.time - ref.time) > 1e-12:
            raise GridMismatch("modes are not synchronized in time")
        if st.spec.mass != ref.spec.mass:
            raise GridMismatch("modes do not share a background mass")
