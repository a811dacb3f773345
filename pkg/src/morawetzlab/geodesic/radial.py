"""Radial potential of null geodesics from conserved quantities, and the
trapped (photon-orbit) root search R = R' = 0."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import optimize

from ..errors import FamilyMismatch, NoExteriorRoots, NoTrappedOrbit
from ..geometry.chart import SpacetimeChart
from ..geometry.symbolic import KERR, SCHWARZSCHILD


@dataclass(frozen=True)
class RadialPotentialSpec:
    """Conserved triple (E, L_z, Q) plus chart parameters (M, a).

    R(r) = [E (r^2 + a^2) - a L_z]^2 - Delta [Q + (L_z - a E)^2],
    Delta = r^2 - 2 M r + a^2.  Turning points of null geodesics are the
    real roots of R in the exterior.
    """

    energy: float
    angular_momentum: float
    carter_q: float
    mass: float
    spin: float = 0.0

    def __post_init__(self):
        if self.carter_q + (self.angular_momentum - self.spin * self.energy) ** 2 < 0:
            raise ValueError("null-geodesic spec needs Q + (L_z - a E)^2 >= 0")

    @property
    def coefficients(self) -> np.ndarray:
        """Quartic coefficients, highest degree first."""
        E, L, Q = self.energy, self.angular_momentum, self.carter_q
        M, a = self.mass, self.spin
        b = E * a**2 - a * L
        W = Q + (L - a * E) ** 2
        return np.array([E**2, 0.0, 2.0 * b * E - W, 2.0 * M * W, b**2 - a**2 * W])

    def value(self, r):
        return np.polyval(self.coefficients, r)

    def derivative(self, r):
        return np.polyval(np.polyder(self.coefficients), r)

    def second_derivative(self, r):
        return np.polyval(np.polyder(self.coefficients, 2), r)


@dataclass(frozen=True)
class RadialPotential:
    """Evaluator bundle returned by `radial_potential`."""

    spec: RadialPotentialSpec
    exterior_roots: Tuple[float, ...]

    def __call__(self, r):
        return self.spec.value(r)

    def derivative(self, r):
        return self.spec.derivative(r)

    def second_derivative(self, r):
        return self.spec.second_derivative(r)


def radial_potential(spec: RadialPotentialSpec, r_min: float, polish_tol: float = 1e-12,
                     require_roots: bool = False) -> RadialPotential:
    """Real exterior roots of the radial quartic, polished by Newton steps."""
    roots = np.roots(spec.coefficients)
    out = []
    for z in roots:
        if abs(z.imag) > 1e-8 * max(1.0, abs(z.real)):
            continue
        r = float(z.real)
        if r <= r_min:
            continue
        for _ in range(50):
            d = spec.derivative(r)
            if d == 0.0:
                break
            step = spec.value(r) / d
            r -= step
            if abs(step) < polish_tol * max(1.0, abs(r)):
                break
        if r > r_min:
            out.append(r)
    out = sorted(set(round(r, 12) for r in out))
    if require_roots and not out:
        raise NoExteriorRoots("radial potential has no real roots in the exterior")
    return RadialPotential(spec=spec, exterior_roots=tuple(out))


@dataclass(frozen=True)
class TrappedOrbit:
    """Double root of the radial potential: an orbiting (trapped) null geodesic."""

    r_trap: float
    spec: RadialPotentialSpec
    residual_R: float
    residual_dR: float
    branch: str


def _photon_impact_parameter(r, M, a, sign):
    """Impact parameter b = L_z/E solving R(r)=0 for an equatorial photon
    orbit at radius r; sign selects the root branch of the quadratic."""
    delta = r**2 - 2.0 * M * r + a**2
    sq = sign * np.sqrt(delta)
    return (r**2 + a**2 + sq * a) / (a + sq)


def find_trapped(chart: SpacetimeChart, seed_interval: Optional[Tuple[float, float]] = None,
                 branch: str = "prograde", residual_tol: float = 1e-10) -> TrappedOrbit:
    """Equatorial trapped orbit: solve R(r) = R'(r) = 0 with E=1, Q=0.

    Brackets on the seed interval (default (r_+(1+1e-3), 10M)) and polishes
    with a 2D Newton solve in (r, L_z).  Spherical (Q > 0) photon orbits are
    out of scope here; the equatorial pair brackets the trapping range.
    """
    if chart.family not in (SCHWARZSCHILD, KERR):
        raise FamilyMismatch("trapped orbits are defined on black-hole charts")
    M, a = chart.mass, chart.spin
    if seed_interval is None:
        seed_interval = (chart.r_plus * (1.0 + 1e-3), 10.0 * M)
    if branch not in ("prograde", "retrograde"):
        raise ValueError("branch must be 'prograde' or 'retrograde'")
    sign = 1.0

    if a == 0.0:
        # a=0: the circular-orbit impact parameter is b(r) = r / sqrt(H)
        def scalar(r):
            b = r / np.sqrt(1.0 - 2.0 * M / r)
            spec = RadialPotentialSpec(1.0, b, 0.0, M, 0.0)
            return spec.derivative(r)
    else:
        sign = 1.0 if (branch == "prograde") == (a > 0) else -1.0

        def scalar(r):
            b = _photon_impact_parameter(r, M, a, sign)
            spec = RadialPotentialSpec(1.0, b, 0.0, M, a)
            return spec.derivative(r)

    lo, hi = seed_interval
    rs = np.linspace(lo, hi, 400)
    vals = np.array([scalar(r) for r in rs])
    bracket = None
    for i in range(len(rs) - 1):
        if np.isfinite(vals[i]) and np.isfinite(vals[i + 1]) and vals[i] * vals[i + 1] < 0:
            bracket = (rs[i], rs[i + 1])
            break
    if bracket is None:
        raise NoTrappedOrbit(f"no sign change of R' on seed interval {seed_interval}")
    r0 = optimize.brentq(scalar, *bracket, xtol=1e-13, rtol=8.9e-16)

    if a == 0.0:
        L0 = r0 / np.sqrt(1.0 - 2.0 * M / r0)
    else:
        L0 = _photon_impact_parameter(r0, M, a, sign)

    def system(x):
        r, L = x
        spec = RadialPotentialSpec(1.0, L, 0.0, M, a)
        return [spec.value(r), spec.derivative(r)]

    sol = optimize.root(system, x0=[r0, L0], tol=1e-14)
    r_t, L_t = (sol.x if sol.success else (r0, L0))
    spec = RadialPotentialSpec(1.0, float(L_t), 0.0, M, a)
    res_R, res_dR = abs(spec.value(r_t)), abs(spec.derivative(r_t))
    # residuals are relative to the quartic's natural scale r_t^4
    scale = max(1.0, r_t**4)
    if res_R / scale > residual_tol or res_dR / scale > residual_tol:
        raise NoTrappedOrbit(
            f"root polish failed: |R|={res_R:.3e}, |R'|={res_dR:.3e} at r={r_t:.6f}")
    return TrappedOrbit(r_trap=float(r_t), spec=spec, residual_R=res_R,
                        residual_dR=res_dR, branch=branch)
