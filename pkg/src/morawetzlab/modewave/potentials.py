"""Mode potentials and multiplier profiles on the tortoise line.

The real potential of the (t, r*) mode equation psi_tt = psi_xx - V psi is

    V_R(r) = H * ( l(l+1)/r^2 + (1 - s^2) * 2M/r^3 ),    H = 1 - 2M/r,

covering the scalar wave (s=0) and the decoupled middle-component equations
(s=1, 2); M=0 degenerates to the flat centrifugal term l(l+1)/r^2.  An
optional imaginary Gaussian bump centered at r*(3M) models a complex
potential concentrated at the trapping radius.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import sympy as sp

from ..errors import InvalidSpec
from .tortoise import tortoise


@dataclass(frozen=True)
class PotentialSpec:
    spin_weight: int
    multipole: int
    mass: float
    bump_amplitude: float = 0.0
    bump_width: float = 2.0

    def __post_init__(self):
        if self.spin_weight not in (0, 1, 2):
            raise InvalidSpec("spin weight s must be one of {0, 1, 2}")
        if self.multipole < self.spin_weight:
            raise InvalidSpec(f"multipole l={self.multipole} below spin weight s={self.spin_weight}")
        if self.mass < 0:
            raise InvalidSpec("mass must be nonnegative")
        if self.mass == 0.0 and self.bump_amplitude != 0.0:
            raise InvalidSpec("imaginary bump needs a black-hole potential (M > 0)")
        if self.bump_width <= 0:
            raise InvalidSpec("bump width must be positive")

    @property
    def rstar_trapping(self) -> float:
        """Tortoise coordinate of the trapping radius r = 3M."""
        if self.mass == 0.0:
            raise InvalidSpec("flat spec has no trapping radius")
        return float(tortoise(3.0 * self.mass, self.mass))

    def real_part(self, r):
        r = np.asarray(r, float)
        c = self.multipole * (self.multipole + 1)
        if self.mass == 0.0:
            return c / r**2
        H = 1.0 - 2.0 * self.mass / r
        k = (1 - self.spin_weight**2) * 2.0 * self.mass
        return H * (c / r**2 + k / r**3)

    def real_part_drstar(self, r):
        """d V_R / d r* = H * d V_R / d r."""
        r = np.asarray(r, float)
        c = self.multipole * (self.multipole + 1)
        if self.mass == 0.0:
            return -2.0 * c / r**3
        M = self.mass
        H = 1.0 - 2.0 * M / r
        k = (1 - self.spin_weight**2) * 2.0 * M
        dH = 2.0 * M / r**2
        dV = dH * (c / r**2 + k / r**3) + H * (-2.0 * c / r**3 - 3.0 * k / r**4)
        return H * dV

    def imag_part(self, rstar):
        rstar = np.asarray(rstar, float)
        if self.bump_amplitude == 0.0:
            return np.zeros_like(rstar)
        x0 = self.rstar_trapping
        w = self.bump_width
        return self.bump_amplitude * np.exp(-((rstar - x0) ** 2) / (2.0 * w**2))


def effective_potential(spec: PotentialSpec, r):
    """Complex V(r) = V_R(r) + i V_I(r*(r))."""
    vr = spec.real_part(r)
    if spec.bump_amplitude == 0.0:
        return vr + 0.0j
    return vr + 1j * spec.imag_part(tortoise(r, spec.mass))


@dataclass(frozen=True)
class MultiplierProfile:
    """Radial multiplier weight f with first and third tortoise derivatives.

    f2 (second derivative) shows up only in the boundary terms of the
    multiplier identity; all derivatives are with respect to r*.
    """

    name: str
    f: Callable
    f1: Callable
    f2: Callable
    f3: Callable

    @classmethod
    def from_radial_expr(cls, expr, mass: float, name: str = "custom") -> "MultiplierProfile":
        """Build a profile from a sympy expression in the symbol r, applying
        the chain rule through dr/dr* = H = 1 - 2M/r."""
        r = sp.Symbol("r", positive=True)
        H = sp.Integer(1) if mass == 0 else 1 - 2 * mass / r
        d0 = sp.sympify(expr)
        d1 = sp.together(H * sp.diff(d0, r))
        d2 = sp.together(H * sp.diff(d1, r))
        d3 = sp.together(H * sp.diff(d2, r))
        fns = [sp.lambdify(r, d, modules="numpy") for d in (d0, d1, d2, d3)]

        def wrap(fn):
            return lambda rr: np.broadcast_to(fn(np.asarray(rr, float)), np.shape(rr)).astype(float)

        return cls(name, *(wrap(fn) for fn in fns))


def photon_sphere_multiplier(mass: float) -> MultiplierProfile:
    """Default Schwarzschild choice f = 1 - 3M/r (vanishes at the trapping
    radius); translation profile f = 1 for mass = 0."""
    r = sp.Symbol("r", positive=True)
    if mass == 0.0:
        return MultiplierProfile.from_radial_expr(sp.Integer(1), 0.0, name="translation")
    return MultiplierProfile.from_radial_expr(1 - 3 * mass / r, mass, name="photon_sphere")
