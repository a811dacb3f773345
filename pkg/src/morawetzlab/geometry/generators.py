"""Generator vector fields (multipliers) and their deformation tensors.

Kinds:
  T      stationarity generator, components (1, 0, 0, 0)
  Phi    axial generator, (0, 0, 0, 1)
  R      unit radial field, (0, 1, 0, 0)
  A_f    weighted radial field (0, f(r), 0, 0)
  T_chi  Kerr-only blend T + omega0 * chi(r) * Phi, Killing outside the blend
         window and globally timelike in the exterior for small spin
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from ..errors import EmptyGrid, FamilyMismatch
from .chart import SpacetimeChart
from .symbolic import KERR

T, PHI, R, A_F, T_CHI = "T", "Phi", "R", "A_f", "T_chi"
KINDS = (T, PHI, R, A_F, T_CHI)


@dataclass(frozen=True)
class RadialProfile:
    """A radial weight f(r) with two derivatives, for A_f generators."""

    f: Callable
    df: Callable
    d2f: Callable

    def __call__(self, r):
        return self.f(r)


def photon_sphere_profile(mass: float) -> RadialProfile:
    """f(r) = 1 - 3M/r: vanishes at the photon sphere radius."""
    return RadialProfile(
        f=lambda r: 1.0 - 3.0 * mass / np.asarray(r, float),
        df=lambda r: 3.0 * mass / np.asarray(r, float) ** 2,
        d2f=lambda r: -6.0 * mass / np.asarray(r, float) ** 3,
    )


def constant_profile(value: float = 1.0) -> RadialProfile:
    return RadialProfile(
        f=lambda r: np.full_like(np.asarray(r, float), value),
        df=lambda r: np.zeros_like(np.asarray(r, float)),
        d2f=lambda r: np.zeros_like(np.asarray(r, float)),
    )


@dataclass(frozen=True)
class GeneratorField:
    kind: str
    profile: Optional[RadialProfile] = None
    blend_window: Optional[Tuple[float, float]] = None
    omega0: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == A_F and self.profile is None:
            raise ValueError("A_f generator needs a radial profile")
        if self.kind == T_CHI and self.blend_window is not None:
            r1, r2 = self.blend_window
            if not r1 < r2:
                raise ValueError("blend window must satisfy r1 < r2")


def t_chi(chart: SpacetimeChart, blend_window: Optional[Tuple[float, float]] = None,
          omega0: Optional[float] = None) -> GeneratorField:
    """Default T_chi on a Kerr chart: rotation rate locked to the horizon,
    C^2 quintic blend on (5M, 6M)."""
    if chart.family != KERR:
        raise FamilyMismatch("T_chi is defined on Kerr charts only")
    if blend_window is None:
        blend_window = (5.0 * chart.mass, 6.0 * chart.mass)
    if omega0 is None:
        omega0 = chart.horizon_angular_speed
    return GeneratorField(T_CHI, blend_window=blend_window, omega0=omega0)


def _blend(r, r1, r2):
    """C^2 quintic step: 1 for r <= r1, 0 for r >= r2; returns (chi, dchi/dr)."""
    r = np.asarray(r, float)
    s = np.clip((r - r1) / (r2 - r1), 0.0, 1.0)
    chi = 1.0 - s**3 * (10.0 - 15.0 * s + 6.0 * s**2)
    dchi = -30.0 * s**2 * (1.0 - s) ** 2 / (r2 - r1)
    return chi, dchi


def _check_family(gen: GeneratorField, chart: SpacetimeChart):
    if gen.kind == T_CHI and chart.family != KERR:
        raise FamilyMismatch("T_chi is defined on Kerr charts only")


def generator_components(gen: GeneratorField, chart: SpacetimeChart, r, th):
    """Contravariant components X^a and radial derivatives dX^a/dr, both of
    shape (4,) + broadcast(r, th).  Only r-derivatives are ever nonzero."""
    _check_family(gen, chart)
    r, th = np.broadcast_arrays(np.asarray(r, float), np.asarray(th, float))
    shape = (4,) + r.shape
    X = np.zeros(shape)
    dX = np.zeros(shape)
    if gen.kind == T:
        X[0] = 1.0
    elif gen.kind == PHI:
        X[3] = 1.0
    elif gen.kind == R:
        X[1] = 1.0
    elif gen.kind == A_F:
        X[1] = gen.profile.f(r)
        dX[1] = gen.profile.df(r)
    elif gen.kind == T_CHI:
        chi, dchi = _blend(r, *gen.blend_window)
        X[0] = 1.0
        X[3] = gen.omega0 * chi
        dX[3] = gen.omega0 * dchi
    return X, dX


def generator_eval(gen: GeneratorField, chart: SpacetimeChart, point) -> np.ndarray:
    """X^a at a single chart point."""
    _, r, th, _ = point
    chart.require(r, th)
    X, _ = generator_components(gen, chart, r, th)
    return X


def deformation_rtheta(gen: GeneratorField, chart: SpacetimeChart, r, th) -> np.ndarray:
    """Symmetrized contravariant derivative nabla^(a X^b), shape (4,4)+broadcast.

    Vanishes to round-off for Killing generators; for T_chi it is supported
    exactly on the blend window."""
    _check_family(gen, chart)
    r, th = np.broadcast_arrays(np.asarray(r, float), np.asarray(th, float))
    X, dX = generator_components(gen, chart, r, th)
    gam = chart.christoffel_rtheta(r, th)
    ginv = chart.inverse_rtheta(r, th)
    # nab[m, a] = partial_m X^a + Gamma^a_{mn} X^n  (only m=r has a partial term)
    nab = np.einsum("amn...,n...->ma...", gam, X)
    nab[1] += dX
    up = np.einsum("am...,mb...->ab...", ginv, nab)
    return 0.5 * (up + np.swapaxes(up, 0, 1))


def deformation_tensor(gen: GeneratorField, chart: SpacetimeChart, point) -> np.ndarray:
    _, r, th, _ = point
    chart.require(r, th)
    return deformation_rtheta(gen, chart, r, th)


@dataclass(frozen=True)
class TimelikeReport:
    """Result of a -g(X,X) scan over a spatial grid."""

    min_value: float
    worst_point: Tuple[float, float]  # (r, theta)
    n_samples: int
    failures: np.ndarray  # (k, 3) rows of (r, theta, -g(X,X)) at non-timelike samples

    @property
    def all_timelike(self) -> bool:
        return self.min_value > 0.0


def timelike_scan(gen: GeneratorField, chart: SpacetimeChart, r_grid, theta_grid) -> TimelikeReport:
    """Deterministic scan of -g(X, X) over the tensor grid r_grid x theta_grid."""
    r_grid = np.atleast_1d(np.asarray(r_grid, float))
    theta_grid = np.atleast_1d(np.asarray(theta_grid, float))
    if r_grid.size == 0 or theta_grid.size == 0:
        raise EmptyGrid("timelike scan needs a nonempty grid")
    chart.require(r_grid, theta_grid[len(theta_grid) // 2])
    chart.require(r_grid[0], theta_grid)
    rr, tt = np.meshgrid(r_grid, theta_grid, indexing="ij")
    X, _ = generator_components(gen, chart, rr, tt)
    g = chart.metric_rtheta(rr, tt)
    val = -np.einsum("a...,ab...,b...->...", X, g, X)
    idx = np.unravel_index(np.argmin(val), val.shape)
    bad = val <= 0.0
    failures = np.column_stack([rr[bad], tt[bad], val[bad]])
    return TimelikeReport(
        min_value=float(val[idx]),
        worst_point=(float(rr[idx]), float(tt[idx])),
        n_samples=val.size,
        failures=failures,
    )
