"""Tortoise coordinate r*(r) = r + 2M ln(r/2M - 1) and its inverse."""

from __future__ import annotations

import numpy as np


def tortoise(r, mass: float):
    """r* as a function of Schwarzschild r > 2M (identity when mass == 0)."""
    r = np.asarray(r, float)
    if mass == 0.0:
        return r.copy()
    if np.any(r <= 2.0 * mass):
        raise ValueError("tortoise coordinate needs r > 2M")
    return r + 2.0 * mass * np.log(r / (2.0 * mass) - 1.0)


def r_of_rstar(rstar, mass: float, rel_tol: float = 1e-13, max_iter: int = 80):
    """Invert the tortoise map by safeguarded Newton iteration.

    Newton steps use dr/dr* = H = 1 - 2M/r; iterates are clamped above the
    horizon.  Round-trips satisfy |r*(r(x)) - x| < 1e-12 * max(1, |x|).
    """
    x = np.asarray(rstar, float)
    if mass == 0.0:
        return x.copy()
    two_m = 2.0 * mass
    # substitute y = r/2M - 1 and solve y + ln y = w in u = ln y: the Newton
    # map for e^u + u - w is globally convergent and horizon-safe
    w = x / two_m - 1.0
    u = np.where(w > 1.0, np.log(np.maximum(w, 1e-300)), w - 1.0)
    for _ in range(max_iter):
        eu = np.exp(u)
        step = (eu + u - w) / (eu + 1.0)
        u -= step
        if np.all(np.abs(step) < rel_tol * np.maximum(1.0, np.abs(w))):
            break
    r = two_m * (1.0 + np.exp(u))
    return r if np.ndim(rstar) else float(r)
