"""Symbolically derived metric machinery, compiled once per metric family.

The metric of each family is written down as a sympy matrix in the chart
coordinates (t, r, theta, phi); inverse metric, Christoffel symbols and the
geodesic acceleration are derived from it exactly and lambdified to numpy
callables.  Derivation happens once per family per process (lru_cache).

All lambdified callables take (M, a, r, theta) leading arguments so a single
compiled function covers every parameter choice within a family.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
import sympy as sp

MINKOWSKI = "minkowski"
SCHWARZSCHILD = "schwarzschild"
KERR = "kerr"

FAMILIES = (MINKOWSKI, SCHWARZSCHILD, KERR)

_M, _a, _r, _th = sp.symbols("M a r theta", positive=True)
_COORDS = None  # placeholder; coordinate symbols below
_t, _ph = sp.symbols("t phi")
_X = (_t, _r, _th, _ph)
_V = sp.symbols("v0 v1 v2 v3")


def _metric_matrix(family: str) -> sp.Matrix:
    sin2 = sp.sin(_th) ** 2
    if family == MINKOWSKI:
        return sp.diag(-1, 1, _r**2, _r**2 * sin2)
    if family == SCHWARZSCHILD:
        H = 1 - 2 * _M / _r
        return sp.diag(-H, 1 / H, _r**2, _r**2 * sin2)
    if family == KERR:
        Sigma = _r**2 + _a**2 * sp.cos(_th) ** 2
        Delta = _r**2 - 2 * _M * _r + _a**2
        A = (_r**2 + _a**2) ** 2 - _a**2 * Delta * sin2
        g = sp.zeros(4, 4)
        g[0, 0] = -(1 - 2 * _M * _r / Sigma)
        g[1, 1] = Sigma / Delta
        g[2, 2] = Sigma
        g[3, 3] = A / Sigma * sin2
        g[0, 3] = g[3, 0] = -2 * _M * _a * _r * sin2 / Sigma
        return g
    raise ValueError(f"unknown family {family!r}")


def _inverse_matrix(family: str, g: sp.Matrix) -> sp.Matrix:
    if family in (MINKOWSKI, SCHWARZSCHILD):
        return sp.diag(*[1 / g[i, i] for i in range(4)])
    # Kerr: closed-form Boyer-Lindquist inverse (t-phi block + diagonal).
    sin2 = sp.sin(_th) ** 2
    Sigma = _r**2 + _a**2 * sp.cos(_th) ** 2
    Delta = _r**2 - 2 * _M * _r + _a**2
    A = (_r**2 + _a**2) ** 2 - _a**2 * Delta * sin2
    ginv = sp.zeros(4, 4)
    ginv[0, 0] = -A / (Sigma * Delta)
    ginv[1, 1] = Delta / Sigma
    ginv[2, 2] = 1 / Sigma
    ginv[3, 3] = (Delta - _a**2 * sin2) / (Sigma * Delta * sin2)
    ginv[0, 3] = ginv[3, 0] = -2 * _M * _a * _r / (Sigma * Delta)
    return ginv


def _christoffel_table(g: sp.Matrix, ginv: sp.Matrix):
    dg = [[[sp.diff(g[b, c], _X[d]) for c in range(4)] for b in range(4)] for d in range(4)]
    gamma = [[[sp.S.Zero] * 4 for _ in range(4)] for _ in range(4)]
    for aa in range(4):
        for b in range(4):
            for c in range(b, 4):
                expr = sp.S.Zero
                for d in range(4):
                    if ginv[aa, d] == 0:
                        continue
                    expr += ginv[aa, d] * (dg[b][d][c] + dg[c][d][b] - dg[d][b][c])
                expr = sp.together(expr / 2)
                gamma[aa][b][c] = expr
                gamma[aa][c][b] = expr
    return gamma


@dataclass(frozen=True)
class CompiledFamily:
    """numpy-callable geometry of one metric family.

    All callables broadcast over r/theta arrays; `accel` additionally takes the
    four contravariant velocity components and returns the geodesic
    acceleration -Gamma^a_bc v^b v^c.
    """

    family: str
    metric: Callable
    inverse: Callable
    christoffel: Callable
    accel: Callable


@lru_cache(maxsize=None)
def compiled(family: str) -> CompiledFamily:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    g = _metric_matrix(family)
    ginv = _inverse_matrix(family, g)
    gamma = _christoffel_table(g, ginv)
    accel = []
    for aa in range(4):
        expr = sp.S.Zero
        for b in range(4):
            for c in range(4):
                if gamma[aa][b][c] != 0:
                    expr -= gamma[aa][b][c] * _V[b] * _V[c]
        accel.append(expr)
    args = (_M, _a, _r, _th)
    kw = dict(modules="numpy", cse=True)
    return CompiledFamily(
        family=family,
        metric=sp.lambdify(args, [[g[i, j] for j in range(4)] for i in range(4)], **kw),
        inverse=sp.lambdify(args, [[ginv[i, j] for j in range(4)] for i in range(4)], **kw),
        christoffel=sp.lambdify(args, gamma, **kw),
        accel=sp.lambdify(args + tuple(_V), accel, **kw),
    )


def assemble(table, shape) -> np.ndarray:
    """Pack a (possibly nested) lambdify result into an ndarray, broadcasting
    constant entries to `shape` (lambdify returns python scalars for them)."""
    arr = np.empty(_nested_shape(table) + shape, dtype=float)
    _fill(arr, table, shape)
    return arr


def _nested_shape(table):
    shape = ()
    node = table
    while isinstance(node, (list, tuple)):
        shape += (len(node),)
        node = node[0]
    return shape


def _fill(arr, node, shape):
    for i, sub in enumerate(node):
        if isinstance(sub, (list, tuple)):
            _fill(arr[i], sub, shape)
        else:
            arr[i] = np.broadcast_to(sub, shape)
