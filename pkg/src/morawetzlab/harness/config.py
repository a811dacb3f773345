"""Scenario configuration: YAML parsing, defaults, and constraint checks.

Every rejection names the offending key and the violated constraint."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import yaml

from ..errors import ConstraintViolation, ParseError
from ..geometry.chart import SpacetimeChart
from ..geometry.symbolic import FAMILIES, KERR, MINKOWSKI, SCHWARZSCHILD

SCENARIOS = ("geodesic", "wave", "trapped", "scan-tchi")

GEODESIC_DEFAULTS = {
    "span": 200.0,
    "tolerance": 1e-10,
    "count": 1,
    "samples": 2001,
    "generators": ["T", "Phi"],
    "seed": 0,
    "r_range": [8.0, 20.0],
    "radial_sign": 1,
}

WAVE_DEFAULTS = {
    "spin_weight": 0,
    "multipole": 2,
    "cfl": 0.9,
    "stride": 4,
    "t_final": 60.0,
    "multiplier": "photon_sphere",
    "window": None,
    "bump": {"amplitude": 0.0, "width": 2.0},
    "packet": {"center": 0.0, "width": 6.0, "direction": 0},
    "grid": {"lo": -150.0, "hi": 150.0, "points": 3001},
    "seed": 0,
}

TRAPPED_DEFAULTS = {"branch": "prograde", "seed_interval": None, "seed": 0}

SCAN_DEFAULTS = {
    "r_max": 50.0,
    "n_r": 400,
    "n_theta": 81,
    "blend_window": None,
    "seed": 0,
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Normalized scenario description; `params` round-trips through YAML."""

    kind: str
    chart: Optional[SpacetimeChart]
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def seed(self) -> int:
        return int(self.params.get("seed", 0))


def _require(cond: bool, key: str, constraint: str):
    if not cond:
        raise ConstraintViolation(f"{key}: {constraint}")


def _chart_from(raw: dict, key: str = "chart") -> SpacetimeChart:
    family = raw.get("family")
    _require(family in FAMILIES, f"{key}.family", f"must be one of {FAMILIES}")
    mass = float(raw.get("mass", 0.0))
    spin = float(raw.get("spin", 0.0))
    if family in (SCHWARZSCHILD, KERR):
        _require(mass > 0, f"{key}.mass", "M > 0 required for black-hole families")
    if family == KERR:
        _require(abs(spin) < mass, f"{key}.spin", "|a| < M required")
    else:
        _require(spin == 0.0, f"{key}.spin", "a = 0 required off the Kerr family")
    kwargs = {}
    if "r_min" in raw:
        kwargs["r_min"] = float(raw["r_min"])
    if "axis_margin" in raw:
        kwargs["axis_margin"] = float(raw["axis_margin"])
    try:
        return SpacetimeChart(family, mass, spin, **kwargs)
    except ValueError as exc:
        raise ConstraintViolation(f"{key}: {exc}") from exc


def _merge_defaults(raw: dict, defaults: dict) -> dict:
    out = dict(defaults)
    for k, v in raw.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            merged = dict(out[k])
            merged.update(v)
            out[k] = merged
        else:
            out[k] = v
    return out


def validate_config(text: str) -> ScenarioConfig:
    """Parse and normalize a YAML scenario description."""
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"could not parse config: {exc}") from exc
    if raw is None:
        raise ParseError("empty configuration (expected a YAML mapping at position 0)")
    if not isinstance(raw, dict):
        raise ParseError(f"top level must be a mapping, got {type(raw).__name__}")
    kind = raw.get("scenario")
    _require(kind in SCENARIOS, "scenario", f"must be one of {SCENARIOS}")

    body = {k: v for k, v in raw.items() if k != "scenario"}
    if kind == "geodesic":
        chart = _chart_from(body.pop("chart", {}))
        params = _merge_defaults(body, GEODESIC_DEFAULTS)
        _require(params["span"] > 0, "span", "must be positive")
        _require(0 < params["tolerance"] < 1e-2, "tolerance", "must lie in (0, 1e-2)")
        _require(params["count"] >= 1, "count", "must be >= 1")
        _require(params["samples"] >= 2, "samples", "must be >= 2")
        for g in params["generators"]:
            _require(g in ("T", "Phi", "R", "A_f", "T_chi"), "generators",
                     f"unknown generator kind {g!r}")
        if "initial" in params:
            init = params["initial"]
            _require(isinstance(init, dict) and "position" in init and "direction" in init,
                     "initial", "needs position (4) and direction (3)")
            _require(len(init["position"]) == 4, "initial.position", "needs 4 components")
            _require(len(init["direction"]) == 3, "initial.direction", "needs 3 components")
        return ScenarioConfig(kind, chart, params)

    if kind == "wave":
        params = _merge_defaults(body, WAVE_DEFAULTS)
        mass = float(params.get("mass", 1.0))
        params["mass"] = mass
        _require(mass >= 0, "mass", "must be nonnegative")
        _require(params["spin_weight"] in (0, 1, 2), "spin_weight", "must be in {0,1,2}")
        _require(params["multipole"] >= params["spin_weight"], "multipole",
                 "needs l >= s")
        _require(0 < params["cfl"] <= 1.0, "cfl", "CFL factor must lie in (0, 1]")
        grid = params["grid"]
        _require(grid["hi"] > grid["lo"], "grid", "needs hi > lo")
        _require(int(grid["points"]) >= 8, "grid.points", "needs at least 8 points")
        _require(params["t_final"] > 0, "t_final", "must be positive")
        _require(params["multiplier"] in ("photon_sphere", "translation", "none"),
                 "multiplier", "must be photon_sphere, translation or none")
        if params["window"] is not None:
            w = params["window"]
            _require(len(w) == 2 and w[0] < w[1], "window", "needs [lo, hi] with lo < hi")
        chart = None if mass == 0.0 else _chart_from({"family": SCHWARZSCHILD, "mass": mass})
        return ScenarioConfig(kind, chart, params)

    if kind == "trapped":
        chart = _chart_from(body.pop("chart", {}))
        _require(chart.family in (SCHWARZSCHILD, KERR), "chart.family",
                 "trapped orbits need a black-hole chart")
        params = _merge_defaults(body, TRAPPED_DEFAULTS)
        _require(params["branch"] in ("prograde", "retrograde"), "branch",
                 "must be prograde or retrograde")
        return ScenarioConfig(kind, chart, params)

    # scan-tchi
    chart = _chart_from(body.pop("chart", {}))
    _require(chart.family == KERR, "chart.family", "T_chi scan needs a Kerr chart")
    params = _merge_defaults(body, SCAN_DEFAULTS)
    _require(params["r_max"] > chart.r_min, "r_max", "must exceed the chart floor")
    _require(params["n_r"] >= 2 and params["n_theta"] >= 2, "n_r/n_theta",
             "grid needs at least 2 points per axis")
    return ScenarioConfig(kind, chart, params)


def load_config(path: str) -> ScenarioConfig:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from exc
    return validate_config(text)
