"""Deterministic scenario execution: per-job output directories, CSV
ledgers, and an atomically written JSON manifest."""

from __future__ import annotations

import dataclasses
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from .. import __version__
from ..errors import AuditFailure, IoError
from ..geodesic import (
    eg2_audit,
    find_trapped,
    integrate_null,
    make_null_initial,
    random_null_states,
)
from ..geodesic.energies import energy_series
from ..geometry.generators import (
    GeneratorField,
    deformation_rtheta,
    generator_components,
    photon_sphere_profile,
    t_chi,
    timelike_scan,
)
from ..modewave import (
    ModeGrid,
    ModeState,
    PotentialSpec,
    Probes,
    energy_balance_residual,
    evolve,
    gaussian_packet,
    photon_sphere_multiplier,
)
from ..series import Ledger, emit_series
from .config import ScenarioConfig


@dataclass
class RunManifest:
    """Structured record of one scenario run."""

    scenario: str
    config: dict
    version: str
    seed: int
    started: str
    finished: str = ""
    jobs: List[dict] = field(default_factory=list)
    files: List[str] = field(default_factory=list)
    audits: Dict[str, dict] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(a.get("passed", True) for a in self.audits.values())

    def write(self, path: str):
        """Atomic JSON dump; refuses to name a missing or empty file."""
        base = os.path.dirname(path)
        for rel in self.files:
            full = os.path.join(base, rel)
            if not os.path.isfile(full) or os.path.getsize(full) == 0:
                raise IoError(f"manifest names missing or empty file {rel!r}")
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(dataclasses.asdict(self), fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)


def _timestamp() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime())


def _chart_dict(chart) -> Optional[dict]:
    if chart is None:
        return None
    return {"family": chart.family, "mass": chart.mass, "spin": chart.spin,
            "r_min": chart.r_min, "axis_margin": chart.axis_margin}


def _make_generator(kind: str, chart):
    if kind == "A_f":
        return GeneratorField(kind, profile=photon_sphere_profile(chart.mass))
    if kind == "T_chi":
        return t_chi(chart)
    return GeneratorField(kind)


def _geodesic_job(args):
    """One trajectory: integrate, write CSVs, return audit rows.

    Module-level so a process pool can pickle it; all inputs arrive as plain
    picklable objects and outputs go to the job's private directory.
    """
    index, chart, state, params, job_dir = args
    os.makedirs(job_dir, exist_ok=True)
    traj = integrate_null(state, chart, span=float(params["span"]),
                          rtol=float(params["tolerance"]),
                          n_samples=int(params["samples"]))
    cols = {"t": traj.positions[:, 0], "r": traj.positions[:, 1],
            "theta": traj.positions[:, 2], "phi": traj.positions[:, 3],
            "v_t": traj.velocities[:, 0], "v_r": traj.velocities[:, 1],
            "v_theta": traj.velocities[:, 2], "v_phi": traj.velocities[:, 3],
            "null_residual": traj.residuals}
    track = Ledger(name="trajectory", index_name="lambda", index=traj.lambdas,
                   columns=cols, units={"lambda": "M", "t": "M", "r": "M"})
    emit_series(track, os.path.join(job_dir, "trajectory.csv"))

    energy_cols = {}
    audits = {}
    tol = float(params["tolerance"])
    for kind in params["generators"]:
        gen = _make_generator(kind, chart)
        e = energy_series(chart, gen, traj.lambdas, traj.positions, traj.velocities)
        energy_cols[f"e_{kind}"] = e
        audit = eg2_audit(traj, gen)
        scale = max(1.0, float(np.max(np.abs(e))))
        audits[f"eg2_{kind}"] = {
            "delta_e": audit.delta_e, "integral": audit.integral,
            "residual": audit.residual,
            "passed": bool(audit.residual < 1e-6 * scale),
        }
    if energy_cols:
        eled = Ledger(name="energies", index_name="lambda", index=traj.lambdas,
                      columns=energy_cols, units={"lambda": "M"})
        emit_series(eled, os.path.join(job_dir, "energies.csv"))

    res_tol = max(1e-8, 1e3 * tol)
    max_res = float(np.max(traj.residuals))
    audits["null_constraint"] = {"max_residual": max_res,
                                 "passed": bool(max_res < res_tol)}
    files = ["trajectory.csv"] + (["energies.csv"] if energy_cols else [])
    return {"index": index, "status": traj.termination, "files": files,
            "audits": audits}


def _run_geodesic(config: ScenarioConfig, out_dir: str, jobs: int, manifest: RunManifest):
    p = config.params
    chart = config.chart
    if "initial" in p:
        init = p["initial"]
        states = [make_null_initial(chart, init["position"], init["direction"])]
    else:
        rng = np.random.default_rng(config.seed)
        states = random_null_states(chart, int(p["count"]), rng,
                                    r_range=tuple(p["r_range"]),
                                    radial_sign=int(p["radial_sign"]))
    work = [(i, chart, st, p, os.path.join(out_dir, f"job_{i:03d}"))
            for i, st in enumerate(states)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_geodesic_job, work))
    else:
        results = [_geodesic_job(w) for w in work]
    results.sort(key=lambda r: r["index"])
    for res in results:
        job_name = f"job_{res['index']:03d}"
        manifest.jobs.append({"index": res["index"], "status": res["status"],
                              "files": [f"{job_name}/{f}" for f in res["files"]]})
        manifest.files.extend(f"{job_name}/{f}" for f in res["files"])
        for key, audit in res["audits"].items():
            manifest.audits[f"{job_name}/{key}"] = audit


def _run_wave(config: ScenarioConfig, out_dir: str, manifest: RunManifest):
    p = config.params
    g = p["grid"]
    grid = ModeGrid.make(p["mass"], float(g["lo"]), float(g["hi"]), int(g["points"]))
    spec = PotentialSpec(spin_weight=int(p["spin_weight"]), multipole=int(p["multipole"]),
                         mass=p["mass"], bump_amplitude=float(p["bump"]["amplitude"]),
                         bump_width=float(p["bump"]["width"]))
    pk = p["packet"]
    psi, pi = gaussian_packet(grid, center=float(pk["center"]), width=float(pk["width"]),
                              direction=int(pk["direction"]))
    state = ModeState(grid=grid, spec=spec, psi=psi, pi=pi, cfl=float(p["cfl"]))
    mult = None
    if p["multiplier"] == "photon_sphere":
        mult = photon_sphere_multiplier(p["mass"])
    elif p["multiplier"] == "translation":
        mult = photon_sphere_multiplier(0.0)
    window = tuple(p["window"]) if p["window"] is not None else None
    probes = Probes(multiplier=mult, window=window)
    n_steps = int(np.ceil(float(p["t_final"]) / state.dt))
    final, ledger = evolve(state, n_steps, probes, stride=int(p["stride"]))
    emit_series(ledger, os.path.join(out_dir, "wave.csv"))
    manifest.files.append("wave.csv")
    manifest.jobs.append({"index": 0, "status": "done", "files": ["wave.csv"]})

    E0 = float(ledger.column("E")[0])
    res = float(np.max(energy_balance_residual(ledger))) / max(E0, 1e-300)
    tol = float(p.get("balance_tol", 1e-2))
    manifest.audits["energy_balance"] = {"relative_residual": res, "tol": tol,
                                         "passed": bool(res < tol)}


def _run_trapped(config: ScenarioConfig, out_dir: str, manifest: RunManifest):
    p = config.params
    seed_interval = tuple(p["seed_interval"]) if p["seed_interval"] else None
    orbit = find_trapped(config.chart, seed_interval=seed_interval, branch=p["branch"])
    r = np.linspace(config.chart.r_plus * 1.01, 10.0 * config.chart.mass, 501)
    led = Ledger(name="radial_potential", index_name="r", index=r,
                 columns={"R": orbit.spec.value(r), "dR": orbit.spec.derivative(r)},
                 units={"r": "M"})
    emit_series(led, os.path.join(out_dir, "potential.csv"))
    manifest.files.append("potential.csv")
    manifest.jobs.append({"index": 0, "status": "done", "files": ["potential.csv"]})
    manifest.audits["trapped_root"] = {
        "r_trap": orbit.r_trap, "angular_momentum": orbit.spec.angular_momentum,
        "residual_R": orbit.residual_R, "residual_dR": orbit.residual_dR,
        "passed": True,  # find_trapped raises when the polish misses tolerance
    }


def _run_scan_tchi(config: ScenarioConfig, out_dir: str, manifest: RunManifest):
    p = config.params
    chart = config.chart
    gen = t_chi(chart, blend_window=tuple(p["blend_window"]) if p["blend_window"] else None)
    r = np.linspace(chart.r_min * (1 + 1e-9), float(p["r_max"]), int(p["n_r"]))
    margin = max(chart.axis_margin * 2, 1e-3)
    th = np.linspace(margin, np.pi - margin, int(p["n_theta"]))
    report = timelike_scan(gen, chart, r, th)
    pi = deformation_rtheta(gen, chart, r[:, None], th[None, :])
    sup_theta = np.max(np.abs(pi), axis=(0, 1, 3))
    g = chart.metric_rtheta(r[:, None], th[None, :])
    X, _ = generator_components(gen, chart, r[:, None], th[None, :])
    val = -np.einsum("a...,ab...,b...->...", X, g, X)
    led = Ledger(name="tchi_scan", index_name="r", index=r,
                 columns={"min_timelike": np.min(val, axis=1),
                          "sup_deformation": sup_theta},
                 units={"r": "M"})
    emit_series(led, os.path.join(out_dir, "tchi_scan.csv"))
    manifest.files.append("tchi_scan.csv")
    manifest.jobs.append({"index": 0, "status": "done", "files": ["tchi_scan.csv"]})
    w1, w2 = gen.blend_window
    outside = (r < w1) | (r > w2)
    manifest.audits["tchi_timelike"] = {
        "min_value": report.min_value,
        "worst_point_r": report.worst_point[0],
        "worst_point_theta": report.worst_point[1],
        "passed": bool(report.all_timelike),
    }
    manifest.audits["tchi_support"] = {
        "sup_outside_window": float(np.max(sup_theta[outside])) if np.any(outside) else 0.0,
        "sup_inside_window": float(np.max(sup_theta[~outside])) if np.any(~outside) else 0.0,
        "passed": bool(not np.any(outside) or np.max(sup_theta[outside]) < 1e-12),
    }


def output_root(cli_out: Optional[str]) -> str:
    """Resolve the output directory: flag first, then the environment
    override MORAWETZLAB_OUT, then the working directory."""
    if cli_out:
        return cli_out
    env = os.environ.get("MORAWETZLAB_OUT")
    return env if env else "."


def run_scenario(config: ScenarioConfig, out_dir: str, jobs: int = 1,
                 raise_on_audit: bool = True) -> RunManifest:
    """Execute a validated scenario.

    All data files and the manifest land under `out_dir`.  The manifest is
    written even when an audit fails; AuditFailure is raised afterwards so
    callers can map it to an exit status.
    """
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create output directory {out_dir}: {exc}") from exc
    manifest = RunManifest(scenario=config.kind,
                           config={"chart": _chart_dict(config.chart), **config.params},
                           version=__version__, seed=config.seed,
                           started=_timestamp())
    if config.kind == "geodesic":
        _run_geodesic(config, out_dir, jobs, manifest)
    elif config.kind == "wave":
        _run_wave(config, out_dir, manifest)
    elif config.kind == "trapped":
        _run_trapped(config, out_dir, manifest)
    else:
        _run_scan_tchi(config, out_dir, manifest)
    manifest.finished = _timestamp()
    try:
        manifest.write(os.path.join(out_dir, "manifest.json"))
    except OSError as exc:
        raise IoError(f"cannot write manifest: {exc}") from exc
    if raise_on_audit and not manifest.all_passed:
        failed = [k for k, a in manifest.audits.items() if not a.get("passed", True)]
        raise AuditFailure(f"audit(s) failed: {', '.join(failed)}")
    return manifest
