"""Command-line surface: subcommands, config handling, CSV/manifest output.

Configuration is a single JSON object (file or stdin via ``--config -``)
with flags overriding config keys. Every subcommand writes CSV files plus
a ``manifest.json`` carrying the config echo, per-point status, wall time,
and sha256 checksums. Energies are in units of U, momenta as fractions of
2*pi, floats at 12 significant digits. CSV content never includes wall
time or worker counts, so reruns are byte-identical.

Exit codes: 0 ok, 2 config error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__, lattice, quadratic
from .bogoliubov import InstabilityError, diagonalize_batch
from .complexity import momentum_branch_scan, phase_point_complexity, sweep
from .exact import SmallLatticeSpec, compare_energy
from .gaussian_ref import (c_kappa_closed, c_kappa_quadrature, gas_c2_d3,
                           gas_c_kappa_quadrature)
from .holo import HoloParams, detuning_exponent, gaussian_comparison_table
from .onsite import (BracketError, ConvergenceError, ModelParams, b_dagger_matrix,
                     locate_lobe_boundary, self_consistent_phi)
from .scaling import FitSpec, fit_scaling, gap_scan

FIT_MODELS = ("log1", "log2", "quad", "power32", "purepow")

DEFAULT_LATTICE = {1: [64], 2: [50, 50], 3: [16, 16, 16]}


class ConfigError(ValueError):
    """Bad or inconsistent run configuration."""


_COMMON = {"subcommand", "d", "lattice", "n_trunc", "t", "mu", "kappa", "workers", "out"}
_SCAN = {"scan_axis", "scan_range", "scan_steps"}

ALLOWED_KEYS = {
    "meanfield": _COMMON,
    "spectrum": _COMMON | {"k_path", "samples_per_segment"},
    "sweep": _COMMON | _SCAN,
    "branches": _COMMON | _SCAN | {"branch_ks"},
    "flavors": _COMMON | _SCAN,
    "gap": _COMMON | _SCAN,
    "fit": _COMMON | _SCAN | {"fit_model", "fit_window", "fit_side",
                              "fit_critical", "fit_reference"},
    "gaussian-ref": {"subcommand", "out", "masses", "omega0"},
    "holo": {"subcommand", "out", "d", "L", "G_N", "sigma_d", "nu", "deltas"},
    "oracle": {"subcommand", "out", "sites", "n_trunc", "geometry", "mu", "t_values"},
}


def _defaults(sub: str) -> dict:
    cfg: dict = {"subcommand": sub, "out": f"runs/{sub}"}
    if sub in ("meanfield", "spectrum", "sweep", "branches", "flavors", "gap", "fit"):
        cfg.update(d=2, lattice=None, n_trunc=6, t=0.05, mu=0.5,
                   kappa=[1.0, 2.0], workers=1)
    if sub == "spectrum":
        cfg.update(k_path=None, samples_per_segment=100)
    if sub in ("sweep", "branches", "flavors", "gap", "fit"):
        cfg.update(scan_axis="t", scan_range=[0.01, 0.3], scan_steps=30)
    if sub == "branches":
        cfg.update(branch_ks=None)
    if sub == "fit":
        cfg.update(fit_model="log1", fit_window=[2e-3, 2e-2], fit_side="below",
                   fit_critical="auto", fit_reference=None)
    if sub == "gaussian-ref":
        cfg.update(masses=None, omega0=1.0)
    if sub == "holo":
        cfg.update(d=2, L=1.0, G_N=1.0, sigma_d=1.0, nu=0.5, deltas=None)
    if sub == "oracle":
        cfg.update(sites=2, n_trunc=3, geometry="chain", mu=0.5,
                   t_values=[0.005, 0.01, 0.015, 0.02])
    return cfg


def _parse_lattice(token: str) -> list[int]:
    try:
        ext = [int(part) for part in token.lower().split("x")]
    except ValueError as exc:
        raise ConfigError(f"cannot parse lattice {token!r}; use forms like 100x100") from exc
    if not ext or any(L < 1 for L in ext):
        raise ConfigError(f"lattice extents must be positive, got {token!r}")
    return ext


def _parse_pair(token: str, name: str) -> list[float]:
    parts = token.split(":")
    if len(parts) != 2:
        raise ConfigError(f"{name} must look like lo:hi, got {token!r}")
    try:
        return [float(parts[0]), float(parts[1])]
    except ValueError as exc:
        raise ConfigError(f"{name} must hold two numbers, got {token!r}") from exc


def _require(cond: bool, message: str):
    if not cond:
        raise ConfigError(message)


def _as_float_list(value, name: str) -> list[float]:
    _require(isinstance(value, (list, tuple)) and len(value) > 0,
             f"{name} must be a non-empty list of numbers")
    try:
        return [float(v) for v in value]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name} must hold numbers") from exc


def _validate(cfg: dict):
    sub = cfg["subcommand"]
    _require(isinstance(cfg["out"], str) and cfg["out"], "out must be a non-empty path")

    if sub == "gaussian-ref":
        cfg["omega0"] = float(cfg["omega0"])
        _require(cfg["omega0"] > 0, "omega0 must be positive")
        if cfg["masses"] is not None:
            cfg["masses"] = _as_float_list(cfg["masses"], "masses")
            _require(all(0 <= m <= cfg["omega0"] for m in cfg["masses"]),
                     "masses must lie in [0, omega0]")
        return
    if sub == "holo":
        _require(isinstance(cfg["d"], int) and cfg["d"] >= 1, "d must be a positive integer")
        for key in ("L", "G_N", "sigma_d", "nu"):
            cfg[key] = float(cfg[key])
            _require(cfg[key] > 0, f"{key} must be positive")
        if cfg["deltas"] is not None:
            cfg["deltas"] = _as_float_list(cfg["deltas"], "deltas")
            _require(all(dt != 0 for dt in cfg["deltas"]), "deltas must be nonzero")
        return
    if sub == "oracle":
        _require(isinstance(cfg["sites"], int) and 2 <= cfg["sites"] <= 4,
                 "sites must be an integer in 2..4")
        _require(isinstance(cfg["n_trunc"], int) and 2 <= cfg["n_trunc"] <= 6,
                 "n_trunc must be an integer in 2..6")
        _require(cfg["geometry"] in ("chain", "plaquette"),
                 "geometry must be 'chain' or 'plaquette'")
        cfg["mu"] = float(cfg["mu"])
        cfg["t_values"] = _as_float_list(cfg["t_values"], "t_values")
        _require(all(t >= 0 for t in cfg["t_values"]), "t_values must be nonnegative")
        return

    _require(isinstance(cfg["d"], int) and cfg["d"] >= 1, "d must be a positive integer")
    if cfg["lattice"] is None:
        _require(cfg["d"] in DEFAULT_LATTICE, f"no default lattice for d={cfg['d']}; set one")
        cfg["lattice"] = list(DEFAULT_LATTICE[cfg["d"]])
    _require(isinstance(cfg["lattice"], (list, tuple)), "lattice must be a list of extents")
    cfg["lattice"] = [int(L) for L in cfg["lattice"]]
    _require(all(L >= 1 for L in cfg["lattice"]), "lattice extents must be positive")
    _require(len(cfg["lattice"]) == cfg["d"],
             f"lattice {cfg['lattice']} does not match d={cfg['d']}")
    _require(isinstance(cfg["n_trunc"], int) and cfg["n_trunc"] >= 2,
             "n_trunc must be an integer >= 2")
    cfg["t"] = float(cfg["t"])
    cfg["mu"] = float(cfg["mu"])
    _require(cfg["t"] >= 0, "t must be nonnegative")
    cfg["kappa"] = _as_float_list(cfg["kappa"], "kappa")
    _require(all(k > 0 for k in cfg["kappa"]), "kappa values must be positive")
    _require(isinstance(cfg["workers"], int) and cfg["workers"] >= 1,
             "workers must be an integer >= 1")

    if sub == "spectrum":
        _require(isinstance(cfg["samples_per_segment"], int) and cfg["samples_per_segment"] >= 2,
                 "samples_per_segment must be an integer >= 2")
        if cfg["k_path"] is not None:
            _require(isinstance(cfg["k_path"], (list, tuple)) and len(cfg["k_path"]) >= 2,
                     "k_path needs at least two vertices")
            cfg["k_path"] = [_as_float_list(v, "k_path vertex") for v in cfg["k_path"]]
            _require(all(len(v) == cfg["d"] for v in cfg["k_path"]),
                     "k_path vertices must have one component per dimension")
    if sub in ("sweep", "branches", "flavors", "gap", "fit"):
        _require(cfg["scan_axis"] in ("t", "mu"), "scan_axis must be 't' or 'mu'")
        cfg["scan_range"] = _as_float_list(cfg["scan_range"], "scan_range")
        _require(len(cfg["scan_range"]) == 2, "scan_range must hold exactly two numbers")
        _require(isinstance(cfg["scan_steps"], int) and cfg["scan_steps"] >= 1,
                 "scan_steps must be an integer >= 1")
    if sub == "branches":
        _require(cfg["scan_axis"] == "t", "branches scans hopping; set scan_axis to 't'")
        if cfg["branch_ks"] is not None:
            cfg["branch_ks"] = [_as_float_list(v, "branch_ks entry") for v in cfg["branch_ks"]]
            _require(all(len(v) == cfg["d"] for v in cfg["branch_ks"]),
                     "branch_ks entries must have one component per dimension")
    if sub == "fit":
        _require(cfg["fit_model"] in FIT_MODELS, f"fit_model must be one of {FIT_MODELS}")
        cfg["fit_window"] = _as_float_list(cfg["fit_window"], "fit_window")
        _require(len(cfg["fit_window"]) == 2 and 0 < cfg["fit_window"][0] < cfg["fit_window"][1],
                 "fit_window must satisfy 0 < lo < hi")
        _require(cfg["fit_side"] in ("below", "above", "both"),
                 "fit_side must be 'below', 'above', or 'both'")
        crit = cfg["fit_critical"]
        if crit != "auto":
            try:
                cfg["fit_critical"] = float(crit)
            except (TypeError, ValueError) as exc:
                raise ConfigError("fit_critical must be a number or 'auto'") from exc
        elif cfg["scan_axis"] != "t":
            raise ConfigError("fit_critical='auto' locates the lobe boundary in t; "
                              "mu scans need an explicit number")
        if cfg["fit_reference"] is not None:
            cfg["fit_reference"] = float(cfg["fit_reference"])


def load_config(args: argparse.Namespace) -> dict:
    sub = args.subcommand
    cfg = _defaults(sub)
    allowed = ALLOWED_KEYS[sub]

    if getattr(args, "config", None):
        raw = sys.stdin.read() if args.config == "-" else Path(args.config).read_text()
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        _require(isinstance(doc, dict), "config must be a JSON object")
        if "subcommand" in doc and doc["subcommand"] != sub:
            raise ConfigError(f"config is for subcommand {doc['subcommand']!r}, not {sub!r}")
        unknown = sorted(set(doc) - allowed)
        _require(not unknown, f"unknown config keys for {sub}: {unknown}")
        cfg.update(doc)

    overrides: dict = {}
    if getattr(args, "out", None):
        overrides["out"] = args.out
    if getattr(args, "workers", None) is not None:
        overrides["workers"] = args.workers
    if getattr(args, "kappa", None):
        try:
            overrides["kappa"] = [float(part) for part in args.kappa.split(",")]
        except ValueError as exc:
            raise ConfigError(f"cannot parse kappa list {args.kappa!r}") from exc
    if getattr(args, "lattice", None):
        ext = _parse_lattice(args.lattice)
        overrides["lattice"] = ext
        overrides["d"] = len(ext)
    if getattr(args, "n_trunc", None) is not None:
        overrides["n_trunc"] = args.n_trunc
    if getattr(args, "t", None) is not None:
        overrides["t"] = args.t
    if getattr(args, "mu", None) is not None:
        overrides["mu"] = args.mu
    if getattr(args, "scan_axis", None):
        overrides["scan_axis"] = args.scan_axis
    if getattr(args, "scan_range", None):
        overrides["scan_range"] = _parse_pair(args.scan_range, "scan-range")
    if getattr(args, "scan_steps", None) is not None:
        overrides["scan_steps"] = args.scan_steps
    if getattr(args, "fit_model", None):
        overrides["fit_model"] = args.fit_model
    if getattr(args, "fit_window", None):
        overrides["fit_window"] = _parse_pair(args.fit_window, "fit-window")
    if getattr(args, "fit_side", None):
        overrides["fit_side"] = args.fit_side
    if getattr(args, "fit_critical", None):
        overrides["fit_critical"] = args.fit_critical
    if getattr(args, "fit_reference", None) is not None:
        overrides["fit_reference"] = args.fit_reference

    stray = sorted(set(overrides) - allowed)
    _require(not stray, f"flags {stray} do not apply to {sub}")
    cfg.update(overrides)
    _validate(cfg)
    return cfg


def _params(cfg: dict) -> ModelParams:
    return ModelParams(d=cfg["d"], extents=tuple(cfg["lattice"]), n_max=cfg["n_trunc"],
                       t=cfg["t"], mu=cfg["mu"])


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".12g")


def _write_csv(path: Path, cfg: dict, columns: list[str], rows,
               extra_comments: list[str] | None = None):
    # workers and out never enter the file: identical physics must give
    # identical bytes no matter how the run was parallelized or placed.
    echo = {k: v for k, v in cfg.items() if k not in ("workers", "out")}
    lines = [f"# bhcomplexity {__version__} {cfg['subcommand']}",
             f"# config {json.dumps(echo, sort_keys=True)}"]
    lines.extend(extra_comments or [])
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _scan_values(cfg: dict) -> np.ndarray:
    lo, hi = cfg["scan_range"]
    return np.linspace(lo, hi, cfg["scan_steps"])


def _sweep_table(points, kappas):
    cols = ["t", "mu", "phi", "free_energy", "gap", "zero_modes"]
    for k in kappas:
        cols += [f"C{k:g}", f"c{k:g}"]
    rows = []
    for p in points:
        row = [p.t, p.mu, p.phi, p.free_energy, p.gap, p.zero_modes]
        for k in kappas:
            row += [p.totals[k], p.densities[k]]
        rows.append(row)
    return cols, rows


def _run_meanfield(cfg: dict, outdir: Path):
    params = _params(cfg)
    sol = self_consistent_phi(params)
    f_main = outdir / "meanfield.csv"
    _write_csv(f_main, cfg, ["t", "mu", "phi", "free_energy", "iterations", "method"],
               [[params.t, params.mu, sol.phi, sol.free_energy, sol.iterations, sol.method]])
    f_levels = outdir / "levels.csv"
    rows = [[a, e, e - sol.energies[0]] for a, e in enumerate(sol.energies)]
    _write_csv(f_levels, cfg, ["alpha", "energy", "gap"], rows)
    B = b_dagger_matrix(params, sol.vectors)
    f_b = outdir / "bdagger.csv"
    cols = ["beta"] + [f"alpha{j}" for j in range(params.n_max)]
    _write_csv(f_b, cfg, cols, [[i, *B[i]] for i in range(params.n_max)])
    return [f_main, f_levels, f_b], [{"t": params.t, "mu": params.mu, "status": "ok"}], None


def _default_k_path(d: int) -> list[list[float]]:
    end = [0.0] * d
    end[-1] = 0.5
    return [[0.0] * d, end]


def _run_spectrum(cfg: dict, outdir: Path):
    params = _params(cfg)
    sol = self_consistent_phi(params)
    grid = lattice.make_grid(params.extents)
    fracs = cfg["k_path"] if cfg["k_path"] is not None else _default_k_path(params.d)
    verts = [tuple(2.0 * np.pi * c for c in v) for v in fracs]
    path = lattice.k_path(grid, verts, cfg["samples_per_segment"])
    etas = lattice.eta(grid, path)
    Ms, Ps = quadratic.build_blocks(sol, etas)
    omegas, thetas, zero_counts = diagonalize_batch(Ms, Ps)
    arc = lattice.path_coordinate(grid, path)
    m = params.n_max - 1
    cols = (["s"] + [f"k{j+1}" for j in range(params.d)] + ["eta", "zero_count"]
            + [f"omega{a+1}" for a in range(m)] + [f"theta{a+1}" for a in range(m)])
    ext = np.asarray(params.extents, dtype=float)
    rows = []
    for i in range(len(path)):
        rows.append([arc[i], *(path[i] / ext), etas[i], int(zero_counts[i]),
                     *omegas[i], *thetas[i]])
    f_spec = outdir / "spectrum.csv"
    _write_csv(f_spec, cfg, cols, rows)
    return ([f_spec], [{"t": params.t, "mu": params.mu, "status": "ok"}],
            int(zero_counts.sum()))


def _run_sweep(cfg: dict, outdir: Path):
    params = _params(cfg)
    kappas = tuple(cfg["kappa"])
    points = sweep(params, cfg["scan_axis"], _scan_values(cfg), kappas,
                   workers=cfg["workers"])
    cols, rows = _sweep_table(points, kappas)
    f_sweep = outdir / "sweep.csv"
    _write_csv(f_sweep, cfg, cols, rows)
    status = [{"t": p.t, "mu": p.mu, "status": "ok"} for p in points]
    return [f_sweep], status, int(sum(p.zero_modes for p in points))


def _run_flavors(cfg: dict, outdir: Path):
    params = _params(cfg)
    kappas = tuple(cfg["kappa"])
    points = sweep(params, cfg["scan_axis"], _scan_values(cfg), kappas,
                   workers=cfg["workers"])
    m = params.n_max - 1
    n = params.n_sites
    cols = ["t", "mu", "phi"] + [f"c{k:g}_f{a+1}" for k in kappas for a in range(m)]
    rows = [[p.t, p.mu, p.phi] + [p.per_flavor[k][a] / n for k in kappas for a in range(m)]
            for p in points]
    f_fl = outdir / "flavors.csv"
    _write_csv(f_fl, cfg, cols, rows)
    status = [{"t": p.t, "mu": p.mu, "status": "ok"} for p in points]
    return [f_fl], status, int(sum(p.zero_modes for p in points))


def _default_branch_ks(d: int) -> list[list[float]]:
    out = []
    for frac in (0.125, 0.25, 0.375, 0.5):
        v = [0.0] * d
        v[-1] = frac
        out.append(v)
    return out


def _run_branches(cfg: dict, outdir: Path):
    params = _params(cfg)
    kappas = tuple(cfg["kappa"])
    values = _scan_values(cfg)
    fracs = cfg["branch_ks"] if cfg["branch_ks"] is not None else _default_branch_ks(params.d)
    ext = np.asarray(params.extents, dtype=np.int64)
    idx = np.rint(np.asarray(fracs, dtype=float) * ext).astype(np.int64) % ext
    records = momentum_branch_scan(params, values, idx, kappas)
    nk = len(idx)
    comments = [f"# k{j+1} = ({','.join(format(c, 'g') for c in fracs[j])}) of 2*pi, "
                f"grid index ({','.join(str(int(c)) for c in idx[j])})" for j in range(nk)]
    cols = (["t", "phi"] + [f"k{j+1}_zeros" for j in range(nk)]
            + [f"k{j+1}_c{k:g}" for j in range(nk) for k in kappas])
    rows = []
    for rec in records:
        row = [rec["t"], rec["phi"]] + rec["zero_counts"]
        row += [rec["modes"][j][k] for j in range(nk) for k in kappas]
        rows.append(row)
    f_br = outdir / "branches.csv"
    _write_csv(f_br, cfg, cols, rows, extra_comments=comments)
    status = [{"t": rec["t"], "mu": params.mu, "status": "ok"} for rec in records]
    zeros = int(sum(sum(rec["zero_counts"]) for rec in records))
    return [f_br], status, zeros


def _run_gap(cfg: dict, outdir: Path):
    params = _params(cfg)
    records = gap_scan(params, cfg["scan_axis"], _scan_values(cfg))
    cols = ["value", "t", "mu", "phi", "gap", "zero_modes"]
    rows = [[r["value"], r["t"], r["mu"], r["phi"], r["gap"], r["zero_modes"]]
            for r in records]
    f_gap = outdir / "gap.csv"
    _write_csv(f_gap, cfg, cols, rows)
    status = [{"t": r["t"], "mu": r["mu"], "status": "ok"} for r in records]
    return [f_gap], status, int(sum(r["zero_modes"] for r in records))


def _run_fit(cfg: dict, outdir: Path):
    params = _params(cfg)
    kappas = tuple(cfg["kappa"])
    kappa0 = kappas[0]
    axis = cfg["scan_axis"]
    critical = cfg["fit_critical"]
    if critical == "auto":
        critical = locate_lobe_boundary(params)
    critical = float(critical)
    model = cfg["fit_model"]
    reference = cfg["fit_reference"]
    if reference is None and model != "purepow":
        at_crit = phase_point_complexity(replace(params, **{axis: critical}), kappas,
                                         keep_per_mode=False)
        reference = at_crit.densities[kappa0]

    points = sweep(params, axis, _scan_values(cfg), kappas, workers=cfg["workers"])
    xs = np.array([getattr(p, axis) for p in points])
    cs = np.array([p.densities[kappa0] for p in points])

    sides = ["below", "above"] if cfg["fit_side"] == "both" else [cfg["fit_side"]]
    window = (cfg["fit_window"][0], cfg["fit_window"][1])
    fit_rows = []
    for side in sides:
        spec = FitSpec(model=model, critical_value=critical, side=side, window=window,
                       reference_value=None if model == "purepow" else float(reference))
        res = fit_scaling(xs, cs, spec)
        for name, val in res.coefficients.items():
            fit_rows.append([kappa0, model, side, window[0], window[1], critical,
                             "" if reference is None else reference,
                             res.n_points, res.rms, name, val, res.stderr[name]])

    cols, rows = _sweep_table(points, kappas)
    f_scan = outdir / "fit_scan.csv"
    _write_csv(f_scan, cfg, cols, rows)
    f_fit = outdir / "fit.csv"
    _write_csv(f_fit, cfg,
               ["kappa", "model", "side", "window_lo", "window_hi", "critical",
                "reference", "n_points", "rms", "coeff", "value", "stderr"],
               fit_rows)
    status = [{"t": p.t, "mu": p.mu, "status": "ok"} for p in points]
    return [f_scan, f_fit], status, int(sum(p.zero_modes for p in points))


def _run_gaussian_ref(cfg: dict, outdir: Path):
    masses = cfg["masses"]
    if masses is None:
        masses = [round(float(x), 12) for x in np.linspace(0.0, 0.9, 10)]
    w0 = cfg["omega0"]
    rows = []
    for d in (2, 3):
        for kap in (1, 2):
            for m in masses:
                quadr = c_kappa_quadrature(kap, m, w0, d)
                closed = c_kappa_closed(kap, m, w0, d)
                is_exp = int(d == 3 and kap == 2)
                denom = abs(quadr) if quadr != 0 else 1.0
                rows.append([d, kap, m, w0, quadr, closed, is_exp,
                             abs(closed - quadr) / denom])
    f_scalar = outdir / "scalar_field.csv"
    _write_csv(f_scalar, cfg,
               ["d", "kappa", "m", "omega0", "quadrature", "closed",
                "closed_is_expansion", "rel_diff"], rows)

    gas_rows = []
    for m in (0.5, 1.0):
        for U in (0.5, 1.0):
            closed = gas_c2_d3(m, U)
            quadr = gas_c_kappa_quadrature(m, U, 2.0)
            gas_rows.append([m, U, closed, quadr, abs(closed - quadr) / abs(quadr)])
    f_gas = outdir / "gas.csv"
    _write_csv(f_gas, cfg, ["m", "U", "closed", "quadrature", "rel_diff"], gas_rows)
    return [f_scalar, f_gas], [], None


def _run_holo(cfg: dict, outdir: Path):
    deltas = cfg["deltas"]
    if deltas is None:
        deltas = [float(x) for x in np.logspace(-4, -1, 16)]
    base = HoloParams(d=cfg["d"], L=cfg["L"], G_N=cfg["G_N"], sigma_d=cfg["sigma_d"],
                      nu=cfg["nu"], delta_t=deltas[0])
    table = gaussian_comparison_table(base, deltas)
    exponent = detuning_exponent(base)
    cols = ["delta_t", "xi", "cv_delta", "exponent", "lattice_leading", "ratio"]
    rows = [[r["delta_t"], r["xi"], r["cv_delta"], exponent,
             r["lattice_leading"], r["ratio"]] for r in table]
    f_holo = outdir / "holo.csv"
    _write_csv(f_holo, cfg, cols, rows)
    return [f_holo], [], None


def _run_oracle(cfg: dict, outdir: Path):
    rows = []
    status = []
    for t in cfg["t_values"]:
        spec = SmallLatticeSpec(sites=cfg["sites"], n_max=cfg["n_trunc"], t=t,
                                mu=cfg["mu"], geometry=cfg["geometry"])
        comp = compare_energy(spec)
        rows.append([t, cfg["mu"], comp.exact, comp.mean_field, comp.quadratic,
                     comp.mean_field_error, comp.quadratic_error,
                     int(comp.mean_field >= comp.exact - 1e-12)])
        status.append({"t": t, "mu": cfg["mu"], "status": "ok"})
    f_or = outdir / "oracle.csv"
    _write_csv(f_or, cfg,
               ["t", "mu", "exact", "mean_field", "quadratic", "mf_rel_err",
                "quad_rel_err", "variational_ok"], rows)
    return [f_or], status, None


RUNNERS = {
    "meanfield": _run_meanfield,
    "spectrum": _run_spectrum,
    "sweep": _run_sweep,
    "branches": _run_branches,
    "flavors": _run_flavors,
    "gap": _run_gap,
    "fit": _run_fit,
    "gaussian-ref": _run_gaussian_ref,
    "holo": _run_holo,
    "oracle": _run_oracle,
}


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _error_record(stage: str, exc: Exception, subcommand: str | None) -> dict:
    return {"status": "error", "stage": stage, "subcommand": subcommand,
            "error": type(exc).__name__, "message": str(exc)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bhcomplexity",
        description="Bose-Hubbard ground-state complexity: mean field, fluctuation "
                    "spectra, squeezing-angle sums, scaling fits, and references.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    base = argparse.ArgumentParser(add_help=False)
    base.add_argument("--config", help="JSON config file, or - for stdin")
    base.add_argument("--out", help="output directory")

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--workers", type=int, help="parallel processes for sweeps")
    model.add_argument("--kappa", help="comma list of exponents, e.g. 1,2")
    model.add_argument("--lattice", help="extents like 100x100 (fixes d)")
    model.add_argument("--n-trunc", type=int, help="local Fock states per site")
    model.add_argument("--t", type=float, help="hopping t = f*J/U")
    model.add_argument("--mu", type=float, help="chemical potential mu/U")

    scan = argparse.ArgumentParser(add_help=False)
    scan.add_argument("--scan-axis", choices=["t", "mu"])
    scan.add_argument("--scan-range", help="lo:hi")
    scan.add_argument("--scan-steps", type=int)

    fitp = argparse.ArgumentParser(add_help=False)
    fitp.add_argument("--fit-model", choices=list(FIT_MODELS))
    fitp.add_argument("--fit-window", help="lo:hi in |delta|")
    fitp.add_argument("--fit-side", choices=["below", "above", "both"])
    fitp.add_argument("--fit-critical", help="number, or auto for the lobe boundary")
    fitp.add_argument("--fit-reference", type=float)

    sub.add_parser("meanfield", parents=[base, model],
                   help="solve one point; dump phi, site levels, bdag matrix")
    sub.add_parser("spectrum", parents=[base, model],
                   help="mode frequencies and angles along a momentum path")
    sub.add_parser("sweep", parents=[base, model, scan],
                   help="complexity densities along a t or mu scan")
    sub.add_parser("branches", parents=[base, model, scan],
                   help="per-momentum angle sums along a hopping scan")
    sub.add_parser("flavors", parents=[base, model, scan],
                   help="flavor-resolved complexity along a scan")
    sub.add_parser("gap", parents=[base, model, scan],
                   help="smallest nonzero frequency along a scan")
    sub.add_parser("fit", parents=[base, model, scan, fitp],
                   help="scan plus critical-scaling fit")
    sub.add_parser("gaussian-ref", parents=[base],
                   help="closed form vs quadrature reference tables")
    sub.add_parser("holo", parents=[base],
                   help="volume-conjecture deficit table")
    oracle = sub.add_parser("oracle", parents=[base],
                            help="exact diagonalization vs the quadratic pipeline")
    oracle.add_argument("--n-trunc", type=int, help="local Fock states per site")
    oracle.add_argument("--mu", type=float, help="chemical potential mu/U")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
    except (ConfigError, ValueError, OSError) as exc:
        record = _error_record("config", exc, getattr(args, "subcommand", None))
        print(json.dumps(record), file=sys.stderr)
        return 2

    outdir = Path(cfg["out"])
    outdir.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    try:
        files, points, zero_modes = RUNNERS[cfg["subcommand"]](cfg, outdir)
    except (ConvergenceError, InstabilityError, BracketError, ValueError,
            ArithmeticError, np.linalg.LinAlgError) as exc:
        record = _error_record("numerical", exc, cfg["subcommand"])
        print(json.dumps(record), file=sys.stderr)
        (outdir / "error.json").write_text(json.dumps(record, indent=2) + "\n")
        return 3
    wall = time.perf_counter() - start

    manifest = {
        "tool": "bhcomplexity",
        "version": __version__,
        "subcommand": cfg["subcommand"],
        "config": cfg,
        "status": "ok",
        "wall_time_s": wall,
        "points": points,
        "zero_mode_total": zero_modes,
        "files": [{"name": f.name, "bytes": f.stat().st_size, "sha256": _sha256(f)}
                  for f in files],
    }
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
