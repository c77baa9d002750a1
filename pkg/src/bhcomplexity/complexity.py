"""Ground-state complexity sums over the Brillouin zone.

The fluctuation block at k depends on k only through eta(k), so the
whole-zone work is done once per distinct eta value and re-weighted by
multiplicity. Sums run over distinct etas in ascending order, which
keeps every reduction bit-reproducible regardless of how sweep points
are distributed over workers.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import bogoliubov, lattice, quadratic
from .onsite import MeanFieldSolution, ModelParams, self_consistent_phi


@dataclass(frozen=True)
class ComplexityReport:
    """Per-point complexity decomposition.

    totals[kappa] is sum_{k, alpha} |theta|**kappa over the full zone;
    densities divide by the site count. per_flavor[kappa] resolves the
    total by ascending-frequency flavor index. per_mode_values[kappa]
    aligns with grid.indices; zero modes contribute nothing and are
    counted separately.
    """

    params: ModelParams
    phi: float
    free_energy: float
    kappas: tuple[float, ...]
    totals: dict[float, float]
    densities: dict[float, float]
    per_flavor: dict[float, np.ndarray]
    zero_modes: int
    gap: float
    grid: lattice.MomentumGrid = field(repr=False)
    per_mode_values: dict[float, np.ndarray] | None = field(repr=False, default=None)

    def per_mode(self, kappa: float) -> dict[tuple[int, ...], float]:
        """Map from momentum index tuple to the mode's angle sum."""
        if self.per_mode_values is None:
            raise ValueError("report was built without per-mode storage")
        vals = self.per_mode_values[kappa]
        return {tuple(int(c) for c in idx): float(v) for idx, v in zip(self.grid.indices, vals)}


def mode_complexities(result: bogoliubov.BogoliubovResult, kappas: tuple[float, ...]) -> dict[float, float]:
    """sum_alpha |theta_alpha|**kappa for one block, zero modes excluded."""
    out = {}
    absth = np.abs(result.thetas)
    for kappa in kappas:
        out[float(kappa)] = float((absth ** kappa).sum())
    return out


def _zone_tables(solution: MeanFieldSolution, grid: lattice.MomentumGrid,
                 omega_tol: float = bogoliubov.OMEGA_TOL):
    """Per-distinct-eta frequencies and angles for a solved point."""
    etas, inverse, counts = lattice.eta_groups(grid)
    Ms, Ps = quadratic.build_blocks(solution, etas)
    omegas, thetas, zero_counts = bogoliubov.diagonalize_batch(Ms, Ps, omega_tol)
    return etas, inverse, counts, omegas, thetas, zero_counts


def phase_point_complexity(params: ModelParams, kappas: tuple[float, ...] = (1.0, 2.0),
                           solution: MeanFieldSolution | None = None,
                           keep_per_mode: bool = True) -> ComplexityReport:
    """Solve one phase-diagram point and aggregate its angle sums."""
    sol = solution if solution is not None else self_consistent_phi(params)
    grid = lattice.make_grid(params.extents)
    etas, inverse, counts, omegas, thetas, zero_counts = _zone_tables(sol, grid)

    absth = np.abs(np.nan_to_num(thetas, nan=0.0))
    weights = counts.astype(float)
    kappas = tuple(float(k) for k in kappas)
    totals: dict[float, float] = {}
    per_flavor: dict[float, np.ndarray] = {}
    per_mode_values: dict[float, np.ndarray] = {}
    for kappa in kappas:
        powers = absth ** kappa
        flavor_sums = (powers * weights[:, None]).sum(axis=0)
        per_flavor[kappa] = flavor_sums
        totals[kappa] = float(flavor_sums.sum())
        if keep_per_mode:
            per_mode_values[kappa] = powers.sum(axis=1)[inverse]

    nonzero = np.where(np.isnan(thetas), np.inf, omegas)
    gap = float(nonzero.min())
    zero_total = int((zero_counts * counts).sum())
    n_sites = grid.n_sites
    return ComplexityReport(
        params=params, phi=sol.phi, free_energy=sol.free_energy, kappas=kappas,
        totals=totals, densities={k: totals[k] / n_sites for k in kappas},
        per_flavor=per_flavor, zero_modes=zero_total, gap=gap, grid=grid,
        per_mode_values=per_mode_values if keep_per_mode else None,
    )


@dataclass(frozen=True)
class SweepPoint:
    """Light summary of one sweep step."""

    t: float
    mu: float
    phi: float
    free_energy: float
    densities: dict[float, float]
    totals: dict[float, float]
    per_flavor: dict[float, np.ndarray]
    zero_modes: int
    gap: float


def _sweep_one(args) -> SweepPoint:
    params, kappas = args
    report = phase_point_complexity(params, kappas, keep_per_mode=False)
    return SweepPoint(t=params.t, mu=params.mu, phi=report.phi, free_energy=report.free_energy,
                      densities=report.densities, totals=report.totals,
                      per_flavor=report.per_flavor, zero_modes=report.zero_modes, gap=report.gap)


def sweep(params: ModelParams, axis: str, values: np.ndarray,
          kappas: tuple[float, ...] = (1.0, 2.0), workers: int = 1) -> list[SweepPoint]:
    """Scan t or mu; each point is solved cold so the result is
    independent of ordering and worker count."""
    if axis not in ("t", "mu"):
        raise ValueError(f"axis must be 't' or 'mu', got {axis!r}")
    jobs = [(replace(params, **{axis: float(v)}), tuple(kappas)) for v in values]
    if workers <= 1:
        return [_sweep_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def momentum_branch_scan(params: ModelParams, t_values: np.ndarray,
                         k_indices: np.ndarray, kappas: tuple[float, ...] = (1.0, 2.0)) -> list[dict]:
    """Angle sums of selected momenta along a hopping scan.

    Returns one record per t with key "modes": list of per-k dicts
    {kappa: sum_alpha |theta|**kappa} in the order of k_indices.
    """
    grid = lattice.make_grid(params.extents)
    k_indices = np.atleast_2d(np.asarray(k_indices, dtype=np.int64))
    etas = lattice.eta(grid, k_indices)
    kappas = tuple(float(k) for k in kappas)
    records = []
    for t in t_values:
        point = replace(params, t=float(t))
        sol = self_consistent_phi(point)
        Ms, Ps = quadratic.build_blocks(sol, etas)
        _, thetas, zero_counts = bogoliubov.diagonalize_batch(Ms, Ps)
        absth = np.abs(np.nan_to_num(thetas, nan=0.0))
        modes = [{kappa: float((absth[i] ** kappa).sum()) for kappa in kappas}
                 for i in range(len(etas))]
        records.append({"t": float(t), "phi": sol.phi, "modes": modes,
                        "zero_counts": [int(z) for z in zero_counts]})
    return records


def flavor_breakdown(points: list[SweepPoint], kappa: float) -> np.ndarray:
    """Per-flavor totals stacked over sweep points, shape (P, m)."""
    return np.stack([p.per_flavor[float(kappa)] for p in points], axis=0)
