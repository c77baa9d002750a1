"""Single-site mean-field problem for the Bose-Hubbard model.

Energies are measured in units of the on-site repulsion U. The hopping
enters only through t = f*J/U with coordination f = 2*d, and the site
Hamiltonian for a real condensate amplitude phi is

    h(phi) = -t*phi*(b + bdag) + n*(n - 1)/2 - mu*n

on a Fock space truncated to occupations 0..n_max-1. The variational
energy per site is F(phi) = e0(phi) + t*phi**2, minimized exactly when
phi equals the ground-state expectation of b.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import brentq, minimize_scalar

PHI_ZERO_TOL = 1e-8
PHI_SEARCH_MAX = 3.0


class ConvergenceError(RuntimeError):
    """Self-consistency loop failed; carries the last iterate."""

    def __init__(self, message: str, last_phi: float):
        super().__init__(message)
        self.last_phi = last_phi


class BracketError(ValueError):
    """A root or boundary search found no sign change in its bracket."""


@dataclass(frozen=True)
class ModelParams:
    """Model point: dimension, lattice extents, truncation, couplings."""

    d: int
    extents: tuple[int, ...]
    n_max: int
    t: float
    mu: float

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")
        if len(self.extents) != self.d:
            raise ValueError(f"extents {self.extents} do not match d={self.d}")
        if any(L < 1 for L in self.extents):
            raise ValueError(f"extents must be positive, got {self.extents}")
        if self.n_max < 2:
            raise ValueError(f"local truncation must keep at least 2 states, got n_max={self.n_max}")
        if self.t < 0:
            raise ValueError(f"hopping t must be >= 0, got {self.t}")

    @property
    def f(self) -> int:
        """Coordination number of the hypercubic lattice."""
        return 2 * self.d

    @property
    def n_sites(self) -> int:
        return int(np.prod(self.extents))


@dataclass(frozen=True)
class MeanFieldSolution:
    """Converged site problem at a model point."""

    params: ModelParams
    phi: float
    energies: np.ndarray = field(repr=False)  # (n_max,) ascending
    vectors: np.ndarray = field(repr=False)   # (n_max, n_max), columns sign-fixed
    free_energy: float
    iterations: int
    method: str  # "fixed-point" or "scan"


def ladder_operators(n_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Truncated (b, bdag, n) matrices on occupations 0..n_max-1.

    The commutator [b, bdag] equals the identity except in the
    (n_max-1, n_max-1) entry, where truncation forces 1 - n_max.
    """
    if n_max < 2:
        raise ValueError(f"local truncation must keep at least 2 states, got n_max={n_max}")
    root = np.sqrt(np.arange(1, n_max, dtype=float))
    b = np.diag(root, k=1)
    return b, b.T.copy(), np.diag(np.arange(n_max, dtype=float))


def onsite_hamiltonian(params: ModelParams, phi: float) -> np.ndarray:
    """Dense site Hamiltonian h(phi); real symmetric for real phi."""
    b, bdag, num = ladder_operators(params.n_max)
    occ = np.arange(params.n_max, dtype=float)
    h = np.diag(0.5 * occ * (occ - 1.0) - params.mu * occ)
    h -= params.t * phi * (b + bdag)
    return h


def _fix_gauge(energies: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Deterministic eigenvector gauge.

    Each column has its largest-magnitude component made positive. Within
    clusters degenerate to 1e-12 (relative), the basis is rebuilt by
    Gram-Schmidt on Fock-state projections taken in occupation order, so
    exactly degenerate points do not inherit backend-dependent mixing.
    """
    n = len(energies)
    scale = max(abs(energies[0]), abs(energies[-1]), 1.0)
    out = vectors.copy()
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and energies[stop] - energies[stop - 1] <= 1e-12 * scale:
            stop += 1
        if stop - start > 1:
            basis = out[:, start:stop]
            proj = basis @ basis.T
            cols = []
            for fock in range(n):
                cand = proj[:, fock].copy()
                for c in cols:
                    cand -= c * (c @ cand)
                norm = np.linalg.norm(cand)
                if norm > 1e-8:
                    cols.append(cand / norm)
                if len(cols) == stop - start:
                    break
            out[:, start:stop] = np.stack(cols, axis=1)
        start = stop
    for j in range(n):
        lead = np.argmax(np.abs(out[:, j]))
        if out[lead, j] < 0:
            out[:, j] = -out[:, j]
    return out


def solve_onsite(params: ModelParams, phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and gauge-fixed eigenvectors of h(phi)."""
    energies, vectors = np.linalg.eigh(onsite_hamiltonian(params, phi))
    return energies, _fix_gauge(energies, vectors)


def b_dagger_matrix(params: ModelParams, vectors: np.ndarray) -> np.ndarray:
    """B[beta, alpha] = <beta| bdag |alpha> in the eigenbasis; real."""
    _, bdag, _ = ladder_operators(params.n_max)
    return vectors.T @ bdag @ vectors


def _ground(params: ModelParams, phi: float) -> tuple[float, float]:
    """(e0, <b>) for the site problem at amplitude phi."""
    energies, vectors = np.linalg.eigh(onsite_hamiltonian(params, phi))
    g = vectors[:, 0]
    b, _, _ = ladder_operators(params.n_max)
    return float(energies[0]), float(g @ (b @ g))


def free_energy(params: ModelParams, phi: float) -> float:
    """Variational energy per site F(phi) = e0(phi) + t*phi**2."""
    e0, _ = _ground(params, phi)
    return e0 + params.t * phi * phi


def _free_energy_batch(params: ModelParams, phis: np.ndarray) -> np.ndarray:
    b, bdag, _ = ladder_operators(params.n_max)
    occ = np.arange(params.n_max, dtype=float)
    diag = 0.5 * occ * (occ - 1.0) - params.mu * occ
    h = np.diag(diag)[None, :, :] - params.t * phis[:, None, None] * (b + bdag)[None, :, :]
    e0 = np.linalg.eigvalsh(h)[:, 0]
    return e0 + params.t * phis * phis


def _scan_minimum(params: ModelParams, step: float = 1e-3) -> float:
    """Global minimum of F over [0, PHI_SEARCH_MAX] by scan plus refinement.

    The scan localizes the minimum; the root of <b>(phi) - phi fixes it to
    machine precision. A minimum within one scan step of the origin cannot
    be classified by comparing F values (F is flat to roundoff there), so
    the sign of <b>(probe) - probe decides: negative means the map pulls a
    small seed back to zero and the point is Mott.
    """
    phis = np.arange(0.0, PHI_SEARCH_MAX + step, step)
    values = _free_energy_batch(params, phis)
    best = int(np.argmin(values))
    lo = phis[max(best - 1, 0)]
    hi = phis[min(best + 1, len(phis) - 1)]
    res = minimize_scalar(lambda p: free_energy(params, p), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-10})
    phi = float(res.x)

    def h_res(p: float) -> float:
        return _ground(params, p)[1] - p

    if phi < step:
        probe = 1e-2 * step
        if h_res(probe) <= 0.0:
            return 0.0
        lo, hi = probe, step
        f_hi = h_res(hi)
        grow = 0
        while f_hi > 0 and grow < 40 and hi < PHI_SEARCH_MAX:
            hi = min(2.0 * hi, PHI_SEARCH_MAX)
            f_hi = h_res(hi)
            grow += 1
        if f_hi > 0:
            raise BracketError(f"no self-consistent bracket above phi={probe:.3g} "
                               f"at t={params.t}, mu={params.mu}")
        return float(brentq(h_res, lo, hi, xtol=1e-14, rtol=8.9e-16))

    width = max(step, 1e-3 * phi)
    lo, hi = max(phi - width, PHI_ZERO_TOL), phi + width
    f_lo, f_hi = h_res(lo), h_res(hi)
    grow = 0
    while f_lo * f_hi > 0 and grow < 40:
        lo = max(lo - width, 1e-12)
        hi = hi + width
        f_lo, f_hi = h_res(lo), h_res(hi)
        grow += 1
    if f_lo * f_hi > 0:
        raise BracketError(f"no self-consistent bracket near phi={phi:.6g} at t={params.t}, mu={params.mu}")
    return float(brentq(h_res, lo, hi, xtol=1e-14, rtol=8.9e-16))


def self_consistent_phi(params: ModelParams, phi0: float = 0.5, gamma: float = 0.5,
                        tol: float = 1e-12, max_iter: int = 10_000) -> MeanFieldSolution:
    """Solve phi = <ground(phi)| b |ground(phi)> for the site problem.

    Runs the damped fixed-point map phi <- (1-gamma)*phi + gamma*<b> from
    phi0. The map's contraction rate approaches 1 at the lobe boundary, so
    stagnation is projected from the running contraction estimate and, when
    the budget cannot reach `tol`, the solver falls back to a direct scan
    minimization of F refined to a root of <b>(phi) - phi. The phi = 0
    candidate is always evaluated as well and whichever candidate has the
    lower F wins. Amplitudes below 1e-8 are returned as exact zero.

    Returns
    -------
    MeanFieldSolution
        Converged amplitude with the site spectrum at that amplitude.
    """
    candidates: list[tuple[float, float, int, str]] = []
    f_zero = free_energy(params, 0.0)
    candidates.append((f_zero, 0.0, 0, "fixed-point"))

    phi = float(phi0)
    iterations = 0
    prev_delta = None
    stagnated = False
    converged = False
    if params.t > 0 and phi0 > 0:
        for it in range(1, max_iter + 1):
            nxt = (1.0 - gamma) * phi + gamma * _ground(params, phi)[1]
            delta = abs(nxt - phi)
            phi = nxt
            iterations = it
            if delta <= tol:
                converged = True
                break
            if it % 64 == 0:
                if prev_delta is not None and delta > 0:
                    rate = (delta / prev_delta) ** (1.0 / 64.0)
                    if rate >= 1.0:
                        stagnated = True
                        break
                    remaining = np.log(tol / delta) / np.log(rate)
                    if it + remaining > max_iter:
                        stagnated = True
                        break
                prev_delta = delta
    else:
        converged = True
        phi = 0.0

    method = "fixed-point"
    if converged:
        candidates.append((free_energy(params, phi), phi, iterations, "fixed-point"))
    else:
        try:
            phi_scan = _scan_minimum(params)
        except BracketError as exc:
            raise ConvergenceError(f"self-consistency failed at t={params.t}, mu={params.mu}: {exc}",
                                   last_phi=phi) from exc
        method = "scan"
        candidates.append((free_energy(params, phi_scan), phi_scan, iterations, "scan"))

    candidates.sort(key=lambda c: (c[0], abs(c[1])))
    f_best, phi_best, iters, method = candidates[0]
    if abs(phi_best) < PHI_ZERO_TOL:
        phi_best = 0.0
        f_best = f_zero
    energies, vectors = solve_onsite(params, phi_best)
    return MeanFieldSolution(params=params, phi=phi_best, energies=energies, vectors=vectors,
                             free_energy=f_best, iterations=iters, method=method)


def locate_lobe_boundary(params: ModelParams, t_hi: float = 0.4, t_tol: float = 1e-6) -> float:
    """Boundary hopping t_b(mu) of the Mott lobe containing (t=0, mu).

    Bisection on the indicator phi > 0 between t=0 and t_hi. Requires mu
    to sit strictly inside a lobe at t=0 and the superfluid to be reached
    by t_hi, otherwise a BracketError is raised.
    """
    if abs(params.mu - round(params.mu)) < 1e-12:
        raise BracketError(f"mu={params.mu} is degenerate between lobes at t=0")
    if self_consistent_phi(replace(params, t=0.0)).phi != 0.0:
        raise BracketError(f"mu={params.mu} is not inside a Mott lobe at t=0")
    if self_consistent_phi(replace(params, t=t_hi)).phi == 0.0:
        raise BracketError(f"no superfluid found up to t={t_hi} at mu={params.mu}")
    lo, hi = 0.0, t_hi
    while hi - lo > t_tol:
        mid = 0.5 * (lo + hi)
        if self_consistent_phi(replace(params, t=mid)).phi > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def locate_tip(params: ModelParams, lobe: int = 1, mu_tol: float = 1e-5) -> tuple[float, float]:
    """Tip (t_c, mu_c) of a Mott lobe: the mu maximizing t_b(mu)."""
    if lobe < 1:
        raise ValueError(f"lobe index must be >= 1, got {lobe}")
    if params.n_max < lobe + 2:
        raise ValueError(f"n_max={params.n_max} cannot resolve particle excitations of lobe {lobe}")
    lo, hi = lobe - 1 + 1e-4, lobe - 1e-4

    def neg_boundary(mu: float) -> float:
        return -locate_lobe_boundary(replace(params, mu=mu))

    res = minimize_scalar(neg_boundary, bounds=(lo, hi), method="bounded", options={"xatol": mu_tol})
    mu_c = float(res.x)
    return -float(res.fun), mu_c
