"""Symplectic diagonalization of quadratic boson blocks.

Uses the Cholesky route: factor H2 = K^T K, diagonalize the symmetric
K kappa K^T with kappa = diag(+1, -1) per flavor, and assemble the
paranormal transformation from the positive-frequency eigenvectors.
The per-mode squeezing angles come from the singular values of u - v,
where [[u, v], [v, u]] are the blocks of the transformation; with this
convention a single flavor prepared at reference frequency w0 and
diagonalized at frequency w carries theta = 0.5*ln(w/w0).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

OMEGA_TOL = 1e-8
ZERO_MODE_REL = 1e-5
SHIFT_REL = 1e-12


class InstabilityError(RuntimeError):
    """H2 is not positive semidefinite within tolerance at some block."""


@dataclass(frozen=True)
class BogoliubovResult:
    """Normal modes of one fluctuation block.

    omegas holds all n_max - 1 nonnegative frequencies ascending, zero
    modes included. thetas holds the squeezing angles of the nonzero
    modes only, aligned with omegas[zero_count:]. G satisfies
    G^{-1} kappa H2 G = diag(omega, -omega) and G kappa G^T = kappa.
    """

    omegas: np.ndarray
    thetas: np.ndarray
    zero_count: int
    G: np.ndarray = field(repr=False)

    @property
    def n_flavors(self) -> int:
        return len(self.omegas)


def _kappa(m: int) -> np.ndarray:
    return np.concatenate([np.ones(m), -np.ones(m)])


def diagonalize_batch(Ms: np.ndarray, Ps: np.ndarray, omega_tol: float = OMEGA_TOL,
                      want_G: bool = False):
    """Diagonalize a stack of blocks with shared flavor count.

    Parameters
    ----------
    Ms, Ps : ndarray, shape (G, m, m)
        Block matrices; H2 = [[M, P], [P, M]] must be positive definite
        up to gapless points.
    omega_tol : float
        Absolute floor of the zero-mode classifier. The effective
        threshold is max(omega_tol, 1e-5 * max|H2|) per block, wide
        enough to catch Goldstone modes regularized by the Cholesky
        shift, which lifts an exact zero to about sqrt(shift * |H2|).

    Returns
    -------
    omegas : (G, m) ascending nonnegative frequencies.
    thetas : (G, m) squeezing angles aligned with omegas; NaN marks
        zero modes, which carry no angle.
    zero_counts : (G,) int.
    Gs : (G, 2m, 2m) transformations, only if want_G.
    """
    Ms = np.asarray(Ms, dtype=float)
    Ps = np.asarray(Ps, dtype=float)
    nblocks, m, _ = Ms.shape
    H2 = np.empty((nblocks, 2 * m, 2 * m))
    H2[:, :m, :m] = Ms
    H2[:, m:, m:] = Ms
    H2[:, :m, m:] = Ps
    H2[:, m:, :m] = Ps
    H2 = 0.5 * (H2 + np.transpose(H2, (0, 2, 1)))
    hnorm = np.abs(H2).reshape(nblocks, -1).max(axis=1)

    try:
        L = np.linalg.cholesky(H2)
    except np.linalg.LinAlgError:
        shift = SHIFT_REL * hnorm
        H2s = H2 + shift[:, None, None] * np.eye(2 * m)[None, :, :]
        try:
            L = np.linalg.cholesky(H2s)
        except np.linalg.LinAlgError as exc:
            bad = _first_indefinite(H2s)
            raise InstabilityError(f"block {bad} not positive definite after shift; "
                                   f"min eigenvalue {np.linalg.eigvalsh(H2s[bad])[0]:.3e}") from exc

    K = np.transpose(L, (0, 2, 1))
    kap = _kappa(m)
    W = (K * kap[None, None, :]) @ L
    W = 0.5 * (W + np.transpose(W, (0, 2, 1)))
    evals, evecs = np.linalg.eigh(W)

    pair_gap = np.abs(evals + evals[:, ::-1]).max(axis=1)
    bad = pair_gap > 1e-8 * np.maximum(hnorm, 1.0)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise InstabilityError(f"unpaired spectrum at block {i}: residual {pair_gap[i]:.3e}")

    omegas = evals[:, m:]
    upos = evecs[:, :, m:]
    # positive-frequency columns z_i = K^{-1} u_i sqrt(omega_i)
    Z = np.linalg.solve(K, upos)
    Z = Z * np.sqrt(np.maximum(omegas, 0.0))[:, None, :]

    u = Z[:, :m, :]
    v = Z[:, m:, :]
    O, sig, _ = np.linalg.svd(u - v)

    zero_cut = np.maximum(omega_tol, ZERO_MODE_REL * hnorm)
    zero_mask = omegas < zero_cut[:, None]
    zero_counts = zero_mask.sum(axis=1).astype(int)

    thetas = np.full((nblocks, m), np.nan)
    logs = np.log(sig)
    for i in range(nblocks):
        # singular triplets are matched to modes by overlap of the O
        # columns with the flavor content of each eigencolumn
        overlap = np.abs(O[i].T @ u[i])
        rows, cols = linear_sum_assignment(-overlap)
        th = np.empty(m)
        th[cols] = logs[i, rows]
        th[zero_mask[i]] = np.nan
        thetas[i] = th

    if not want_G:
        return omegas, thetas, zero_counts
    Gs = np.empty((nblocks, 2 * m, 2 * m))
    Gs[:, :m, :m] = u
    Gs[:, m:, m:] = u
    Gs[:, :m, m:] = v
    Gs[:, m:, :m] = v
    return omegas, thetas, zero_counts, Gs


def _first_indefinite(H2s: np.ndarray) -> int:
    for i, h in enumerate(H2s):
        try:
            np.linalg.cholesky(h)
        except np.linalg.LinAlgError:
            return i
    return 0


def diagonalize_block(M: np.ndarray, P: np.ndarray, omega_tol: float = OMEGA_TOL) -> BogoliubovResult:
    """Single-block version of diagonalize_batch; returns G as well."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    P = np.atleast_2d(np.asarray(P, dtype=float))
    omegas, thetas, zeros, Gs = diagonalize_batch(M[None], P[None], omega_tol, want_G=True)
    zc = int(zeros[0])
    th = thetas[0]
    return BogoliubovResult(omegas=omegas[0], thetas=th[~np.isnan(th)], zero_count=zc, G=Gs[0])


def frequencies_batch(Ms: np.ndarray, Ps: np.ndarray, omega_tol: float = OMEGA_TOL):
    """Frequencies and zero-mode counts only; skips angle extraction."""
    Ms = np.asarray(Ms, dtype=float)
    Ps = np.asarray(Ps, dtype=float)
    nblocks, m, _ = Ms.shape
    H2 = np.empty((nblocks, 2 * m, 2 * m))
    H2[:, :m, :m] = Ms
    H2[:, m:, m:] = Ms
    H2[:, :m, m:] = Ps
    H2[:, m:, :m] = Ps
    H2 = 0.5 * (H2 + np.transpose(H2, (0, 2, 1)))
    hnorm = np.abs(H2).reshape(nblocks, -1).max(axis=1)
    try:
        L = np.linalg.cholesky(H2)
    except np.linalg.LinAlgError:
        shift = SHIFT_REL * hnorm
        H2 = H2 + shift[:, None, None] * np.eye(2 * m)[None, :, :]
        L = np.linalg.cholesky(H2)
    K = np.transpose(L, (0, 2, 1))
    kap = _kappa(m)
    W = (K * kap[None, None, :]) @ L
    W = 0.5 * (W + np.transpose(W, (0, 2, 1)))
    evals = np.linalg.eigvalsh(W)
    omegas = evals[:, m:]
    zero_cut = np.maximum(omega_tol, ZERO_MODE_REL * hnorm)
    zero_counts = (omegas < zero_cut[:, None]).sum(axis=1).astype(int)
    return omegas, zero_counts


def symplectic_check(G: np.ndarray) -> float:
    """Max-entry residual of G kappa G^T - kappa."""
    m = G.shape[0] // 2
    kap = _kappa(m)
    return float(np.abs((G * kap[None, :]) @ G.T - np.diag(kap)).max())


def similarity_residual(G: np.ndarray, M: np.ndarray, P: np.ndarray, omegas: np.ndarray) -> float:
    """Max-entry residual of G^{-1} kappa H2 G - diag(omega, -omega)."""
    m = G.shape[0] // 2
    kap = _kappa(m)
    top = np.concatenate([M, P], axis=1)
    bot = np.concatenate([P, M], axis=1)
    H2 = np.concatenate([top, bot], axis=0)
    H2 = 0.5 * (H2 + H2.T)
    Ginv = np.diag(kap) @ G.T @ np.diag(kap)
    target = np.concatenate([omegas, -omegas])
    return float(np.abs(Ginv @ (kap[:, None] * H2) @ G - np.diag(target)).max())
