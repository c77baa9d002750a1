"""Quadratic fluctuation blocks on top of the mean-field ground state.

For each momentum the n_max - 1 excited site levels carry one bosonic
flavor. The fluctuation Hamiltonian couples flavors only through the
single-particle form factor eta(k), via the bdag matrix elements between
the ground level and the excited levels:

    M[a, b] = (e_a - e_0) delta_ab - t*eta*(w_a w_b + v_a v_b)
    P[a, b] = -t*eta*(v_a w_b + v_b w_a)

with w_a = <a| bdag |0> and v_a = <0| bdag |a>. The 2(n_max-1) square
one-particle form is H2 = [[M, P], [P, M]], real symmetric.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .onsite import MeanFieldSolution, b_dagger_matrix


@dataclass(frozen=True)
class ModeBlock:
    """Fluctuation block at one value of the form factor."""

    eta: float
    M: np.ndarray = field(repr=False)
    P: np.ndarray = field(repr=False)

    @property
    def n_flavors(self) -> int:
        return self.M.shape[0]

    def h2(self) -> np.ndarray:
        """Assembled one-particle form, symmetrized once."""
        top = np.concatenate([self.M, self.P], axis=1)
        bot = np.concatenate([self.P, self.M], axis=1)
        h = np.concatenate([top, bot], axis=0)
        return 0.5 * (h + h.T)


def coupling_vectors(solution: MeanFieldSolution) -> tuple[np.ndarray, np.ndarray]:
    """(w, v) columns of the bdag matrix linking ground to excited levels."""
    B = b_dagger_matrix(solution.params, solution.vectors)
    return B[1:, 0].copy(), B[0, 1:].copy()


def build_block(solution: MeanFieldSolution, eta_value: float) -> ModeBlock:
    """Single ModeBlock; see build_blocks for the batched version."""
    Ms, Ps = build_blocks(solution, np.asarray([eta_value], dtype=float))
    return ModeBlock(eta=float(eta_value), M=Ms[0], P=Ps[0])


def build_blocks(solution: MeanFieldSolution, etas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Stacked (G, m, m) M and P arrays for each eta in `etas`."""
    params = solution.params
    w, v = coupling_vectors(solution)
    gaps = solution.energies[1:] - solution.energies[0]
    m = params.n_max - 1
    if np.any(gaps <= 0):
        raise ValueError(f"degenerate site ground state at t={params.t}, mu={params.mu}")
    ww = np.outer(w, w) + np.outer(v, v)
    vw = np.outer(v, w)
    pw = vw + vw.T
    etas = np.asarray(etas, dtype=float)
    scale = params.t * etas[:, None, None]
    Ms = np.diag(gaps)[None, :, :] - scale * ww[None, :, :]
    Ps = -scale * pw[None, :, :]
    return Ms, Ps
