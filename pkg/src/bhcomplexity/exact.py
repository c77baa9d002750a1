"""Dense exact diagonalization on tiny lattices.

Brute-force ground states of the full many-body Hamiltonian

    H = -J sum_<ij> (b_i^dag b_j + h.c.) + sum_i [n_i(n_i-1)/2 - mu*n_i]

in units U = 1, J = t/f, used to validate the mean-field-plus-fluctuations
pipeline where the full Hilbert space still fits in memory.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bogoliubov import frequencies_batch
from .lattice import eta, make_grid
from .onsite import ModelParams, ladder_operators, self_consistent_phi
from .quadratic import build_blocks

DIM_CAP = 10_000

_GEOMETRIES = ("chain", "plaquette")


@dataclass(frozen=True)
class SmallLatticeSpec:
    """Periodic chain of 2..4 sites or the 2x2 plaquette, with n_max local
    Fock states per site. Wrap-around bonds are kept, so the 2-site chain
    and the plaquette carry doubled bonds and the coordination stays f."""

    sites: int
    n_max: int
    t: float
    mu: float
    geometry: str = "chain"

    def __post_init__(self):
        if self.geometry not in _GEOMETRIES:
            raise ValueError(f"geometry must be one of {_GEOMETRIES}, got {self.geometry!r}")
        if self.geometry == "plaquette" and self.sites != 4:
            raise ValueError("plaquette geometry requires sites=4")
        if not 2 <= self.sites <= 4:
            raise ValueError(f"sites must be in 2..4, got {self.sites}")
        if not 2 <= self.n_max <= 6:
            raise ValueError(f"n_max must be in 2..6, got {self.n_max}")
        if self.t < 0:
            raise ValueError(f"hopping must be nonnegative, got {self.t}")
        if self.n_max ** self.sites > DIM_CAP:
            raise ValueError(f"Hilbert dimension {self.n_max ** self.sites} exceeds {DIM_CAP}")

    @property
    def f(self) -> int:
        return 4 if self.geometry == "plaquette" else 2

    @property
    def dimension(self) -> int:
        return self.n_max ** self.sites

    def bonds(self) -> list[tuple[int, int]]:
        """Directed neighbor list (i, i+e) with periodic wrap; each entry
        contributes one -J(b_i^dag b_j + h.c.) term, so short cycles show
        up as repeated pairs."""
        if self.geometry == "chain":
            return [(i, (i + 1) % self.sites) for i in range(self.sites)]
        # plaquette sites laid out row-major on a 2x2 torus
        out = []
        for r in range(2):
            for c in range(2):
                i = 2 * r + c
                out.append((i, 2 * r + (c + 1) % 2))
                out.append((i, 2 * ((r + 1) % 2) + c))
        return out

    def model_params(self) -> ModelParams:
        if self.geometry == "chain":
            return ModelParams(d=1, extents=(self.sites,), n_max=self.n_max,
                               t=self.t, mu=self.mu)
        return ModelParams(d=2, extents=(2, 2), n_max=self.n_max, t=self.t, mu=self.mu)


@dataclass(frozen=True)
class ExactResult:
    spec: SmallLatticeSpec
    energy: float
    vector: np.ndarray
    b_expectations: np.ndarray
    two_point: np.ndarray


@dataclass(frozen=True)
class EnergyComparison:
    spec: SmallLatticeSpec
    exact: float
    mean_field: float
    quadratic: float

    @property
    def mean_field_error(self) -> float:
        return abs(self.mean_field - self.exact) / abs(self.exact)

    @property
    def quadratic_error(self) -> float:
        return abs(self.quadratic - self.exact) / abs(self.exact)


def _site_operator(op: np.ndarray, site: int, spec: SmallLatticeSpec) -> np.ndarray:
    mats = [op if i == site else np.eye(spec.n_max) for i in range(spec.sites)]
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def build_hamiltonian(spec: SmallLatticeSpec) -> np.ndarray:
    b, bdag, nop = ladder_operators(spec.n_max)
    onsite = 0.5 * nop @ (nop - np.eye(spec.n_max)) - spec.mu * nop
    J = spec.t / spec.f
    H = np.zeros((spec.dimension, spec.dimension))
    for i in range(spec.sites):
        H += _site_operator(onsite, i, spec)
    for i, j in spec.bonds():
        hop = _site_operator(bdag, i, spec) @ _site_operator(b, j, spec)
        H -= J * (hop + hop.T)
    return H


def total_number(spec: SmallLatticeSpec) -> np.ndarray:
    _, _, nop = ladder_operators(spec.n_max)
    N = np.zeros((spec.dimension, spec.dimension))
    for i in range(spec.sites):
        N += _site_operator(nop, i, spec)
    return N


def exact_ground_state(spec: SmallLatticeSpec) -> ExactResult:
    H = build_hamiltonian(spec)
    asym = np.abs(H - H.T).max()
    if asym > 1e-12:
        raise RuntimeError(f"assembled Hamiltonian asymmetric by {asym:.2e}")
    energies, vectors = np.linalg.eigh(H)
    vec = vectors[:, 0]
    if vec[np.argmax(np.abs(vec))] < 0:
        vec = -vec
    b, bdag, _ = ladder_operators(spec.n_max)
    b_site = [_site_operator(b, i, spec) for i in range(spec.sites)]
    b_exp = np.array([vec @ Bi @ vec for Bi in b_site])
    two_point = np.empty((spec.sites, spec.sites))
    for i in range(spec.sites):
        bi_vec = _site_operator(bdag, i, spec).T @ vec
        for j in range(spec.sites):
            two_point[i, j] = bi_vec @ (b_site[j] @ vec)
    return ExactResult(spec=spec, energy=float(energies[0]), vector=vec,
                       b_expectations=b_exp, two_point=two_point)


def quadratic_ground_energy(spec: SmallLatticeSpec) -> tuple[float, float]:
    """(mean-field energy, mean-field + zero-point energy) for spec's lattice.

    The correction is (1/2) sum_k [sum_a omega_a(k) - tr M(k)], the shift
    picked up when the quadratic form is brought to diagonal mode form.
    """
    params = spec.model_params()
    solution = self_consistent_phi(params)
    n = params.n_sites
    e_mf = n * solution.free_energy
    grid = make_grid(params.extents)
    etas = eta(grid)
    Ms, Ps = build_blocks(solution, etas)
    omegas, _ = frequencies_batch(Ms, Ps)
    shift = 0.5 * (omegas.sum() - np.trace(Ms, axis1=1, axis2=2).sum())
    return float(e_mf), float(e_mf + shift)


def compare_energy(spec: SmallLatticeSpec) -> EnergyComparison:
    exact = exact_ground_state(spec)
    e_mf, e_quad = quadratic_ground_energy(spec)
    return EnergyComparison(spec=spec, exact=exact.energy,
                            mean_field=e_mf, quadratic=e_quad)
