"""Momentum grids for periodic hypercubic lattices.

Momenta are stored as integer index vectors m with k_j = 2*pi*m_j/L_j.
Keeping the integers around makes k <-> -k pairing exact: the hopping
form factor eta is always evaluated from the folded index min(m, L-m),
so eta(k) and eta(-k) are the same float, bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class MomentumGrid:
    """Full Brillouin-zone grid in lexicographic index order."""

    extents: tuple[int, ...]
    indices: np.ndarray = field(repr=False)  # (N, d) int array

    @property
    def d(self) -> int:
        return len(self.extents)

    @property
    def n_sites(self) -> int:
        return int(np.prod(self.extents))

    def k_values(self) -> np.ndarray:
        """Real momenta, shape (N, d), components in [0, 2*pi)."""
        ext = np.asarray(self.extents, dtype=float)
        return 2.0 * np.pi * self.indices / ext

    def negate(self) -> np.ndarray:
        """Index array of -k for each grid point (mod extents)."""
        ext = np.asarray(self.extents, dtype=np.int64)
        return (-self.indices) % ext

    def self_conjugate_mask(self) -> np.ndarray:
        """True where k = -k mod 2*pi in every component."""
        ext = np.asarray(self.extents, dtype=np.int64)
        return np.all((2 * self.indices) % ext == 0, axis=1)


def make_grid(extents: tuple[int, ...] | list[int]) -> MomentumGrid:
    """Build the full grid over prod(extents) momenta.

    Parameters
    ----------
    extents : sequence of int
        Lattice side lengths (L_1, ..., L_d), each >= 1.
    """
    ext = tuple(int(L) for L in extents)
    if len(ext) == 0 or any(L < 1 for L in ext):
        raise ValueError(f"extents must be positive integers, got {extents}")
    axes = [np.arange(L, dtype=np.int64) for L in ext]
    mesh = np.meshgrid(*axes, indexing="ij")
    idx = np.stack([m.ravel() for m in mesh], axis=1)
    return MomentumGrid(extents=ext, indices=idx)


def eta(grid: MomentumGrid, indices: np.ndarray | None = None) -> np.ndarray:
    """Hopping form factor (1/d) * sum_j cos(k_j) for each grid point.

    Evaluated from folded indices so that eta(-k) == eta(k) exactly.
    """
    idx = grid.indices if indices is None else np.atleast_2d(np.asarray(indices, dtype=np.int64))
    ext = np.asarray(grid.extents, dtype=np.int64)
    folded = np.minimum(idx % ext, ext - (idx % ext))
    angles = 2.0 * np.pi * folded / ext
    return np.cos(angles).sum(axis=1) / len(grid.extents)


def eta_groups(grid: MomentumGrid) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Distinct eta values with multiplicities.

    Returns (values ascending, inverse index (N,), counts). Grouping is by
    exact float equality, which is what makes whole-zone sums cheap: the
    fluctuation block at k depends on k only through eta.
    """
    values, inverse, counts = np.unique(eta(grid), return_inverse=True, return_counts=True)
    return values, inverse, counts


def k_path(grid: MomentumGrid, vertices: list[tuple[float, ...]], samples_per_segment: int = 100) -> np.ndarray:
    """Grid-snapped path through the zone.

    Interpolates each segment with `samples_per_segment` points (endpoints
    included), rounds every point to the nearest grid momentum, and drops
    consecutive duplicates. Returns the (P, d) integer index array.
    """
    if len(vertices) < 2:
        raise ValueError("need at least two path vertices")
    if samples_per_segment < 2:
        raise ValueError("need at least two samples per segment")
    ext = np.asarray(grid.extents, dtype=np.int64)
    pts: list[np.ndarray] = []
    for a, b in zip(vertices[:-1], vertices[1:]):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        if a.shape != (grid.d,) or b.shape != (grid.d,):
            raise ValueError("path vertices must have one component per dimension")
        frac = np.linspace(0.0, 1.0, samples_per_segment)[:, None]
        seg = a[None, :] * (1 - frac) + b[None, :] * frac
        snapped = np.rint(seg * ext / (2.0 * np.pi)).astype(np.int64) % ext
        pts.append(snapped)
    path = np.concatenate(pts, axis=0)
    keep = np.ones(len(path), dtype=bool)
    keep[1:] = np.any(path[1:] != path[:-1], axis=1)
    return path[keep]


def path_coordinate(grid: MomentumGrid, path_indices: np.ndarray) -> np.ndarray:
    """Cumulative arc length along a snapped path, for plotting axes."""
    ext = np.asarray(grid.extents, dtype=float)
    ks = 2.0 * np.pi * path_indices / ext
    steps = np.linalg.norm(np.diff(ks, axis=0), axis=1)
    return np.concatenate([[0.0], np.cumsum(steps)])
