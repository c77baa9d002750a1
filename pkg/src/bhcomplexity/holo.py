"""Volume-conjecture toy model: complexity deficit of a capped AdS throat.

The wall sits at radial position set by the correlation length xi, and the
deficit relative to the uncapped slice is

    dC_V = sigma_d * L**d / (d * G_N) * xi**(-d).

With xi = |delta_t|**(-nu) this is a pure power |delta_t|**(nu*d).
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class HoloParams:
    """Capped-geometry inputs. Give either xi directly or delta_t, from
    which xi = |delta_t|**(-nu) is derived."""

    d: int
    L: float = 1.0
    G_N: float = 1.0
    sigma_d: float = 1.0
    xi: float | None = None
    nu: float = 0.5
    delta_t: float | None = None

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"boundary dimension must be >= 1, got {self.d}")
        for name in ("L", "G_N", "sigma_d", "nu"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.xi is None and self.delta_t is None:
            raise ValueError("give either xi or delta_t")
        if self.delta_t is not None and self.delta_t == 0:
            raise ValueError("delta_t must be nonzero")
        if self.xi is not None and self.xi <= 0:
            raise ValueError(f"xi must be positive, got {self.xi}")

    @property
    def wall_position(self) -> float:
        if self.xi is not None:
            return self.xi
        return abs(self.delta_t) ** (-self.nu)


def cv_delta(p: HoloParams) -> float:
    """Volume deficit dC_V at the wall position of p."""
    xi = p.wall_position
    if math.isinf(xi):
        return 0.0
    return p.sigma_d * p.L ** p.d / (p.d * p.G_N) * xi ** (-p.d)


def detuning_exponent(p: HoloParams) -> float:
    """Exponent of |delta_t| implied by xi = |delta_t|**(-nu)."""
    return p.nu * p.d


def gaussian_comparison_table(p: HoloParams, delta_ts) -> list[dict[str, float]]:
    """Rows comparing dC_V(|delta_t|) against |delta_t|*ln(1/|delta_t|), the
    leading lattice term at d = 2, nu = 1/2. The toy model carries no log, so
    the ratio drifts logarithmically; the table documents this rather than
    gating on it."""
    rows = []
    for dt in delta_ts:
        if dt == 0:
            raise ValueError("delta_t must be nonzero")
        q = HoloParams(d=p.d, L=p.L, G_N=p.G_N, sigma_d=p.sigma_d,
                       nu=p.nu, delta_t=float(dt))
        cv = cv_delta(q)
        lattice = abs(dt) * math.log(1.0 / abs(dt)) if abs(dt) < 1 else abs(dt)
        rows.append({
            "delta_t": float(dt),
            "xi": q.wall_position,
            "cv_delta": cv,
            "lattice_leading": lattice,
            "ratio": cv / lattice if lattice != 0 else math.inf,
        })
    return rows
