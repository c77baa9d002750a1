"""Critical-scaling fits: gap closure, dispersion exponents, and the
growth of the complexity deficit toward a lobe tip.

Every model is linear in its coefficients; purepow is fitted linearly in
log-log space. Data windows are |delta| in [lo, hi] with delta measured
from the critical value, one side at a time.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import bogoliubov, lattice, quadratic
from .onsite import ModelParams, self_consistent_phi

DEFAULT_WINDOWS = {2: (2e-3, 2e-2), 3: (5e-3, 5e-2)}

_MODELS = ("log1", "log2", "quad", "power32", "purepow")


@dataclass(frozen=True)
class FitSpec:
    """What to fit: model, side of the critical point, and window."""

    model: str
    critical_value: float
    side: str = "below"  # "below" or "above"
    window: tuple[float, float] = (2e-3, 2e-2)
    reference_value: float | None = None  # value at the critical point

    def __post_init__(self):
        if self.model not in _MODELS:
            raise ValueError(f"unknown model {self.model!r}; choose from {_MODELS}")
        if self.side not in ("below", "above"):
            raise ValueError(f"side must be 'below' or 'above', got {self.side!r}")
        lo, hi = self.window
        if not (0 < lo < hi):
            raise ValueError(f"window must satisfy 0 < lo < hi, got {self.window}")


@dataclass(frozen=True)
class FitResult:
    model: str
    side: str
    coefficients: dict[str, float]
    stderr: dict[str, float]
    rms: float
    n_points: int


def _design(model: str, delta: np.ndarray) -> tuple[np.ndarray, list[str]]:
    a = np.abs(delta)
    if model == "log1":
        return (-a * np.log(a))[:, None], ["v"]
    if model == "log2":
        return (a * np.log(a) ** 2)[:, None], ["v"]
    if model == "quad":
        return (a ** 2)[:, None], ["D"]
    if model == "power32":
        return np.column_stack([a, a ** 1.5]), ["a", "b"]
    raise ValueError(model)


def fit_scaling(xs: np.ndarray, cs: np.ndarray, spec: FitSpec) -> FitResult:
    """Least-squares fit of the deficit reference_value - c against the
    chosen basis (purepow fits c itself, log-log)."""
    xs = np.asarray(xs, dtype=float)
    cs = np.asarray(cs, dtype=float)
    delta = xs - spec.critical_value
    lo, hi = spec.window
    keep = (np.abs(delta) >= lo) & (np.abs(delta) <= hi)
    keep &= (delta < 0) if spec.side == "below" else (delta > 0)
    delta, y = delta[keep], cs[keep]
    if len(delta) < 2:
        raise ValueError(f"only {len(delta)} points inside window {spec.window} on side {spec.side}")

    if spec.model == "purepow":
        if np.any(y <= 0):
            raise ValueError("purepow requires positive data")
        X = np.column_stack([np.ones(len(delta)), np.log(np.abs(delta))])
        target = np.log(y)
        names = ["lnA", "p"]
    else:
        if spec.reference_value is None:
            raise ValueError(f"model {spec.model} needs reference_value at the critical point")
        X, names = _design(spec.model, delta)
        target = spec.reference_value - y

    coef, _, _, _ = np.linalg.lstsq(X, target, rcond=None)
    resid = target - X @ coef
    dof = max(len(delta) - len(names), 1)
    sigma2 = float(resid @ resid) / dof
    cov = sigma2 * np.linalg.inv(X.T @ X)
    coefficients = {n: float(c) for n, c in zip(names, coef)}
    stderr = {n: float(np.sqrt(cov[i, i])) for i, n in enumerate(names)}
    if spec.model == "purepow":
        coefficients["A"] = float(np.exp(coefficients.pop("lnA")))
        stderr["A"] = coefficients["A"] * stderr.pop("lnA")
    return FitResult(model=spec.model, side=spec.side, coefficients=coefficients,
                     stderr=stderr, rms=float(np.sqrt(np.mean(resid ** 2))), n_points=len(delta))


def gap_scan(params: ModelParams, axis: str, values: np.ndarray) -> list[dict]:
    """Smallest nonzero frequency over the zone along a parameter scan."""
    if axis not in ("t", "mu"):
        raise ValueError(f"axis must be 't' or 'mu', got {axis!r}")
    grid = lattice.make_grid(params.extents)
    etas, _, _ = lattice.eta_groups(grid)
    out = []
    for v in values:
        point = replace(params, **{axis: float(v)})
        sol = self_consistent_phi(point)
        Ms, Ps = quadratic.build_blocks(sol, etas)
        omegas, zero_counts = bogoliubov.frequencies_batch(Ms, Ps)
        mask = np.ones_like(omegas, dtype=bool)
        for i, zc in enumerate(zero_counts):
            mask[i, :zc] = False
        gap = float(omegas[mask].min())
        out.append({"value": float(v), "t": point.t, "mu": point.mu,
                    "gap": gap, "zero_modes": int(zero_counts.sum()), "phi": sol.phi})
    return out


def dispersion_exponent(params: ModelParams, flavor: int,
                        k_window: tuple[float, float]) -> FitResult:
    """Small-k exponent z of omega_flavor along the axis cut k = (0,...,k_d).

    Log-log least squares over grid momenta with |k| inside k_window;
    requires at least 4 such points.
    """
    grid = lattice.make_grid(params.extents)
    L = params.extents[-1]
    ms = np.arange(1, L // 2 + 1)
    ks = 2.0 * np.pi * ms / L
    keep = (ks >= k_window[0]) & (ks <= k_window[1])
    if keep.sum() < 4:
        raise ValueError(f"window {k_window} holds {int(keep.sum())} cut momenta; need at least 4")
    ms, ks = ms[keep], ks[keep]
    idx = np.zeros((len(ms), params.d), dtype=np.int64)
    idx[:, -1] = ms
    etas = lattice.eta(grid, idx)
    sol = self_consistent_phi(params)
    Ms, Ps = quadratic.build_blocks(sol, etas)
    omegas, zero_counts = bogoliubov.frequencies_batch(Ms, Ps)
    if np.any(zero_counts > 0):
        raise ValueError("zero mode inside the fit window; shrink k_window")
    w = omegas[:, flavor]
    X = np.column_stack([np.ones(len(ks)), np.log(ks)])
    coef, _, _, _ = np.linalg.lstsq(X, np.log(w), rcond=None)
    resid = np.log(w) - X @ coef
    dof = max(len(ks) - 2, 1)
    cov = (float(resid @ resid) / dof) * np.linalg.inv(X.T @ X)
    return FitResult(model="purepow", side="above",
                     coefficients={"A": float(np.exp(coef[0])), "p": float(coef[1])},
                     stderr={"A": float(np.exp(coef[0]) * np.sqrt(cov[0, 0])),
                             "p": float(np.sqrt(cov[1, 1]))},
                     rms=float(np.sqrt(np.mean(resid ** 2))), n_points=len(ks))


def nu_consistency(purepow_fit: FitResult, d: int, nu: float = 0.5) -> dict[str, float]:
    """Compare a fitted pure-power exponent against nu*d."""
    p_hat = purepow_fit.coefficients["p"]
    expected = nu * d
    return {"p_hat": p_hat, "expected": expected, "difference": p_hat - expected,
            "stderr": purepow_fit.stderr["p"]}
