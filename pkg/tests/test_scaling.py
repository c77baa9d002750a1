"""Fit machinery on synthetic data, plus small real scans."""
import numpy as np
import pytest

from bhcomplexity.onsite import ModelParams
from bhcomplexity.scaling import (DEFAULT_WINDOWS, FitSpec, dispersion_exponent,
                                  fit_scaling, gap_scan, nu_consistency)
from conftest import MUC, TC

XC = 0.5
REF = 0.26


def two_sided_grid():
    a = np.linspace(1e-3, 3e-2, 40)
    return np.concatenate([XC - a[::-1], XC + a])


def deficit_series(model, coeffs):
    xs = two_sided_grid()
    a = np.abs(xs - XC)
    if model == "log1":
        deficit = coeffs["v"] * (-a * np.log(a))
    elif model == "log2":
        deficit = coeffs["v"] * a * np.log(a) ** 2
    elif model == "quad":
        deficit = coeffs["D"] * a ** 2
    elif model == "power32":
        deficit = coeffs["a"] * a + coeffs["b"] * a ** 1.5
    else:
        raise AssertionError(model)
    return xs, REF - deficit


@pytest.mark.parametrize("model,coeffs", [
    ("log1", {"v": 0.6968}),
    ("log2", {"v": 0.1467}),
    ("quad", {"D": 11.3}),
    ("power32", {"a": 1.418, "b": -5.776}),
])
def test_exact_recovery(model, coeffs):
    xs, cs = deficit_series(model, coeffs)
    for side in ("below", "above"):
        spec = FitSpec(model=model, critical_value=XC, side=side,
                       window=(2e-3, 2e-2), reference_value=REF)
        res = fit_scaling(xs, cs, spec)
        for name, val in coeffs.items():
            assert res.coefficients[name] == pytest.approx(val, rel=1e-9), (model, side)
        assert res.rms < 1e-12
        assert res.stderr[max(coeffs)] < 1e-9


def test_purepow_recovery():
    xs = two_sided_grid()
    a = np.abs(xs - XC)
    cs = 2.3 * a ** 0.5
    res = fit_scaling(xs, cs, FitSpec(model="purepow", critical_value=XC,
                                      side="below", window=(1e-3, 3e-2)))
    assert res.coefficients["A"] == pytest.approx(2.3, rel=1e-10)
    assert res.coefficients["p"] == pytest.approx(0.5, abs=1e-10)
    check = nu_consistency(res, d=1, nu=0.5)
    assert check["difference"] == pytest.approx(0.0, abs=1e-9)
    assert check["expected"] == 0.5


def test_side_and_window_selection():
    xs, cs = deficit_series("quad", {"D": 4.0})
    # poison the above side; a below fit must not see it
    cs = cs.copy()
    cs[xs > XC] = 99.0
    spec = FitSpec(model="quad", critical_value=XC, side="below",
                   window=(5e-3, 1e-2), reference_value=REF)
    res = fit_scaling(xs, cs, spec)
    assert res.coefficients["D"] == pytest.approx(4.0, rel=1e-10)
    a = np.abs(xs - XC)
    expected_n = int(((a >= 5e-3) & (a <= 1e-2) & (xs < XC)).sum())
    assert res.n_points == expected_n


def test_fit_validation_errors():
    xs, cs = deficit_series("quad", {"D": 4.0})
    with pytest.raises(ValueError):
        FitSpec(model="cubic", critical_value=XC)
    with pytest.raises(ValueError):
        FitSpec(model="quad", critical_value=XC, side="sideways")
    with pytest.raises(ValueError):
        FitSpec(model="quad", critical_value=XC, window=(1e-2, 1e-3))
    with pytest.raises(ValueError):
        fit_scaling(xs, cs, FitSpec(model="quad", critical_value=XC))  # no reference
    with pytest.raises(ValueError):
        fit_scaling(xs, cs, FitSpec(model="quad", critical_value=XC,
                                    window=(0.5, 0.6), reference_value=REF))
    with pytest.raises(ValueError):
        fit_scaling(xs, -cs, FitSpec(model="purepow", critical_value=XC,
                                     window=(1e-3, 3e-2)))


def test_default_windows_defined_for_both_dimensions():
    assert set(DEFAULT_WINDOWS) == {2, 3}
    for lo, hi in DEFAULT_WINDOWS.values():
        assert 0 < lo < hi


def test_gap_scan_phases():
    p = ModelParams(d=2, extents=(20, 20), n_max=5, t=0.1, mu=MUC)
    rows = gap_scan(p, "t", np.array([0.10, 0.14, 0.20]))
    assert [r["t"] for r in rows] == [0.10, 0.14, 0.20]
    assert all(r["mu"] == MUC for r in rows)
    # Mott gap shrinks toward the tip
    assert rows[0]["gap"] > rows[1]["gap"] > 0
    assert rows[0]["zero_modes"] == rows[1]["zero_modes"] == 0
    assert rows[0]["phi"] == rows[1]["phi"] == 0.0
    # superfluid point carries the Goldstone zero at the zone center
    assert rows[2]["phi"] > 0
    assert rows[2]["zero_modes"] == 1
    assert rows[2]["gap"] > 0  # smallest nonzero mode, not the Goldstone
    with pytest.raises(ValueError):
        gap_scan(p, "phi", np.array([0.1]))


def test_dispersion_exponent_superfluid_sound():
    p = ModelParams(d=2, extents=(30, 30), n_max=5, t=0.20, mu=MUC)
    k_lo = 2 * np.pi / 30
    res = dispersion_exponent(p, flavor=0, k_window=(0.9 * k_lo, 6.2 * k_lo))
    assert res.coefficients["p"] == pytest.approx(1.0, abs=0.12)
    assert res.n_points >= 4


def test_dispersion_exponent_needs_points():
    p = ModelParams(d=2, extents=(20, 20), n_max=5, t=0.15, mu=MUC)
    with pytest.raises(ValueError):
        dispersion_exponent(p, flavor=0, k_window=(0.1, 0.2))
