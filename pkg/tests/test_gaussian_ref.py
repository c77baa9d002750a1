"""Closed-form Gaussian references against quadrature oracles."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bhcomplexity.gaussian_ref import (c_kappa_closed, c_kappa_quadrature,
                                       gas_c2_d3, gas_c_kappa_quadrature,
                                       gas_theta, recursion_residual,
                                       two_mode_complexity,
                                       two_mode_ground_shift)

finite = {"allow_nan": False, "allow_infinity": False}


@given(st.floats(-0.99, 0.99, **finite))
@settings(deadline=None, max_examples=60)
def test_two_mode_complexity_conventions(lam):
    c1 = two_mode_complexity(lam, 1.0)
    c2 = two_mode_complexity(lam, 2.0)
    assert c1 == pytest.approx(abs(math.atanh(lam)), rel=1e-14)
    assert c2 == pytest.approx(0.5 * math.atanh(lam) ** 2, rel=1e-14)
    assert two_mode_complexity(-lam, 2.0) == c2


def test_two_mode_domain():
    for bad in (-1.0, 1.0, 1.3):
        with pytest.raises(ValueError):
            two_mode_complexity(bad, 1.0)
        with pytest.raises(ValueError):
            two_mode_ground_shift(bad)
    assert two_mode_ground_shift(0.0) == 0.0
    assert two_mode_ground_shift(0.6) == pytest.approx(0.8 - 1.0, abs=1e-15)


def test_gas_theta_limits():
    assert gas_theta(0.0, 1.0, 1.0) == math.inf
    # large momentum decouples
    assert gas_theta(100.0, 1.0, 1.0) == pytest.approx(1e-4, rel=2e-4)
    with pytest.raises(ValueError):
        gas_theta(1.0, -1.0, 1.0)


@given(st.floats(0.2, 3.0, **finite), st.floats(0.2, 3.0, **finite))
@settings(deadline=None, max_examples=20)
def test_gas_closed_form_matches_quadrature(m, U):
    closed = gas_c2_d3(m, U)
    quad = gas_c_kappa_quadrature(m, U, 2.0)
    assert closed == pytest.approx(quad, rel=1e-10)


def test_gas_closed_form_scaling():
    # pure power: c2 scales as (mU)^{3/2}
    assert gas_c2_d3(2.0, 1.0) == pytest.approx(gas_c2_d3(1.0, 2.0), rel=1e-15)
    assert gas_c2_d3(4.0, 1.0) == pytest.approx(8.0 * gas_c2_d3(1.0, 1.0), rel=1e-12)


def test_scalar_closed_vs_quadrature_exact_cases():
    for d, kappa in ((2, 1.0), (2, 2.0), (3, 1.0)):
        for m in (0.0, 0.05, 0.3, 0.6, 0.9, 0.95):
            closed = c_kappa_closed(kappa, m, 1.0, d)
            quad = c_kappa_quadrature(kappa, m, 1.0, d)
            assert closed == pytest.approx(quad, rel=1e-8, abs=1e-14), (d, kappa, m)


def test_scalar_d3_k2_expansion_accuracy():
    # small-mass expansion through m^3 ln m^2: error is O(m^4)
    for m in (0.01, 0.05, 0.1):
        closed = c_kappa_closed(2.0, m, 1.0, 3)
        quad = c_kappa_quadrature(2.0, m, 1.0, 3)
        assert abs(closed - quad) <= 0.2 * m ** 4 + 1e-12
    assert c_kappa_closed(2.0, 0.01, 1.0, 3) == pytest.approx(
        c_kappa_quadrature(2.0, 0.01, 1.0, 3), rel=1e-4)


def test_scalar_massless_values():
    # m = 0 reduces to int_0^w0 p^{d-1} |ln(p/w0)|^kappa dp in closed form
    w0 = 1.3
    assert c_kappa_closed(1.0, 0.0, w0, 2) == pytest.approx(w0 ** 2 / (8 * math.pi), rel=1e-14)
    assert c_kappa_closed(2.0, 0.0, w0, 2) == pytest.approx(w0 ** 2 / (16 * math.pi), rel=1e-14)
    assert c_kappa_closed(1.0, 0.0, w0, 3) == pytest.approx(w0 ** 3 / (18 * math.pi ** 2), rel=1e-14)
    assert c_kappa_closed(2.0, 0.0, w0, 3) == pytest.approx(w0 ** 3 / (54 * math.pi ** 2), rel=1e-14)


def test_scalar_edge_of_window_is_zero():
    # m = w0 leaves no momenta below the reference frequency
    assert c_kappa_closed(1.0, 1.0, 1.0, 2) == pytest.approx(0.0, abs=1e-14)
    assert c_kappa_quadrature(2.0, 1.0, 1.0, 3) == 0.0


def test_scalar_domain_checks():
    with pytest.raises(ValueError):
        c_kappa_closed(1.0, 1.5, 1.0, 2)
    with pytest.raises(ValueError):
        c_kappa_closed(1.0, 0.1, -1.0, 2)
    with pytest.raises(ValueError):
        c_kappa_closed(3.0, 0.1, 1.0, 2)  # no closed form for kappa=3


@given(st.floats(0.0, 0.8, **finite))
@settings(deadline=None, max_examples=20)
def test_mass_monotonicity(m):
    # heavier field: narrower window and smaller angles
    base = c_kappa_closed(1.0, m, 1.0, 2)
    above = c_kappa_closed(1.0, m + 0.1, 1.0, 2)
    assert above <= base + 1e-14


def test_kappa_recursion():
    # c_{k-1} = (2 w0 / k) d c_k / d w0, checked by central difference
    for m in (0.0, 0.2, 0.5):
        assert abs(recursion_residual(2.0, m, 1.0, 2)) <= 1e-6
    # d=3 closed c2 is an expansion, so check its recursion on the
    # quadrature path (plus the massless case, where the form is exact)
    assert abs(recursion_residual(2.0, 0.0, 1.0, 3)) <= 1e-6
    assert abs(recursion_residual(2.0, 0.3, 1.0, 3, use_closed=False)) <= 1e-6
    assert abs(recursion_residual(2.0, 0.3, 1.0, 2, use_closed=False)) <= 1e-6
