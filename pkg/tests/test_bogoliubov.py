"""Symplectic diagonalization against closed-form oracles.

Every numeric expectation here is derived independently of the module:
free-field blocks, the two-mode squeezed pair, and the analytically
solvable two-flavor block with diagonal M and off-diagonal P.
"""
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bhcomplexity.bogoliubov import (InstabilityError, diagonalize_batch,
                                     diagonalize_block, frequencies_batch,
                                     similarity_residual, symplectic_check)
from bhcomplexity.gaussian_ref import two_mode_complexity

finite = {"allow_nan": False, "allow_infinity": False}


def free_field_block(w, w0):
    M = np.array([[(w0 * w0 + w * w) / (2.0 * w0)]])
    P = np.array([[(w * w - w0 * w0) / (2.0 * w0)]])
    return M, P


@given(st.floats(0.05, 20.0, **finite), st.floats(0.05, 20.0, **finite))
@settings(deadline=None, max_examples=80)
def test_free_field_oracle(w, w0):
    M, P = free_field_block(w, w0)
    res = diagonalize_block(M, P)
    assert res.zero_count == 0
    assert res.omegas[0] == pytest.approx(w, rel=1e-10)
    assert res.thetas[0] == pytest.approx(0.5 * math.log(w / w0), abs=1e-10)


@given(st.floats(0.1, 5.0, **finite), st.floats(-0.95, 0.95, **finite))
@settings(deadline=None, max_examples=80)
def test_single_flavor_pair_coupling(a, lam):
    res = diagonalize_block(np.array([[a]]), np.array([[lam * a]]))
    assert res.omegas[0] == pytest.approx(a * math.sqrt(1.0 - lam * lam), rel=1e-9)
    assert res.thetas[0] == pytest.approx(0.5 * math.atanh(lam), abs=1e-9)


@given(st.floats(0.1, 5.0, **finite), st.floats(-0.9, 0.9, **finite))
@settings(deadline=None, max_examples=60)
def test_two_mode_pair_matches_closed_complexity(a, lam):
    # a +k/-k pair with equal diagonals decouples into symmetric and
    # antisymmetric flavors carrying +-atanh(lam)/2; their kappa-sums must
    # equal the closed two-mode complexity for both kappa conventions
    M = np.diag([a, a])
    P = np.array([[0.0, lam * a], [lam * a, 0.0]])
    res = diagonalize_block(M, P)
    assert res.zero_count == 0
    assert np.allclose(np.abs(res.thetas), 0.5 * abs(math.atanh(lam)), atol=1e-9)
    for kappa in (1.0, 2.0):
        direct = float(np.sum(np.abs(res.thetas) ** kappa))
        assert direct == pytest.approx(two_mode_complexity(lam, kappa), rel=1e-8, abs=1e-12)


@given(st.floats(0.1, 2.0, **finite), st.floats(0.1, 2.0, **finite),
       st.floats(-1.0, 1.0, **finite))
@settings(deadline=None, max_examples=80)
def test_two_flavor_block_oracle(A, B, x):
    # M = diag(A, B), P off-diagonal c: the positive branch frequencies are
    # sqrt((A+B)^2/4 - c^2) +- (A-B)/2 and both angles are
    # atanh(2c/(A+B))/2 in magnitude
    c = 0.95 * x * math.sqrt(A * B)
    assume(abs(c) > 1e-6)
    half_sum = 0.5 * (A + B)
    root = math.sqrt(half_sum * half_sum - c * c)
    w_minus = root - 0.5 * abs(A - B)
    assume(w_minus > 1e-4 * half_sum)  # keep clear of the zero-mode cut
    res = diagonalize_block(np.diag([A, B]), np.array([[0.0, c], [c, 0.0]]))
    assert res.zero_count == 0
    expected = sorted([root - 0.5 * (A - B), root + 0.5 * (A - B)])
    assert np.allclose(res.omegas, expected, rtol=1e-9, atol=1e-12)
    theta_mag = 0.5 * abs(math.atanh(2.0 * c / (A + B)))
    assert np.allclose(np.abs(res.thetas), theta_mag, atol=1e-8)


def test_angle_mode_alignment():
    # two decoupled free-field flavors with opposite squeezing; angles must
    # ride with their frequencies after the ascending sort
    M1, P1 = free_field_block(2.0, 1.0)
    M2, P2 = free_field_block(0.5, 1.0)
    M = np.diag([M1[0, 0], M2[0, 0]])
    P = np.diag([P1[0, 0], P2[0, 0]])
    res = diagonalize_block(M, P)
    assert np.allclose(res.omegas, [0.5, 2.0], rtol=1e-12)
    assert res.thetas[0] == pytest.approx(0.5 * math.log(0.5), abs=1e-10)
    assert res.thetas[1] == pytest.approx(0.5 * math.log(2.0), abs=1e-10)


def test_goldstone_block_is_marked_not_raised():
    w0 = 0.8
    M = np.array([[0.5 * w0]])
    P = np.array([[-0.5 * w0]])
    res = diagonalize_block(M, P)
    assert res.zero_count == 1
    assert res.omegas[0] < 1e-5 * w0
    assert res.thetas.size == 0
    omegas, thetas, zeros = diagonalize_batch(M[None], P[None])
    assert zeros[0] == 1
    assert np.isnan(thetas[0, 0])


def test_indefinite_block_raises():
    with pytest.raises(InstabilityError):
        diagonalize_block(np.array([[1.0]]), np.array([[2.0]]))


@st.composite
def stable_blocks(draw):
    m = draw(st.integers(1, 4))
    rng = np.random.default_rng(draw(st.integers(0, 2 ** 32 - 1)))
    R = rng.normal(size=(m, m))
    M = R @ R.T + (0.3 + draw(st.floats(0.0, 2.0))) * np.eye(m)
    S = rng.normal(size=(m, m))
    P = 0.5 * (S + S.T)
    # halve P until H2 clears the zero-mode cut with room; terminates since
    # P -> 0 leaves the positive definite M twice
    while np.linalg.eigvalsh(np.block([[M, P], [P, M]]))[0] <= 1e-2:
        P *= 0.5
    return M, P


@given(stable_blocks())
@settings(deadline=None, max_examples=60)
def test_random_stable_block_invariants(block):
    M, P = block
    res = diagonalize_block(M, P)
    m = M.shape[0]
    assert res.zero_count == 0
    assert np.all(np.diff(res.omegas) >= 0)
    assert np.all(res.omegas > 0)
    h2 = np.block([[M, P], [P, M]])
    hnorm = np.abs(h2).max()
    assert symplectic_check(res.G) <= 1e-10
    assert similarity_residual(res.G, M, P, res.omegas) <= 1e-9 * hnorm
    # independent pairing check through the non-symmetric eigenproblem
    kap = np.concatenate([np.ones(m), -np.ones(m)])
    ev = np.linalg.eigvals(np.diag(kap) @ h2)
    assert np.abs(ev.imag).max() <= 1e-9 * hnorm
    ev = np.sort(ev.real)
    assert np.allclose(ev, np.concatenate([-res.omegas[::-1], res.omegas]),
                       atol=1e-8 * max(hnorm, 1.0))


def test_frequencies_batch_agrees_with_full_path():
    rng = np.random.default_rng(7)
    Ms, Ps = [], []
    for _ in range(8):
        R = rng.normal(size=(3, 3))
        M = R @ R.T + 1.5 * np.eye(3)
        S = 0.1 * rng.normal(size=(3, 3))
        Ms.append(M)
        Ps.append(0.5 * (S + S.T))
    Ms, Ps = np.array(Ms), np.array(Ps)
    w_full, _, zc_full = diagonalize_batch(Ms, Ps)
    w_fast, zc_fast = frequencies_batch(Ms, Ps)
    assert np.array_equal(zc_full, zc_fast)
    assert np.allclose(w_full, w_fast, rtol=1e-12, atol=1e-14)


def test_zero_tolerance_override():
    M, P = free_field_block(1e-7, 1.0)
    res = diagonalize_block(M, P, omega_tol=1e-6)
    assert res.zero_count == 1
