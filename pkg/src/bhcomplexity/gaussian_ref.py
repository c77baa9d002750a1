"""Closed-form complexity references for Gaussian theories.

Covers the two-mode squeezed pair, the weakly interacting Bose gas, and
the relativistic scalar with reference frequency w0: per-site densities

    c_kappa = 2**(1-kappa) * Omega_{d-1}/(2*pi)**d
              * int_0^Lambda p**(d-1) |ln(sqrt(p**2+m**2)/w0)|**kappa dp

with Lambda = sqrt(w0**2 - m**2), in closed form where available and by
quadrature otherwise. Angles use natural logarithms throughout.
"""
from __future__ import annotations

import math

from scipy.integrate import quad


def _solid_angle(d: int) -> float:
    """Surface of the unit (d-1)-sphere."""
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def two_mode_complexity(lam: float, kappa: float) -> float:
    """C_kappa of the two-mode squeezed ground state with pair coupling lam."""
    if not -1.0 < lam < 1.0:
        raise ValueError(f"pair coupling must satisfy |lam| < 1, got {lam}")
    return 2.0 ** (1.0 - kappa) * abs(math.atanh(lam)) ** kappa


def two_mode_ground_shift(lam: float) -> float:
    """Ground energy shift of the two-mode pair in units of the level spacing."""
    if not -1.0 < lam < 1.0:
        raise ValueError(f"pair coupling must satisfy |lam| < 1, got {lam}")
    return math.sqrt(1.0 - lam * lam) - 1.0


def gas_theta(p: float, m: float, U: float) -> float:
    """Squeezing angle of the dilute-gas mode at momentum p; +inf at p = 0."""
    if m <= 0 or U <= 0:
        raise ValueError("gas parameters m and U must be positive")
    if p == 0:
        return math.inf
    return 0.5 * math.atanh(2.0 * m * U / (p * p + 2.0 * m * U))


def gas_c2_d3(m: float, U: float) -> float:
    """Closed-form c_2 of the d=3 dilute gas.

    Integrating (1/2 pi^2) int_0^inf p^2 theta_p^2 dp with p = sqrt(2mU) x
    leaves (2mU)^{3/2} K / (32 pi^2), K = int_0^inf x^2 ln^2(1 + 2/x^2) dx
    = 4 sqrt(2) pi (2 - ln 4) / 3.
    """
    if m <= 0 or U <= 0:
        raise ValueError("gas parameters m and U must be positive")
    return (2.0 - math.log(4.0)) * (4.0 * m * U) ** 1.5 / (48.0 * math.pi)


def gas_c_kappa_quadrature(m: float, U: float, kappa: float, d: int = 3) -> float:
    """Quadrature c_kappa of the dilute gas in d dimensions."""
    if m <= 0 or U <= 0:
        raise ValueError("gas parameters m and U must be positive")
    pref = _solid_angle(d) / (2.0 * math.pi) ** d

    def integrand(p: float) -> float:
        return p ** (d - 1) * gas_theta(p, m, U) ** kappa

    val, _ = quad(integrand, 0.0, math.inf, epsabs=1e-14, epsrel=1e-12, limit=400)
    return pref * val


def _check_scalar(m: float, omega0: float):
    if omega0 <= 0:
        raise ValueError(f"reference frequency must be positive, got {omega0}")
    if not 0.0 <= m <= omega0:
        raise ValueError(f"mass must satisfy 0 <= m <= omega0, got m={m}, omega0={omega0}")


def c_kappa_quadrature(kappa: float, m: float, omega0: float, d: int) -> float:
    """Quadrature evaluation of the scalar-field density c_kappa."""
    _check_scalar(m, omega0)
    cutoff = math.sqrt(omega0 * omega0 - m * m)
    if cutoff == 0.0:
        return 0.0
    pref = 2.0 ** (1.0 - kappa) * _solid_angle(d) / (2.0 * math.pi) ** d

    def integrand(p: float) -> float:
        return p ** (d - 1) * abs(math.log(math.sqrt(p * p + m * m) / omega0)) ** kappa

    val, _ = quad(integrand, 0.0, cutoff, epsabs=1e-14, epsrel=1e-13, limit=400)
    return pref * val


def c_kappa_closed(kappa: float, m: float, omega0: float, d: int) -> float:
    """Closed forms: exact for d=2 kappa in {1,2} and d=3 kappa=1; the
    d=3 kappa=2 value is the small-mass expansion through m**3 with a
    truncation error of order (m/omega0)**4."""
    _check_scalar(m, omega0)
    w2 = omega0 * omega0
    m2 = m * m
    if d == 2 and kappa == 1:
        bulk = w2 - m2
        if m2 > 0:  # m**2 can underflow; the m^2 ln m^2 limit is 0 there
            bulk += m2 * math.log(m2) - m2 * math.log(w2)
        return bulk / (8.0 * math.pi)
    if d == 2 and kappa == 2:
        bulk = w2 - m2
        if m2 > 0:
            r = math.log(m2 / w2)
            bulk += -0.5 * m2 * r * r + m2 * r
        return bulk / (16.0 * math.pi)
    if d == 3 and kappa == 1:
        lam = math.sqrt(w2 - m2)
        bulk = lam ** 3 / 3.0 - m2 * lam
        if m > 0:
            bulk += m ** 3 * math.atan(lam / m)
        return bulk / (6.0 * math.pi ** 2)
    if d == 3 and kappa == 2:
        val = omega0 ** 3 / (54.0 * math.pi ** 2) - omega0 * m2 / (4.0 * math.pi ** 2)
        if m2 > 0:
            val -= m ** 3 * math.log(m2) / (24.0 * math.pi)
            val += m ** 3 * (1.5 * math.log(w2) - 1.5 * math.log(4.0) + 4.0) / (36.0 * math.pi)
        return val
    raise ValueError(f"no closed form for kappa={kappa}, d={d}")


def recursion_residual(kappa: float, m: float, omega0: float, d: int,
                       h: float = 1e-5, use_closed: bool = True) -> float:
    """Residual of c_{kappa-1} = (2*omega0/kappa) * d c_kappa / d omega0.

    The derivative is a central difference with step h*omega0. Set
    use_closed=False to check the quadrature path instead.
    """
    if kappa < 1:
        raise ValueError("recursion needs kappa >= 1")
    eval_c = c_kappa_closed if use_closed else c_kappa_quadrature
    step = h * omega0
    hi = eval_c(kappa, m, omega0 + step, d)
    lo = eval_c(kappa, m, omega0 - step, d)
    deriv = (hi - lo) / (2.0 * step)
    lhs = c_kappa_quadrature(kappa - 1.0, m, omega0, d) if kappa - 1 < 1 or not use_closed \
        else eval_c(kappa - 1.0, m, omega0, d)
    return lhs - (2.0 * omega0 / kappa) * deriv
