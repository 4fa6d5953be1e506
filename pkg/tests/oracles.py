"""Independent oracles used by the tests.

Everything here deliberately avoids the package's own evaluation paths:
erfc comes from its Maclaurin series / Legendre continued fraction, the
Mittag-Leffler reference from the spectral integral representation via
scipy quadrature, the classical integrator is a plain running-sum
trapezoidal PECE, and closed forms use math.gamma.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad


def erfc_oracle(x: float) -> float:
    """erfc(x) for x >= 0: Maclaurin series below 2, continued fraction above."""
    if x < 2.0:
        # erf(x) = (2/sqrt(pi)) sum (-1)^n x^(2n+1) / (n! (2n+1))
        total = 0.0
        term = x
        n = 0
        while abs(term) > 1e-20 * max(1.0, abs(total)):
            total += term / (2 * n + 1)
            n += 1
            term *= -x * x / n
        return 1.0 - 2.0 / math.sqrt(math.pi) * total
    return math.exp(-x * x) * erfcx_oracle(x)


def erfcx_oracle(x: float) -> float:
    """exp(x^2) erfc(x) via the Legendre continued fraction (x >= 2)."""
    if x < 2.0:
        return math.exp(x * x) * erfc_oracle(x)
    # erfcx(x) = (1/sqrt(pi)) * 1/(x + (1/2)/(x + (2/2)/(x + (3/2)/(x + ...))))
    cf = 0.0
    for n in range(120, 0, -1):
        cf = (n / 2.0) / (x + cf)
    return 1.0 / (math.sqrt(math.pi) * (x + cf))


def ml_gll_oracle(alpha: float, beta: float, z: float) -> float:
    """E_{alpha,beta}(z) for z < 0 from the spectral integral representation.

    Valid for 0 < alpha < 1; beta is reduced below 1 + alpha first through
    E_{a,b+a}(z) = (E_{a,b}(z) - 1/Gamma(b)) / z.
    """
    assert z < 0.0 and 0.0 < alpha < 1.0
    shifts = 0
    b = beta
    while b >= 1.0 + alpha - 1e-12:
        b -= alpha
        shifts += 1

    sin_b = math.sin(math.pi * (1.0 - b))
    sin_ba = math.sin(math.pi * (1.0 - b + alpha))
    cos_a = math.cos(math.pi * alpha)

    def kernel(chi):
        num = chi * sin_b - z * sin_ba
        den = chi * chi - 2.0 * chi * z * cos_a + z * z
        return (1.0 / (math.pi * alpha)) * chi ** ((1.0 - b) / alpha) * math.exp(
            -(chi ** (1.0 / alpha))
        ) * num / den

    upper = max(2.0 * abs(z) + 20.0, 60.0)
    v1, _ = quad(kernel, 0.0, upper, points=[abs(z)], limit=500, epsabs=1e-15, epsrel=1e-13)
    v2, _ = quad(kernel, upper, np.inf, limit=200, epsabs=1e-16, epsrel=1e-13)
    value = v1 + v2
    for _ in range(shifts):
        value = (value - 1.0 / math.gamma(b)) / z
        b += alpha
    return value


def classical_pece_trapezoid(rhs, t0: float, x0, h: float, n_steps: int) -> np.ndarray:
    """Order-1 classical PECE on the integral form: rectangle predict,
    trapezoid correct, running sums only.  rhs(t, x) -> array."""
    x0 = np.asarray(x0, dtype=float)
    out = np.empty((n_steps + 1, x0.size))
    out[0] = x0
    f_prev = np.asarray(rhs(t0, x0), dtype=float)
    rect_sum = np.zeros_like(x0)  # sum of f_j, j = 0..k
    trap_inner = np.zeros_like(x0)  # sum of f_j, j = 1..k
    f0 = f_prev.copy()
    for k in range(n_steps):
        t_next = t0 + (k + 1) * h
        rect_sum += f_prev
        pred = x0 + h * rect_sum
        f_pred = np.asarray(rhs(t_next, pred), dtype=float)
        out[k + 1] = x0 + h * (0.5 * f0 + trap_inner + 0.5 * f_pred)
        f_prev = np.asarray(rhs(t_next, out[k + 1]), dtype=float)
        trap_inner += f_prev
    return out


def rl_power_exact(p: float, mu: float, t: np.ndarray) -> np.ndarray:
    """RL integral of order mu of t^p from 0: Gamma(p+1)/Gamma(p+1+mu) t^(p+mu)."""
    return math.gamma(p + 1.0) / math.gamma(p + 1.0 + mu) * t ** (p + mu)


def caputo_power_exact(p: float, alpha: float, t: np.ndarray) -> np.ndarray:
    """Caputo derivative of t^p from 0 (p >= 1): Gamma(p+1)/Gamma(p+1-alpha) t^(p-alpha)."""
    return math.gamma(p + 1.0) / math.gamma(p + 1.0 - alpha) * t ** (p - alpha)


def fit_order(hs, errs) -> float:
    hs = np.asarray(hs, dtype=float)
    errs = np.asarray(errs, dtype=float)
    return float(np.polyfit(np.log(hs), np.log(errs), 1)[0])
