"""The real-analytic Eisenstein series for SL2(Z) and derived closed forms.

Normalisation: E(z, s) = sum over Gamma_inf \\ SL2(Z) of Im(gamma z)^s, so the
constant term is y^s + phi(s) y^{1-s} with phi(s) = zeta*(2s-1)/zeta*(2s)
and the residue at s = 1 is 3/pi.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .hdomain import HPoint, reduce
from .specfun import (
    EULER_GAMMA,
    gamma,
    hurwitz_zeta,
    laurent_extract,
    zeta,
    zeta_prime,
    zeta_star,
    zeta_star_prime,
)

__all__ = [
    "EisensteinConfig",
    "A0",
    "ct_powerint",
    "derived_ct_s1",
    "eisenstein_zagier",
    "eisenstein_zagier_array",
    "phi_scattering",
    "printed_ct_s0_log",
    "printed_ct_s1",
    "truncated_rs_closed",
    "truncated_rs_closed_ds",
    "weight32_A0_constant",
]


@dataclass(frozen=True)
class EisensteinConfig:
    n_fourier: int = 64
    direct_sum_bound: int = 20

    def __post_init__(self):
        if self.n_fourier < 1:
            raise ValueError("n_fourier must be >= 1")
        if self.direct_sum_bound < 10:
            raise ValueError("direct_sum_bound must be >= 10")


def phi_scattering(s):
    """zeta*(2s - 1) / zeta*(2s)."""
    sc = complex(s)
    for bad, what in ((1.0, "pole"), (0.5, "removable point (phi = -1)"), (0.0, "zero")):
        if abs(sc - bad) < 1e-12:
            raise ValueError(f"phi_scattering: s = {bad} is a {what}; use a contour around it")
    val = zeta_star(2.0 * sc - 1.0) / zeta_star(2.0 * sc)
    return val.real if not isinstance(s, complex) else complex(val)


def _sigma_table(n_max: int, power: complex) -> np.ndarray:
    """sigma_power(n) = sum_{d | n} d^power for n = 1..n_max."""
    out = np.zeros(n_max + 1, dtype=complex)
    for d in range(1, n_max + 1):
        out[d::d] += cmath.exp(power * math.log(d))
    return out[1:]


@lru_cache(maxsize=512)
def _fourier_setup(s: complex, n_modes: int):
    zs = complex(zeta_star(2.0 * s))
    phi = complex(zeta_star(2.0 - 2.0 * s)) / zs
    n = np.arange(1, n_modes + 1, dtype=float)
    coeff = 4.0 * np.exp((s - 0.5) * np.log(n)) * _sigma_table(n_modes, 1.0 - 2.0 * s) / zs
    return phi, coeff


def _k_grid(nu: complex, x_min: float, x_max: float):
    x_eff = min(x_max, 120.0)
    h = min(0.1, 0.5 / math.sqrt(x_eff))
    a = abs(nu.real)
    t, peak = 0.0, 0.0
    while True:
        t += 0.5
        val = a * t - x_min * math.cosh(t)
        peak = max(peak, val) if t > 0.5 else val
        if val < peak - 45.0 and x_min * math.cosh(t) > 45.0:
            break
    nodes = np.arange(math.ceil(t / h) + 1) * h
    w = np.full(nodes.shape, h)
    w[0] = 0.5 * h
    return np.cosh(nu * nodes), np.cosh(nodes), w


def _reduce_arrays(x: np.ndarray, y: np.ndarray):
    bad = (np.abs(x) > 0.5 + 1e-12) | (x * x + y * y < 1.0 - 1e-12)
    if not np.any(bad):
        return x, y
    x = x.copy()
    y = y.copy()
    for i in np.flatnonzero(bad):
        p, _ = reduce(HPoint(float(x[i]), float(y[i])))
        x[i], y[i] = p.x, p.y
    return x, y


def eisenstein_zagier_array(x, y, s, config: EisensteinConfig = EisensteinConfig(), reduce_points: bool = True):
    """Fourier-mode E(z, s) on arrays of points."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    shape = x.shape
    xf, yf = x.ravel(), y.ravel()
    if reduce_points:
        xf, yf = _reduce_arrays(xf, yf)
    sc = complex(s)
    y_min, y_max = float(yf.min()), float(yf.max())
    nu = sc - 0.5
    n_modes = min(config.n_fourier, max(1, math.ceil((45.0 + 2.0 * abs(nu)) / (2.0 * math.pi * y_min))))
    phi, coeff = _fourier_setup(sc, n_modes)
    cosh_nu, cosh_t, w = _k_grid(nu, 2.0 * math.pi * y_min, 2.0 * math.pi * n_modes * y_max)
    bessel = kernels.eis_fourier(xf, yf, coeff, cosh_nu, cosh_t, w)
    out = np.exp(sc * np.log(yf)) + phi * np.exp((1.0 - sc) * np.log(yf)) + np.sqrt(yf) * bessel
    if not isinstance(s, complex):
        out = out.real
    return out.reshape(shape)


def _row_sum(m: int, x: float, y: float, s: complex) -> complex:
    """sum_{n in Z} ((m x + n)^2 + (m y)^2)^(-s)."""
    b = m * y
    b2 = b * b
    cut = math.ceil(2.0 * b + 10.0)
    centre = m * x
    n_lo = math.ceil(-cut - centre)
    n_hi = math.floor(cut - centre)
    a = np.arange(n_lo, n_hi + 1) + centre
    head = complex(np.sum(np.exp(-s * np.log(a * a + b2))))
    # |a| > cut: binomial series in (b/a)^2 with Hurwitz zeta sums
    alpha_pos = n_hi + 1 + centre
    alpha_neg = -(n_lo - 1 + centre)
    tail = 0j
    binom = 1.0 + 0j
    bpow = 1.0
    for j in range(60):
        if j:
            binom *= (-s - j + 1) / j
            bpow *= b2
        term = binom * bpow * (hurwitz_zeta(2 * s + 2 * j, alpha_pos) + hurwitz_zeta(2 * s + 2 * j, alpha_neg))
        tail += term
        if abs(term) < 1e-18 * abs(head):
            break
    return head + tail


def _eisenstein_direct(z: HPoint, s: complex, bound: int) -> complex:
    if s.real <= 1.0:
        raise ValueError("direct summation needs Re s > 1")
    x, y = z.x, z.y
    rows = [_row_sum(m, x, y, s) for m in range(1, bound + 1)]
    # rows beyond the bound: only the Poisson zero mode survives
    far = (math.sqrt(math.pi) * complex(gamma(s - 0.5)) / complex(gamma(s))
           * cmath.exp((1.0 - 2.0 * s) * math.log(y)) * hurwitz_zeta(2.0 * s - 1.0, bound + 1.0))
    total = sum(rows[::-1], 0j) + far
    return cmath.exp(s * math.log(y)) * (1.0 + total / complex(zeta(2.0 * s)))


def eisenstein_zagier(
    z: HPoint,
    s,
    mode: str = "fourier",
    config: EisensteinConfig = EisensteinConfig(),
    reduce_point: bool = True,
):
    """E(z, s) by its Fourier expansion or by direct lattice summation."""
    if mode == "fourier":
        val = eisenstein_zagier_array(np.array([z.x]), np.array([z.y]), complex(s), config, reduce_point)[0]
    elif mode == "direct":
        if complex(s).real <= 1.0:
            raise ValueError("direct summation does not converge for Re s <= 1")
        zz = reduce(z)[0] if reduce_point else z
        val = _eisenstein_direct(zz, complex(s), config.direct_sum_bound)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return complex(val) if isinstance(s, complex) else float(complex(val).real)


def truncated_rs_closed(s, T_hat: float):
    """T^{s-1}/(s-1) - phi(s) T^{-s}/s."""
    sc = complex(s)
    if abs(sc) < 1e-12 or abs(sc - 1.0) < 1e-12:
        raise ValueError("truncated_rs_closed is singular at s = 0, 1; extract Laurent data instead")
    lt = math.log(T_hat)
    if abs(sc - 0.5) < 1e-12:
        phi = -1.0
    else:
        phi = complex(zeta_star(2.0 * sc - 1.0)) / complex(zeta_star(2.0 * sc))
    val = cmath.exp((sc - 1.0) * lt) / (sc - 1.0) - phi * cmath.exp(-sc * lt) / sc
    return val if isinstance(s, complex) else val.real


def truncated_rs_closed_ds(s, T_hat: float, radius: float = 0.1) -> complex:
    """d/ds of the closed form by contour differentiation."""
    return laurent_extract(lambda w: truncated_rs_closed(complex(w), T_hat), complex(s), radius,
                           n=32, orders=(1,), tol=1e-13, max_n=512)[1]


def ct_powerint(kind: str, T_hat: float) -> float:
    """Constant terms of the truncated Rankin-Selberg closed form.

    ct_s0:     CT_{s=0} of int y^s dmu over the strip
    ct_s1:     CT_{s=1} of the same (= CT_{s=0} of int y^s dx dy / y)
    ct_s0_log: CT_{s=0} of int y^s log y dmu
    """
    f = lambda w: truncated_rs_closed(complex(w), T_hat)  # noqa: E731
    if kind == "ct_s0":
        return laurent_extract(f, 0.0, 0.25).c_0.real
    if kind == "ct_s1":
        return laurent_extract(f, 1.0, 0.25).c_0.real
    if kind == "ct_s0_log":
        g = lambda w: truncated_rs_closed_ds(w, T_hat)  # noqa: E731
        return laurent_extract(g, 0.0, 0.25, orders=(-1, 0)).c_0.real
    raise ValueError(f"unknown kind {kind!r}")


# printed comparison expressions -------------------------------------------


def printed_ct_s1(T_hat: float) -> float:
    """Displayed value of CT_{s=1}: (3/pi)(gamma + log(pi/4) + z*'(2)/z*(2))/T
    - (1/(2 z*(2)))(log T + 1)/T + log T."""
    zs2 = zeta_star(2.0)
    lt = math.log(T_hat)
    return ((3.0 / math.pi) * (EULER_GAMMA + math.log(math.pi / 4.0) + zeta_star_prime(2.0) / zs2) / T_hat
            - (lt + 1.0) / (2.0 * zs2 * T_hat) + lt)


def printed_ct_s0_log(T_hat: float) -> float:
    """Displayed value of CT_{s=0} of int y^s log y dmu."""
    lt = math.log(T_hat)
    zp = zeta_prime(-1.0)
    return (-(lt + 1.0) / T_hat + EULER_GAMMA + 1.5 * zeta_star_prime(-1.0)
            + zp * (math.log(math.pi) + 2.0 * EULER_GAMMA
                    - 2.0 * math.log(2.0 * math.pi) * (3.0 * math.log(2.0 * math.pi) + math.log(2.0))
                    - 2.0 * lt))


def derived_ct_s1(T_hat: float) -> float:
    """Closed form of CT_{s=1} worked out from the expansions of T^{s-1}/(s-1)
    and phi(s) at s = 1 (used only as an analytic cross-check)."""
    lt = math.log(T_hat)
    phi0 = (3.0 / math.pi) * (EULER_GAMMA - math.log(4.0 * math.pi)
                              - 2.0 * zeta_star_prime(2.0) / zeta_star(2.0))
    return lt - phi0 / T_hat + (3.0 / math.pi) * (lt + 1.0) / T_hat


# weight 3/2 constant term -------------------------------------------------


def weight32_A0_constant() -> float:
    """3(-12 zeta'(2) + 2 gamma pi^2 + pi^2 (-gamma - log 8)) / pi^3."""
    pi2 = math.pi**2
    return 3.0 * (-12.0 * zeta_prime(2.0) + 2.0 * EULER_GAMMA * pi2 + pi2 * (-EULER_GAMMA - math.log(8.0))) / math.pi**3


def A0(v: float) -> float:
    """Constant coefficient v + v^{1/2} * weight32_A0_constant()."""
    return v + math.sqrt(v) * weight32_A0_constant()
