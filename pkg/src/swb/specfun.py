"""Scalar special functions, derived constants and Laurent extraction.

Everything here works in double precision.  Complex arguments are accepted
wherever the underlying function is analytic in its argument.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special as _sp

__all__ = [
    "EULER_GAMMA",
    "LaurentCoeffs",
    "bessel_k",
    "bessel_k_scaled",
    "constant_A",
    "constant_A_alternative",
    "constant_Btilde",
    "ERF_HALF_PI",
    "LaurentNonConvergence",
    "erf",
    "gamma",
    "gamma_upper",
    "gamma_upper_da",
    "hurwitz_zeta",
    "laurent_extract",
    "zeta",
    "zeta_prime",
    "zeta_star",
    "zeta_star_prime",
]

EULER_GAMMA = 0.57721566490153286061

# Gauss-Legendre nodes reused by the panel quadratures below.
_GL20_X, _GL20_W = np.polynomial.legendre.leggauss(20)

# B_2, B_4, ..., B_40 for Euler-Maclaurin tails.
_BERNOULLI_EVEN = [float(b) for b in _sp.bernoulli(40)[2::2]]


def erf(x):
    """Error function for real scalars or arrays."""
    if np.ndim(x) == 0:
        return math.erf(float(x))
    return _sp.erf(np.asarray(x, dtype=float))


def gamma(s):
    """Gamma function; complex arguments allowed."""
    if isinstance(s, complex):
        return complex(_sp.gamma(s))
    return float(_sp.gamma(s))


# ---------------------------------------------------------------------------
# incomplete gamma


def _upper_gamma_quad(a: float, x: float, power: int) -> float:
    """int_x^inf t^(a-1) (log t)^power e^(-t) dt via t = x e^u panels."""
    if not (x > 0.0):
        raise ValueError(f"x must be positive, got {x!r}")
    a = float(a)
    x = float(x)
    # log of integrand in the u variable (extra factor t from dt = t du)
    peak_t = max(x, a) if a > 0 else x
    log_peak = a * math.log(peak_t) - peak_t
    t_max = max(peak_t, 1.0) * 2.0
    while a * math.log(t_max) - t_max > log_peak - 45.0:
        t_max *= 1.5
    u_max = math.log(t_max / x)
    h = min(0.125, 1.0 / x)
    n_panels = max(1, math.ceil(u_max / h))
    h = u_max / n_panels
    left = np.arange(n_panels) * h
    u = (left[:, None] + 0.5 * h * (_GL20_X[None, :] + 1.0)).ravel()
    w = np.tile(0.5 * h * _GL20_W, n_panels)
    log_t = math.log(x) + u
    t = np.exp(log_t)
    vals = np.exp(a * log_t - t)
    if power:
        vals = vals * log_t**power
    return float(math.fsum(vals * w))


def gamma_upper(a: float, x: float) -> float:
    """Upper incomplete gamma Gamma(a, x) for real a and x > 0.

    The integral is evaluated directly after the substitution t = x e^u,
    which treats every real a the same way (no special casing near the
    non-positive integers).
    """
    return _upper_gamma_quad(a, x, 0)


def gamma_upper_da(a: float, x: float) -> float:
    """Partial derivative of Gamma(a, x) with respect to a."""
    return _upper_gamma_quad(a, x, 1)


# ---------------------------------------------------------------------------
# zeta functions


def _borwein_d(n: int) -> list[float]:
    d = []
    acc = 0.0
    term = 1.0 / n  # i = 0 term of (n+i-1)! 4^i / ((n-i)! (2i)!) scaled by n!/n
    for i in range(n + 1):
        if i == 0:
            term = math.factorial(n - 1) / math.factorial(n)
        else:
            term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2 * i - 1) * (2 * i))
        acc += term
        d.append(n * acc)
    return d


_BORWEIN_CACHE: dict[int, list[float]] = {}


def _zeta_borwein(s: complex) -> complex:
    t = abs(s.imag)
    n = math.ceil((40.0 + math.pi * t / 2.0 + math.log(1.0 + 2.0 * t)) / math.log(3.0 + math.sqrt(8.0)))
    n = min(max(n, 24), 160)
    d = _BORWEIN_CACHE.get(n)
    if d is None:
        d = _BORWEIN_CACHE[n] = _borwein_d(n)
    dn = d[n]
    k = np.arange(n)
    coeff = np.array([(-1.0) ** j * (d[j] - dn) for j in range(n)])
    terms = coeff * np.exp(-s * np.log(k + 1.0))
    eta_scaled = complex(np.sum(terms[::-1]))
    return -eta_scaled / (dn * (1.0 - 2.0 ** (1.0 - s)))


def hurwitz_zeta(s: complex, q: float) -> complex:
    """Hurwitz zeta sum_{k>=0} (k+q)^(-s) by Euler-Maclaurin, q > 0, s != 1."""
    s = complex(s)
    if s == 1:
        raise ValueError("pole at s = 1")
    if q <= 0:
        raise ValueError("q must be positive")
    n_direct = max(0, math.ceil(abs(s) + 20.0 - q))
    k = np.arange(n_direct)
    head = complex(np.sum(np.exp(-s * np.log(k + q)))) if n_direct else 0.0
    big_n = q + n_direct
    log_n = math.log(big_n)
    tail = cmath.exp((1.0 - s) * log_n) / (s - 1.0) + 0.5 * cmath.exp(-s * log_n)
    rising = s  # (s)_{2j-1}
    fact = 2.0  # (2j)!
    for j, b2j in enumerate(_BERNOULLI_EVEN[:15], start=1):
        if j > 1:
            rising *= (s + 2 * j - 3) * (s + 2 * j - 2)
            fact *= (2 * j - 1) * (2 * j)
        tail += b2j / fact * rising * cmath.exp((-s - 2 * j + 1) * log_n)
    return head + tail


def _zeta_complex(s: complex) -> complex:
    if s == 1:
        raise ValueError("zeta has a pole at s = 1")
    if s.real < 0.0:
        one_minus = 1.0 - s
        return (
            2.0**s
            * cmath.exp((s - 1.0) * math.log(math.pi))
            * cmath.sin(math.pi * s / 2.0)
            * complex(_sp.gamma(one_minus))
            * _zeta_complex(one_minus)
        )
    if abs(1.0 - 2.0 ** (1.0 - s)) < 0.05:
        return hurwitz_zeta(s, 1.0)
    return _zeta_borwein(s)


def zeta(s):
    """Riemann zeta.  Real input gives a real result."""
    is_real = not isinstance(s, complex)
    val = _zeta_complex(complex(s))
    return val.real if is_real else val


def zeta_star(s):
    """Completed zeta pi^(-s/2) Gamma(s/2) zeta(s); poles at 0 and 1."""
    is_real = not isinstance(s, complex)
    sc = complex(s)
    if abs(sc) < 1e-14 or abs(sc - 1.0) < 1e-14:
        raise ValueError(f"zeta_star has a pole at s = {s!r}")
    # Gamma(s/2) pole times a trivial zero of zeta: evaluate the mirror point.
    if sc.real < 0.0:
        k = round(-sc.real / 2.0)
        if k >= 1 and abs(sc + 2 * k) < 1e-8:
            val = zeta_star(1.0 - sc)
            return val.real if is_real else val
    val = cmath.exp(-sc / 2.0 * math.log(math.pi)) * complex(_sp.gamma(sc / 2.0)) * _zeta_complex(sc)
    return val.real if is_real else val


def _derivative(f: Callable[[complex], complex], s: complex, pole_points: tuple[complex, ...]) -> complex:
    r = 0.25
    for p in pole_points:
        r = min(r, abs(s - p) / 2.0)
    return laurent_extract(f, s, r, n=32, orders=(1,), tol=1e-13, max_n=512)[1]


def zeta_prime(s):
    """Derivative of zeta via a contour integral around s."""
    is_real = not isinstance(s, complex)
    val = _derivative(_zeta_complex, complex(s), (1.0,))
    return val.real if is_real else val


def zeta_star_prime(s):
    """Derivative of the completed zeta via a contour integral."""
    is_real = not isinstance(s, complex)
    val = _derivative(lambda w: complex(zeta_star(complex(w))), complex(s), (0.0, 1.0))
    return val.real if is_real else val


# ---------------------------------------------------------------------------
# Laurent coefficients


class LaurentNonConvergence(ArithmeticError):
    """Raised when contour sampling does not settle."""


@dataclass(frozen=True)
class LaurentCoeffs:
    """Laurent coefficients c_k of f around s0, keyed by k."""

    coeffs: dict
    radius: float
    n_samples: int
    error_estimate: float

    def __getitem__(self, k: int) -> complex:
        return self.coeffs[k]

    @property
    def c_m2(self) -> complex:
        return self.coeffs[-2]

    @property
    def c_m1(self) -> complex:
        return self.coeffs[-1]

    @property
    def c_0(self) -> complex:
        return self.coeffs[0]

    @property
    def c_1(self) -> complex:
        return self.coeffs[1]


def _circle_coeffs(f, s0: complex, r: float, n: int, orders) -> dict:
    theta = 2.0 * math.pi * (np.arange(n) + 0.5) / n
    pts = s0 + r * np.exp(1j * theta)
    vals = np.array([complex(f(complex(p))) for p in pts])
    out = {}
    for k in orders:
        # c_k = (1/2 pi i) \oint f(s) (s-s0)^(-k-1) ds, trapezoid on the circle
        out[k] = complex(np.mean(vals * np.exp(-1j * k * theta))) / r**k
    return out


def laurent_extract(
    f: Callable[[complex], complex],
    s0: complex,
    radius: float,
    n: int = 32,
    orders=(-2, -1, 0, 1),
    tol: float = 1e-10,
    max_n: int = 1024,
) -> LaurentCoeffs:
    """Laurent coefficients of f at s0 from samples on a circle.

    The sample count is doubled until successive estimates agree to ``tol``
    (relative to the largest coefficient magnitude, floored at one).
    Raises LaurentNonConvergence if that never happens below ``max_n``.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if n < 16:
        raise ValueError("need at least 16 samples")
    orders = tuple(sorted(set(orders)))
    prev = _circle_coeffs(f, complex(s0), radius, n, orders)
    while True:
        n2 = 2 * n
        cur = _circle_coeffs(f, complex(s0), radius, n2, orders)
        scale = max([1.0] + [abs(v) for v in cur.values()])
        err = max(abs(cur[k] - prev[k]) for k in orders)
        if err <= tol * scale:
            return LaurentCoeffs(coeffs=cur, radius=radius, n_samples=n2, error_estimate=err)
        if n2 >= max_n:
            raise LaurentNonConvergence(
                f"coefficients still moving by {err:.3e} at n={n2}; "
                "pole order too high or the circle crosses a singularity"
            )
        n, prev = n2, cur


# ---------------------------------------------------------------------------
# modified Bessel function of the second kind


def _bessel_k_grid(nu: complex, x_min: float, x_max: float):
    h = min(0.1, 0.5 / math.sqrt(x_max))
    a = abs(nu.real)
    # stop once x_min (cosh t - 1) - |Re nu| t exceeds the peak by 45 nats
    t = 0.0
    peak = 0.0
    while True:
        t += 1.0
        val = a * t - x_min * (math.cosh(t) - 1.0)
        peak = max(peak, val)
        if val < peak - 45.0:
            break
    n = math.ceil(t / h)
    nodes = np.arange(n + 1) * h
    weights = np.full(n + 1, h)
    weights[0] = 0.5 * h
    return nodes, weights


def bessel_k_scaled(nu, x):
    """e^x K_nu(x) by trapezoid rule on int_0^inf e^(-x cosh t) cosh(nu t) dt."""
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x_arr <= 0):
        raise ValueError("bessel_k needs x > 0")
    nu_c = complex(nu)
    nodes, weights = _bessel_k_grid(nu_c, float(x_arr.min()), float(x_arr.max()))
    coshnu = np.cosh(nu_c * nodes) if nu_c.imag else np.cosh(nu_c.real * nodes)
    decay = np.exp(-np.outer(x_arr, np.cosh(nodes) - 1.0))
    out = decay @ (weights * coshnu)
    if np.ndim(x) == 0:
        return out[0]
    return out


def bessel_k(nu, x):
    """Modified Bessel function K_nu(x) for real x > 0 and real or complex nu."""
    scaled = bessel_k_scaled(nu, x)
    return scaled * np.exp(-np.asarray(x, dtype=float))


# ---------------------------------------------------------------------------
# derived constants

ERF_HALF_PI = math.erf(math.sqrt(math.pi / 2.0))


def constant_Btilde() -> float:
    """sqrt(pi/2) (dGamma/da(-1/2, pi/2) - Gamma(-1/2, pi/2) log(pi/2))."""
    half_pi = math.pi / 2.0
    return math.sqrt(half_pi) * (
        gamma_upper_da(-0.5, half_pi) - gamma_upper(-0.5, half_pi) * math.log(half_pi)
    )


def constant_A() -> float:
    """The constant A of the limiting expansion, assembled term by term."""
    half_pi = math.pi / 2.0
    return (
        2.0 * ERF_HALF_PI * (-4.0 * (EULER_GAMMA + 1.0) + math.log(2.0) + math.pi * math.log(half_pi))
        + 2.0 * math.pi * math.log(1.0 / half_pi)
        + math.sqrt(math.pi) * gamma_upper_da(-0.5, half_pi)
    )


def constant_A_alternative() -> float:
    """sqrt(2) B~ + (8(Gamma'(1) - 1) + log 4) erf(sqrt(pi/2)), with Gamma'(1) = -gamma."""
    digamma_one = -EULER_GAMMA
    return math.sqrt(2.0) * constant_Btilde() + (8.0 * (digamma_one - 1.0) + math.log(4.0)) * ERF_HALF_PI
