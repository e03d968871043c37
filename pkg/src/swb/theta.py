"""Jacobi and Siegel theta functions for the signature (2, 1) lattice."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .hdomain import HPoint, reduce
from .qspace import CosetId, enumeration_ranges

__all__ = [
    "NonPeriodicError",
    "ThetaComponents",
    "constant_u_term",
    "conv_part",
    "div_part",
    "jacobi_theta",
    "siegel_theta",
    "theta_components",
    "vartheta",
]

# tail terms below e^{-TAIL_EXPONENT} are dropped (about 1e-18 with margin)
TAIL_EXPONENT = 41.5


class NonPeriodicError(ValueError):
    """F(u + iv) does not look 1-periodic in u."""


@dataclass(frozen=True)
class ThetaComponents:
    c00: complex
    c0: complex
    c1: complex
    c2: complex

    @property
    def total(self) -> complex:
        return self.c00 + self.c0 + self.c1 + self.c2


def _as_point(t) -> HPoint:
    if isinstance(t, HPoint):
        return t
    return HPoint.from_complex(complex(t))


def jacobi_theta(tau, coset) -> complex:
    """sum over n in Z (mu0) or 1/2 + Z (mu1) of e^{2 pi i n^2 tau}."""
    t = _as_point(tau)
    shift = 0.5 if CosetId.parse(coset) is CosetId.MU1 else 0.0
    n_max = math.ceil(math.sqrt(TAIL_EXPONENT / (2.0 * math.pi * t.y))) + 1
    n = np.arange(-n_max, n_max + 1) + shift
    terms = np.exp(2j * math.pi * n * n * complex(t.x, t.y))
    order = np.argsort(np.abs(terms))
    sel = terms[order]
    return complex(math.fsum(sel.real), math.fsum(sel.imag))


def _lattice_bound(v: float) -> float:
    return TAIL_EXPONENT / (math.pi * v)


def _siegel_raw(tau: HPoint, z: HPoint, coset, kappa: float, reduce_z: bool):
    if reduce_z:
        z, _ = reduce(z)
    shift = 0.5 if CosetId.parse(coset) is CosetId.MU1 else 0.0
    bound = _lattice_bound(tau.y)
    r2, r3 = enumeration_ranges(z, bound, kappa)
    return kernels.siegel_sum(z.x, z.y, tau.x, tau.y, shift, kappa, bound, r2, r3)


def theta_components(tau, z, coset, kappa: float = 1.0, reduce_z: bool = True) -> ThetaComponents:
    """v times the lambda = 0, isotropic, q > 0 and q < 0 parts of the Siegel theta sum."""
    t = _as_point(tau)
    zp = _as_point(z)
    c00, c0, c1, c2, _ = _siegel_raw(t, zp, coset, kappa, reduce_z)
    v = t.y
    return ThetaComponents(v * c00, v * c0, v * c1, v * c2)


def siegel_theta(tau, z, coset, kappa: float = 1.0, reduce_z: bool = True) -> complex:
    """sum_lam e^{2 pi i q(lam) u} e^{-pi v (lam, lam)_z} over the coset."""
    c00, c0, c1, c2, _ = _siegel_raw(_as_point(tau), _as_point(z), coset, kappa, reduce_z)
    return c00 + c0 + c1 + c2


def vartheta(tau, z, coset, kappa: float = 1.0, reduce_z: bool = True) -> complex:
    return _as_point(tau).y * siegel_theta(tau, z, coset, kappa, reduce_z)


_GL20_X, _GL20_W = np.polynomial.legendre.leggauss(20)


def _gaussian_line_integral(a: float) -> float:
    """int_R e^{-pi a t^2} dt by composite Gauss-Legendre on the effective support."""
    half = math.sqrt(TAIL_EXPONENT / (math.pi * a))
    edges = np.linspace(-half, half, 9)
    total = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        t = 0.5 * (hi - lo) * _GL20_X + 0.5 * (hi + lo)
        total.append(0.5 * (hi - lo) * float(np.dot(_GL20_W, np.exp(-math.pi * a * t * t))))
    return math.fsum(total)


def div_part(tau, z, coset, mode: str = "closed", kappa: float = 1.0) -> complex:
    """Contribution of the lattice directions collapsing at the cusp.

    closed:   y v^{1/2} kappa^{-1/2} theta_Jac(tau, coset)
    integral: y v sum_{x0} e^{2 pi i u x0^2 - 2 pi v x0^2} int_R e^{-pi kappa v t^2} dt
    """
    t = _as_point(tau)
    zp = _as_point(z)
    if mode == "closed":
        return zp.y * math.sqrt(t.y / kappa) * jacobi_theta(t, coset)
    if mode != "integral":
        raise ValueError(f"unknown mode {mode!r}")
    gauss = _gaussian_line_integral(kappa * t.y)
    if not math.isfinite(gauss) or gauss <= 0:
        raise ArithmeticError("Gaussian quadrature failed")
    shift = 0.5 if CosetId.parse(coset) is CosetId.MU1 else 0.0
    n_max = math.ceil(math.sqrt(TAIL_EXPONENT / (2.0 * math.pi * t.y))) + 1
    terms = []
    for k in range(-n_max, n_max + 1):
        x0 = k + shift
        terms.append(cmath.exp(2j * math.pi * x0 * x0 * complex(t.x, t.y)))
    s = complex(math.fsum(w.real for w in terms), math.fsum(w.imag for w in terms))
    return zp.y * t.y * gauss * s


def conv_part(tau, z, coset, kappa: float = 1.0, reduce_z: bool = True) -> complex:
    """vartheta minus div_part; decays rapidly as Im z grows."""
    return vartheta(tau, z, coset, kappa, reduce_z) - div_part(tau, z, coset, "closed", kappa)


def constant_u_term(F: Callable, v: float, z=None, tol: float = 1e-11, max_nodes: int = 8192) -> complex:
    """int_{-1/2}^{1/2} F(u + i v) du (F(tau) or F(tau, z) when z is given)."""

    def call(u):
        tau = complex(u, v)
        return complex(F(tau) if z is None else F(tau, z))

    left, right = call(-0.5), call(0.5)
    if abs(left - right) > 1e-9 * max(1.0, abs(left)):
        raise NonPeriodicError(f"F(-1/2 + iv) = {left} differs from F(1/2 + iv) = {right}")
    n = 16
    prev = None
    while n <= max_nodes:
        x, w = np.polynomial.legendre.leggauss(n)
        vals = np.array([call(0.5 * xi) for xi in x])
        cur = complex(0.5 * np.dot(w, vals))
        if prev is not None and abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
        n *= 2
    raise ArithmeticError("u-average did not stabilise")
