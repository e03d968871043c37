"""numpy implementations of the hot loops (fallback for the compiled core)."""
from __future__ import annotations

import math

import numpy as np

TWO_PI = 2.0 * math.pi


def _lattice_arrays(x, y, shift, kappa, bound, r2, r3):
    k = kappa / (y * y)
    l3 = np.arange(-math.floor(r3 + 1e-9), math.floor(r3 + 1e-9) + 1, dtype=float)
    n2 = np.arange(math.ceil(-r2 - shift - 1e-9), math.floor(r2 - shift + 1e-9) + 1, dtype=float)
    L3, N2 = np.meshgrid(l3, n2, indexing="ij")
    L3 = L3.ravel()
    L2 = N2.ravel() + shift
    c = 2.0 * L2 * x - L3 * (x * x + y * y)
    B = 2.0 * L3 + 2.0 * k * c
    C = 2.0 * L2 * L2 + k * c * c - bound
    disc = B * B - 4.0 * k * C
    ok = disc >= 0
    L3, L2, c, B, disc = L3[ok], L2[ok], c[ok], B[ok], disc[ok]
    sq = np.sqrt(disc)
    lo = np.ceil((-B - sq) / (2.0 * k) - 1e-9)
    hi = np.floor((-B + sq) / (2.0 * k) + 1e-9)
    cnt = np.maximum(hi - lo + 1, 0).astype(np.int64)
    total = int(cnt.sum())
    idx = np.repeat(np.arange(len(cnt)), cnt)
    start = np.cumsum(cnt) - cnt
    L1 = lo[idx] + (np.arange(total) - start[idx])
    L2 = L2[idx]
    L3 = L3[idx]
    d = L1 + c[idx]
    maj = 2.0 * L2 * L2 + 2.0 * L1 * L3 + k * d * d
    keep = maj <= bound * (1.0 + 1e-14)
    return L1[keep], L2[keep], L3[keep], maj[keep]


def siegel_sum(x, y, u, v, shift, kappa, bound, r2, r3):
    """Components (c00, c0, c1, c2) of sum_lam e^{2 pi i q u - pi v maj}, and the count."""
    L1, L2, L3, maj = _lattice_arrays(x, y, shift, kappa, bound, r2, r3)
    q4 = np.rint(4.0 * (L2 * L2 + L1 * L3))
    phase = np.exp(1j * TWO_PI * (q4 / 4.0) * u - math.pi * v * maj)
    zero = (L1 == 0) & (L2 == 0) & (L3 == 0)
    iso = (q4 == 0) & ~zero
    out = []
    for mask in (zero, iso, q4 > 0, q4 < 0):
        sel = phase[mask]
        out.append(complex(math.fsum(sel.real), math.fsum(sel.imag)))
    return out[0], out[1], out[2], out[3], len(maj)


def log_delta(x, y):
    """-2 pi y + 24 sum_n log|1 - e^{2 pi i n z}| for arrays x, y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n_max = int(math.ceil(42.0 / (TWO_PI * float(np.min(y))))) + 1
    out = -TWO_PI * y
    for n in range(1, n_max + 1):
        r = np.exp(-TWO_PI * n * y)
        out = out + 12.0 * np.log1p(r * r - 2.0 * r * np.cos(TWO_PI * n * x))
    return out


def eis_fourier(x, y, coeff, cosh_nu, cosh_t, weights):
    """sum_n coeff[n-1] K(2 pi n y) cos(2 pi n x), K by the supplied trapezoid nodes."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = np.zeros(x.shape, dtype=complex)
    wc = weights * cosh_nu
    for n in range(1, len(coeff) + 1):
        X = TWO_PI * n * y
        kv = np.exp(-np.multiply.outer(X, cosh_t)) @ wc
        out += coeff[n - 1] * kv * np.cos(TWO_PI * n * x)
    return out
