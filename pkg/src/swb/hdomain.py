"""Upper half-plane geometry and quadrature against dmu = dx dy / y^2.

Integrands are vectorised: ``f(x, y)`` receives two equally shaped float
arrays and returns an array of the same shape (real or complex).  Use
:func:`pointwise` to adapt a scalar ``HPoint -> complex`` function.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

__all__ = [
    "BudgetExceeded",
    "CuspBox",
    "DivergentRegionError",
    "FundCompactPart",
    "FundamentalTruncated",
    "HPoint",
    "QuadratureResult",
    "Region",
    "RegionKind",
    "ZagierStrip",
    "apply_matrix",
    "euler_phi_table",
    "integrate",
    "pointwise",
    "reduce",
    "region_contains",
    "strip_weight",
    "volume",
]


class BudgetExceeded(RuntimeError):
    """Quadrature needed more cells than allowed."""


class DivergentRegionError(ValueError):
    """The requested region has infinite hyperbolic area."""


@dataclass(frozen=True)
class HPoint:
    x: float
    y: float

    def __post_init__(self):
        if not (self.y > 0.0):
            raise ValueError(f"HPoint needs y > 0, got {self.y!r}")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @classmethod
    def from_complex(cls, z: complex) -> "HPoint":
        return cls(float(z.real), float(z.imag))


class RegionKind(Enum):
    FUNDAMENTAL_TRUNCATED = "fundamental_truncated"
    CUSP_BOX = "cusp_box"
    FUND_COMPACT_PART = "fund_compact_part"
    ZAGIER_STRIP = "zagier_strip"


@dataclass(frozen=True)
class Region:
    kind: RegionKind
    T: float = 1.0
    c_max: int = 0

    def __post_init__(self):
        if self.T < 1.0:
            raise ValueError("truncation height must be >= 1")
        if self.kind is RegionKind.ZAGIER_STRIP and self.c_max < 0:
            raise ValueError("c_max must be non-negative")


def FundamentalTruncated(T_hat: float) -> Region:
    return Region(RegionKind.FUNDAMENTAL_TRUNCATED, float(T_hat))


def CuspBox(T: float) -> Region:
    return Region(RegionKind.CUSP_BOX, float(T))


def FundCompactPart() -> Region:
    return Region(RegionKind.FUND_COMPACT_PART, 1.0)


def ZagierStrip(T_hat: float, c_max: int = 500) -> Region:
    return Region(RegionKind.ZAGIER_STRIP, float(T_hat), int(c_max))


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    abs_error_estimate: float
    cells_used: int


def pointwise(f: Callable[[HPoint], complex]) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Wrap a scalar integrand so it accepts coordinate arrays."""

    def vec(x, y):
        out = np.array([complex(f(HPoint(float(a), float(b)))) for a, b in zip(np.ravel(x), np.ravel(y))])
        return out.reshape(np.shape(x))

    return vec


# ---------------------------------------------------------------------------
# reduction


def apply_matrix(g, z: complex) -> complex:
    (a, b), (c, d) = g
    return (a * z + b) / (c * z + d)


def _matmul(g, h):
    return (
        (g[0][0] * h[0][0] + g[0][1] * h[1][0], g[0][0] * h[0][1] + g[0][1] * h[1][1]),
        (g[1][0] * h[0][0] + g[1][1] * h[1][0], g[1][0] * h[0][1] + g[1][1] * h[1][1]),
    )


def reduce(z: HPoint) -> tuple[HPoint, tuple[tuple[int, int], tuple[int, int]]]:
    """Move z into the standard fundamental domain.

    Returns (z*, gamma) with gamma in SL2(Z) and gamma z = z*.  Ties on the
    vertical edges go to x = -1/2 so that the map is idempotent.
    """
    g = ((1, 0), (0, 1))
    x, y = float(z.x), float(z.y)
    for _ in range(10_000):
        n = math.floor(x + 0.5)
        if n:
            x -= n
            g = _matmul(((1, -n), (0, 1)), g)
        r2 = x * x + y * y
        if r2 < 1.0:
            x, y = -x / r2, y / r2
            g = _matmul(((0, -1), (1, 0)), g)
            continue
        break
    else:  # pragma: no cover - the loop contracts geometrically
        raise RuntimeError("reduction did not terminate")
    return HPoint(x, y), g


# ---------------------------------------------------------------------------
# membership


def euler_phi_table(n: int) -> np.ndarray:
    """phi(0..n) by sieve (phi(0) = 0)."""
    phi = np.arange(n + 1, dtype=np.int64)
    for p in range(2, n + 1):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    return phi


def _in_ford_disc(x: float, y: float, T_hat: float, c_max: int) -> bool:
    if y <= 0.0:
        return False
    c_top = min(c_max, int(math.floor(1.0 / math.sqrt(y * T_hat))) + 1)
    for c in range(1, c_top + 1):
        r = 1.0 / (2.0 * c * c * T_hat)
        if y >= 2.0 * r:
            continue
        a = round(c * x)
        for aa in (a - 1, a, a + 1):
            if math.gcd(aa, c) != 1:
                continue
            dx = x - aa / c
            if dx * dx + (y - r) ** 2 < r * r:
                return True
    return False


def region_contains(r: Region, z: HPoint) -> bool:
    x, y = z.x, z.y
    if r.kind is RegionKind.FUNDAMENTAL_TRUNCATED:
        return abs(x) <= 0.5 and x * x + y * y >= 1.0 and y < r.T
    if r.kind is RegionKind.CUSP_BOX:
        return abs(x) <= 0.5 and 1.0 < y < r.T
    if r.kind is RegionKind.FUND_COMPACT_PART:
        return abs(x) <= 0.5 and x * x + y * y >= 1.0 and y <= 1.0
    if r.kind is RegionKind.ZAGIER_STRIP:
        if abs(x) > 0.5 or not (0.0 < y <= r.T):
            return False
        return not _in_ford_disc(x, y, r.T, r.c_max)
    raise ValueError(r.kind)  # pragma: no cover


# ---------------------------------------------------------------------------
# tensor Gauss-Kronrod cells

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
# 15 Kronrod nodes on [-1, 1] in increasing order, Gauss-7 subset flagged.
_K_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_K_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
_G_MASK = np.zeros(15, dtype=bool)
_G_MASK[1::2] = True
_G_W = np.zeros(15)
_G_W[1::2] = np.concatenate([_WG[:-1], _WG[::-1]])
# Map to [0, 1].
_U = 0.5 * (_K_NODES + 1.0)
_WK1 = 0.5 * _K_W
_WG1 = 0.5 * _G_W
_WK2 = np.outer(_WK1, _WK1).ravel()
_WG2 = np.outer(_WG1, _WG1).ravel()


Patch = Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]]


def _patches(r: Region) -> list[Patch]:
    """Maps from the unit square to the region: (p, q) -> (x, y, dmu/dp dq)."""
    if r.kind is RegionKind.FUNDAMENTAL_TRUNCATED:
        T_hat = r.T

        def fund(p, q):
            x = p - 0.5
            b = np.sqrt(1.0 - x * x)
            span = np.log(T_hat / b)
            y = b * np.exp(q * span)
            return x, y, span / y

        return [fund]
    if r.kind is RegionKind.CUSP_BOX:
        log_T = math.log(r.T)

        def cusp(p, q):
            y = np.exp(q * log_T)
            return p - 0.5, y, np.full_like(y, log_T) / y

        return [cusp]
    if r.kind is RegionKind.FUND_COMPACT_PART:

        def compact(p, q):
            x = p - 0.5
            b = np.sqrt(1.0 - x * x)
            h = 1.0 - b
            y = b + h * q
            return x, y, h / (y * y)

        return [compact]
    raise ValueError(f"no cell patches for {r.kind}")


@dataclass(order=True)
class _Cell:
    err: float
    order_id: int
    patch: int = field(compare=False)
    p0: float = field(compare=False)
    p1: float = field(compare=False)
    q0: float = field(compare=False)
    q1: float = field(compare=False)
    value: complex = field(compare=False, default=0.0)


def _eval_cells(f, patches, boxes):
    """Kronrod/Gauss tensor estimates for a batch of parameter boxes."""
    if not boxes:
        return []
    pu, qu = np.meshgrid(_U, _U, indexing="ij")
    pu = pu.ravel()
    qu = qu.ravel()
    by_patch: dict[int, list[int]] = {}
    for i, b in enumerate(boxes):
        by_patch.setdefault(b[0], []).append(i)
    out: list = [None] * len(boxes)
    for pidx, idxs in by_patch.items():
        arr = np.array([boxes[i][1:] for i in idxs])
        p0, p1, q0, q1 = arr.T
        P = p0[:, None] + (p1 - p0)[:, None] * pu[None, :]
        Q = q0[:, None] + (q1 - q0)[:, None] * qu[None, :]
        x, y, jac = patches[pidx](P, Q)
        vals = np.asarray(f(x, y)) * jac
        area = (p1 - p0) * (q1 - q0)
        vk = (vals @ _WK2) * area
        vg = (vals @ _WG2) * area
        for j, i in enumerate(idxs):
            out[i] = (complex(vk[j]), float(abs(vk[j] - vg[j])))
    return out


def _fsum_complex(values) -> complex:
    vals = list(values)
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


def integrate(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    r: Region,
    tol: float = 1e-10,
    *,
    rtol: float = 0.0,
    max_cells: int = 200_000,
    radial: bool = False,
    initial_grid: int = 4,
) -> QuadratureResult:
    """Adaptive cubature of f over r against dx dy / y^2.

    Stops once the summed per-cell error estimates fall below
    max(tol, rtol |value|).  With ``radial=True`` the integrand is f(y)
    only; this enables the fast path for ZagierStrip.
    """
    if tol <= 0 and rtol <= 0:
        raise ValueError("need a positive tolerance")
    if r.kind is RegionKind.ZAGIER_STRIP:
        if radial:
            return _strip_radial(f, r, tol, rtol)
        return _strip_general(f, r, tol, rtol)
    if radial:
        g = f
        f = lambda x, y: g(y)  # noqa: E731
    return _integrate_patches(f, _patches(r), tol, rtol, max_cells, initial_grid)


def _integrate_patches(f, patches, tol, rtol=0.0, max_cells=200_000, initial_grid=4) -> QuadratureResult:
    n0 = initial_grid
    boxes = [
        (pi, i / n0, (i + 1) / n0, j / n0, (j + 1) / n0)
        for pi in range(len(patches))
        for i in range(n0)
        for j in range(n0)
    ]
    counter = 0
    cells: list[_Cell] = []
    for b, (v, e) in zip(boxes, _eval_cells(f, patches, boxes)):
        cells.append(_Cell(e, counter, *b, value=v))
        counter += 1
    while True:
        total = _fsum_complex(c.value for c in cells)
        err = math.fsum(c.err for c in cells)
        target = max(tol, rtol * abs(total))
        if err <= target:
            break
        if len(cells) + 3 > max_cells:
            raise BudgetExceeded(f"{len(cells)} cells used, error {err:.3e} > {target:.3e}")
        # split every cell whose error is large for its parameter area, plus the worst one
        cells.sort(key=lambda c: (-c.err, c.order_id))
        budget = target / len(patches)
        split = [c for c in cells if c.err > 0.5 * budget * (c.p1 - c.p0) * (c.q1 - c.q0)]
        if not split:
            split = cells[: max(1, len(cells) // 10)]
        room = (max_cells - len(cells)) // 3
        split = split[: max(1, room)]
        keep = cells[len(split):] if split is cells[: len(split)] else [c for c in cells if c not in split]
        new_boxes = []
        for c in split:
            pm = 0.5 * (c.p0 + c.p1)
            qm = 0.5 * (c.q0 + c.q1)
            new_boxes += [
                (c.patch, c.p0, pm, c.q0, qm),
                (c.patch, c.p0, pm, qm, c.q1),
                (c.patch, pm, c.p1, c.q0, qm),
                (c.patch, pm, c.p1, qm, c.q1),
            ]
        cells = keep
        for b, (v, e) in zip(new_boxes, _eval_cells(f, patches, new_boxes)):
            cells.append(_Cell(e, counter, *b, value=v))
            counter += 1
    cells.sort(key=lambda c: c.order_id)
    return QuadratureResult(_fsum_complex(c.value for c in cells), err, len(cells))


# ---------------------------------------------------------------------------
# one-dimensional helpers


def _adaptive_1d(g, a: float, b: float, tol: float, max_panels: int = 20_000) -> tuple[complex, float, int]:
    """Adaptive GK15 on [a, b] for vectorised g."""
    panels = [(a, b)]
    done_v: list[complex] = []
    done_e: list[float] = []
    n_used = 0
    while panels:
        lo = np.array([p[0] for p in panels])
        hi = np.array([p[1] for p in panels])
        t = lo[:, None] + (hi - lo)[:, None] * _U[None, :]
        vals = np.asarray(g(t))
        vk = (vals @ _WK1) * (hi - lo)
        vg = (vals @ _WG1) * (hi - lo)
        errs = np.abs(vk - vg)
        n_used += len(panels)
        nxt = []
        width = b - a
        for i, (l, h) in enumerate(panels):
            if errs[i] <= tol * (h - l) / width or (h - l) < 1e-13 * width:
                done_v.append(complex(vk[i]))
                done_e.append(float(errs[i]))
            else:
                m = 0.5 * (l + h)
                nxt += [(l, m), (m, h)]
        if n_used > max_panels:
            raise BudgetExceeded("1D panel budget exhausted")
        panels = nxt
    return _fsum_complex(done_v), math.fsum(done_e), n_used


def _gl_unit(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


_GL10_U, _GL10_W1 = _gl_unit(10)
_GL20_U, _GL20_W1 = _gl_unit(20)
_GL40_U, _GL40_W1 = _gl_unit(40)


# ---------------------------------------------------------------------------
# Zagier strip


def _ford_chords(y: np.ndarray, T_hat: float, c_lo: int, c_hi: int, phi: np.ndarray) -> np.ndarray:
    """sum_{c_lo <= c <= c_hi} phi(c) * (chord length of S_{a/c} at height y)."""
    if c_hi < c_lo:
        return np.zeros_like(y)
    c = np.arange(c_lo, c_hi + 1, dtype=float)
    two_r = 1.0 / (c * c * T_hat)
    inside = np.clip(y[..., None] * (two_r - y[..., None]), 0.0, None)
    return (2.0 * np.sqrt(inside)) @ phi[c_lo : c_hi + 1].astype(float)


_PHI_CACHE: dict[int, np.ndarray] = {}


def _phi(n: int) -> np.ndarray:
    for k, v in _PHI_CACHE.items():
        if k >= n:
            return v
    v = euler_phi_table(max(n, 16))
    _PHI_CACHE[max(n, 16)] = v
    return v


def _model_start(c_max: int) -> int:
    """Discs beyond this denominator are represented by a density model."""
    return max(4 * c_max, 2000)


def _tail_cover(y: np.ndarray, T_hat: float, n: int, phi_sum: float) -> np.ndarray:
    """Covered x-length at height y from the discs with c > n.

    phi(c) is replaced by the density 6c/pi^2 from b = n + 1/2 on; the
    Stieltjes boundary term uses the exact count sum_{c <= n} phi(c).
    """
    b = n + 0.5
    s = np.clip(b * np.sqrt(y * T_hat), 0.0, 1.0)
    theta = np.arcsin(s)
    smooth = (12.0 / (math.pi**2 * T_hat)) * ((0.5 * math.pi - theta) / 2.0 - np.sin(2.0 * theta) / 4.0)
    g_b = 2.0 * np.sqrt(np.clip(y * (1.0 / (b * b * T_hat) - y), 0.0, None))
    return smooth - g_b * (phi_sum - 3.0 * b * b / math.pi**2)


def strip_weight(y, T_hat: float, c_max: int) -> np.ndarray:
    """x-length of the strip at height y, all Ford discs removed.

    Discs up to the model start are exact, the rest use the density model.
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if c_max == 0:
        return np.where(y <= T_hat, 1.0, 0.0)
    n = _model_start(c_max)
    phi = _phi(n)
    out = np.empty_like(y)
    for k, yk in enumerate(y):
        c_top = min(n, int(math.floor(1.0 / math.sqrt(yk * T_hat))) + 1)
        cover = _ford_chords(np.array([yk]), T_hat, 1, c_top, phi)[0]
        if yk < 1.0 / ((n + 0.5) ** 2 * T_hat):
            cover += _tail_cover(np.array([yk]), T_hat, n, float(np.sum(phi[1 : n + 1])))[0]
        out[k] = 1.0 - cover
    return out


def _strip_lower(F, T_hat: float, c0: int, c_max: int, tol: float) -> tuple[complex, float, int]:
    """int_0^{1/(c0^2 T_hat)} F(y) w(y) dy / y^2 for a radial F."""
    phi_n = _model_start(c_max)
    phi = _phi(phi_n)
    vals: list[complex] = []
    err = 0.0
    n_cells = 0

    # bands between consecutive disc tops, sqrt-substituted at the upper end
    if c_max > c0:
        cs = np.arange(c0, c_max, dtype=float)
        y_top = 1.0 / (cs * cs * T_hat)
        y_bot = 1.0 / ((cs + 1.0) ** 2 * T_hat)
        d = y_top - y_bot
        t = _GL20_U
        Y = y_top[:, None] - d[:, None] * t[None, :] ** 2
        W = 1.0 - _ford_chords(Y, T_hat, 1, c_max - 1, phi)
        # the chord of every disc c' <= c is active; inactive ones clip to zero
        integrand = np.asarray(F(Y)) * W / (Y * Y) * (2.0 * d[:, None] * t[None, :])
        band = integrand @ _GL20_W1
        vals.extend(complex(v) for v in band)
        n_cells += len(cs)
        # Richardson-style check with the 10-point rule on the coarsest band
        err += _band_error(F, T_hat, float(y_top[0]), float(y_bot[0]), c0, phi)

    # discs c_max < c <= n: each integrated over its own support
    phi_sum_cmax = None
    if phi_n > c_max:
        cs = np.arange(c_max + 1, phi_n + 1, dtype=float)
        two_r = 1.0 / (cs * cs * T_hat)
        ang = 0.5 * math.pi * _GL40_U
        s2 = np.sin(ang) ** 2
        Y = two_r[:, None] * s2[None, :]
        kern = 4.0 * np.cos(ang) ** 2 / s2 * (0.5 * math.pi) * _GL40_W1
        J = (np.asarray(F(Y)) * kern[None, :]).sum(axis=1)
        vals.append(-_fsum_complex(complex(v) * float(ph) for v, ph in zip(J, phi[c_max + 1 : phi_n + 1])))
        n_cells += len(cs)
    del phi_sum_cmax

    # below the smallest band: discs c <= c_max all active, density model past n
    y_min = 1.0 / (c_max * c_max * T_hat)
    y_b = 1.0 / ((phi_n + 0.5) ** 2 * T_hat)
    phi_sum_n = float(np.sum(phi[1 : phi_n + 1]))

    def w_low(y):
        w = 1.0 - _ford_chords(y, T_hat, 1, c_max, phi)
        return w - np.where(y < y_b, _tail_cover(np.minimum(y, y_b), T_hat, phi_n, phi_sum_n), 0.0)

    def g_upper(s):  # y in [y_b, y_min], y = y_min - (y_min - y_b) s^2
        y = y_min - (y_min - y_b) * s * s
        return np.asarray(F(y)) * w_low(y) / (y * y) * (2.0 * (y_min - y_b) * s)

    v, e, n = _adaptive_1d(g_upper, 0.0, 1.0, tol * 0.1)
    vals.append(v)
    err += e
    n_cells += n

    def g_log(u):  # y = y_b e^{-u}
        y = y_b * np.exp(-u)
        return np.asarray(F(y)) * w_low(y) / y

    v, e, n = _adaptive_1d(lambda s: g_log(s * s) * 2.0 * s, 0.0, 1.0, tol * 0.1)
    low = [v]
    err += e
    n_cells += n
    u0 = 1.0
    quiet = 0
    while quiet < 3:
        v, e, n = _adaptive_1d(g_log, u0, u0 + 4.0, tol * 0.05)
        low.append(v)
        err += e
        n_cells += n
        u0 += 4.0
        scale = max(abs(_fsum_complex(vals + low)), 1e-300)
        quiet = quiet + 1 if abs(v) < 1e-17 * scale else 0
        if u0 > 400.0:
            raise DivergentRegionError("integrand does not decay fast enough as y -> 0")
    vals.extend(low)
    return _fsum_complex(vals), err, n_cells


def _band_error(F, T_hat, y_top, y_bot, c, phi) -> float:
    d = y_top - y_bot
    out = []
    for xs, ws in ((_GL20_U, _GL20_W1), (_GL10_U, _GL10_W1)):
        Y = y_top - d * xs * xs
        W = 1.0 - _ford_chords(Y, T_hat, 1, c, phi)
        out.append(complex(np.dot(np.asarray(F(Y)) * W / (Y * Y) * 2.0 * d * xs, ws)))
    return abs(out[0] - out[1])


def _strip_radial(f, r: Region, tol: float, rtol: float) -> QuadratureResult:
    T_hat, c_max = r.T, r.c_max
    if c_max == 0:
        raise DivergentRegionError("no discs excised: the strip integral is not localised")
    tol = max(tol, 1e-15)
    pieces: list[complex] = []
    err = 0.0
    n_cells = 0
    lo, hi = -math.log(T_hat), math.log(T_hat)
    if hi > lo:
        # y in [1/T_hat, T_hat] has no discs
        v, e, n = _adaptive_1d(lambda u: np.asarray(f(np.exp(u))) / np.exp(u), lo, hi, tol * 0.25)
        pieces.append(v)
        err += e
        n_cells += n
    v, e, n = _strip_lower(f, T_hat, 1, c_max, tol)
    pieces.append(v)
    err += e
    n_cells += n
    return QuadratureResult(_fsum_complex(pieces), err, n_cells)


def _strip_general(f, r: Region, tol: float, rtol: float) -> QuadratureResult:
    """Non-radial integrands: exact disc excision down to y = 1/(c_g^2 T_hat)
    with c_g = min(c_max, 40); below that the x-average of f is combined with
    the radial weight."""
    T_hat, c_max = r.T, r.c_max
    if c_max == 0:
        raise DivergentRegionError("no discs excised: the strip integral is not localised")
    c_g = min(c_max, 40)
    pieces: list[complex] = []
    err = 0.0
    cells = 0
    if T_hat > 1.0:
        up = integrate(f, CuspBox(T_hat), tol=tol / 4.0)
        lo = _lower_box(f, T_hat, tol / 4.0)
        pieces += [up.value, lo.value]
        err += up.abs_error_estimate + lo.abs_error_estimate
        cells += up.cells_used + lo.cells_used
    band_vals = []
    for c in range(1, c_g):
        y_top = 1.0 / (c * c * T_hat)
        y_bot = 1.0 / ((c + 1) * (c + 1) * T_hat)
        d = y_top - y_bot
        for t, wt in zip(_GL20_U, _GL20_W1):
            yk = y_top - d * t * t
            xs, ws = _x_complement_nodes(yk, T_hat, c)
            vals = np.asarray(f(xs, np.full_like(xs, yk)))
            band_vals.append(complex(np.dot(vals, ws)) * wt * 2.0 * d * t / (yk * yk))
        cells += 1
    pieces.append(_fsum_complex(band_vals))

    def fbar(y):
        y = np.asarray(y, dtype=float)
        X = np.broadcast_to(_GL40_U - 0.5, y.shape + _GL40_U.shape)
        Y = np.broadcast_to(y[..., None], X.shape)
        return np.asarray(f(X, Y)) @ _GL40_W1

    v, e, n = _strip_lower(fbar, T_hat, c_g, max(c_max, c_g), tol)
    pieces.append(v)
    err += e
    cells += n
    return QuadratureResult(_fsum_complex(pieces), err, cells)


def _lower_box(f, T_hat: float, tol: float) -> QuadratureResult:
    """Strip part with 1/T_hat <= y <= 1 (no discs reach it)."""
    lo = 1.0 / T_hat
    span = -math.log(lo)

    def patch(p, q):
        y = lo * np.exp(q * span)
        return p - 0.5, y, np.full_like(y, span) / y

    return _integrate_patches(f, [patch], tol)


def _x_complement_nodes(y: float, T_hat: float, c_hi: int):
    """GL nodes and weights on [-1/2, 1/2] minus the chords of discs with c <= c_hi."""
    cuts = []
    for c in range(1, c_hi + 1):
        two_r = 1.0 / (c * c * T_hat)
        if y >= two_r:
            continue
        half = math.sqrt(y * (two_r - y))
        for a in range(-c, c + 1):
            if math.gcd(a, c) != 1:
                continue
            lo, hi = a / c - half, a / c + half
            if hi <= -0.5 or lo >= 0.5:
                continue
            cuts.append((max(lo, -0.5), min(hi, 0.5)))
    cuts.sort()
    segs = []
    cur = -0.5
    for lo, hi in cuts:
        if lo > cur:
            segs.append((cur, lo))
        cur = max(cur, hi)
    if cur < 0.5:
        segs.append((cur, 0.5))
    xs = [lo + (hi - lo) * _GL20_U for lo, hi in segs]
    ws = [(hi - lo) * _GL20_W1 for lo, hi in segs]
    return np.concatenate(xs), np.concatenate(ws)


# ---------------------------------------------------------------------------


def volume(r: Region) -> float:
    """Hyperbolic area (closed forms)."""
    if r.kind is RegionKind.FUNDAMENTAL_TRUNCATED:
        return math.pi / 3.0 - 1.0 / r.T
    if r.kind is RegionKind.CUSP_BOX:
        return 1.0 - 1.0 / r.T
    if r.kind is RegionKind.FUND_COMPACT_PART:
        return math.pi / 3.0 - 1.0
    raise DivergentRegionError("the Zagier strip has infinite hyperbolic area near y = 0")
