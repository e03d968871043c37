"""The discriminant form Delta, Petersson log-norms and input-form data."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from . import kernels
from .hdomain import HPoint, reduce
from .qspace import CosetId
from .specfun import EULER_GAMMA

__all__ = [
    "DELTA_WEIGHT",
    "InputFormError",
    "PeterssonValue",
    "WeaklyHolomorphicInput",
    "borcherds_relation_rhs",
    "delta_input",
    "phi01_input",
    "delta_log",
    "delta_log_array",
]

DELTA_WEIGHT = 12
DIGAMMA_ONE = -EULER_GAMMA


class InputFormError(ValueError):
    """Malformed weakly holomorphic input data."""


def _parse_complex(c) -> complex:
    if isinstance(c, (int, float)):
        return complex(c)
    if isinstance(c, (list, tuple)) and len(c) == 2:
        return complex(float(c[0]), float(c[1]))
    if isinstance(c, str):
        try:
            return complex(float(Fraction(c)))
        except ValueError:
            return complex(c.replace(" ", ""))
    raise InputFormError(f"cannot read coefficient {c!r}")


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class WeaklyHolomorphicInput:
    """f = sum_j sum_n c_j(n) q^n phi_j, finitely many terms per coset.

    ``mu1_offset`` records the fractional part that exponents on mu1 must
    carry (the convention for the dual Weil representation).
    """

    coefficients: dict = field(default_factory=dict)
    weight: Fraction = Fraction(-1, 2)
    mu1_offset: Fraction = Fraction(-1, 4)

    def __post_init__(self):
        coeffs = {}
        for key, terms in self.coefficients.items():
            coset = CosetId.parse(key)
            parsed = sorted((Fraction(n), complex(c)) for n, c in terms)
            coeffs[coset] = tuple(parsed)
        coeffs.setdefault(CosetId.MU0, ())
        coeffs.setdefault(CosetId.MU1, ())
        if not any(n == 0 for n, _ in coeffs[CosetId.MU0]):
            coeffs[CosetId.MU0] = tuple(sorted(coeffs[CosetId.MU0] + ((Fraction(0), 0j),)))
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "weight", Fraction(self.weight))
        object.__setattr__(self, "mu1_offset", Fraction(self.mu1_offset))
        self.validate()

    def validate(self) -> None:
        for n, _ in self.coefficients[CosetId.MU0]:
            if n.denominator != 1:
                raise InputFormError(f"mu0 exponent {n} is not integral")
        for n, _ in self.coefficients[CosetId.MU1]:
            if (n - self.mu1_offset).denominator != 1:
                raise InputFormError(f"mu1 exponent {n} is not in {self.mu1_offset} + Z")

    def c(self, coset, n) -> complex:
        n = Fraction(n)
        for m, val in self.coefficients[CosetId.parse(coset)]:
            if m == n:
                return val
        return 0j

    def constant_term(self, coset=CosetId.MU0) -> complex:
        return self.c(coset, 0)

    @property
    def c00(self) -> complex:
        return self.constant_term(CosetId.MU0)

    def principal_part(self) -> dict:
        return {k: tuple(t for t in v if t[0] < 0) for k, v in self.coefficients.items()}

    def evaluate(self, coset, tau: complex) -> complex:
        """The finite q-series of one component at tau."""
        total = 0j
        for n, val in self.coefficients[CosetId.parse(coset)]:
            total += val * np.exp(2j * math.pi * float(n) * tau)
        return complex(total)

    def evaluate_array(self, coset, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        tau = np.asarray(u) + 1j * np.asarray(v)
        total = np.zeros(tau.shape, dtype=complex)
        for n, val in self.coefficients[CosetId.parse(coset)]:
            total = total + val * np.exp(2j * math.pi * float(n) * tau)
        return total

    # serialisation ---------------------------------------------------------

    def to_json(self) -> str:
        def enc(c: complex):
            return _fmt_fraction(Fraction(c.real).limit_denominator(10**12)) if c.imag == 0 and float(
                Fraction(c.real).limit_denominator(10**12)) == c.real else [c.real, c.imag]

        doc = {
            "weight": _fmt_fraction(self.weight),
            "mu1_offset": _fmt_fraction(self.mu1_offset),
            "cosets": {
                k.value: [[_fmt_fraction(n), enc(c)] for n, c in v]
                for k, v in sorted(self.coefficients.items(), key=lambda kv: kv[0].value)
            },
        }
        return json.dumps(doc, sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, doc: dict) -> "WeaklyHolomorphicInput":
        if "cosets" not in doc:
            raise InputFormError("missing 'cosets'")
        coeffs = {}
        for key, terms in doc["cosets"].items():
            try:
                coeffs[key] = [(Fraction(str(n)), _parse_complex(c)) for n, c in terms]
            except (TypeError, ValueError) as exc:
                raise InputFormError(f"bad terms for {key}: {exc}") from exc
        return cls(
            coefficients=coeffs,
            weight=Fraction(str(doc.get("weight", "-1/2"))),
            mu1_offset=Fraction(str(doc.get("mu1_offset", "-1/4"))),
        )

    @classmethod
    def from_json(cls, text: str) -> "WeaklyHolomorphicInput":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> "WeaklyHolomorphicInput":
        return cls.from_json(Path(path).read_text())


def delta_input() -> WeaklyHolomorphicInput:
    """The shipped input data for Delta (only its constant term is pinned)."""
    text = resources.files("swb").joinpath("data/delta_input.json").read_text()
    return WeaklyHolomorphicInput.from_json(text)


def _series_mul(a: list, b: list, n: int) -> list:
    out = [0] * n
    for i, ai in enumerate(a[:n]):
        if ai:
            for j in range(n - i):
                out[i + j] += ai * b[j]
    return out


def _series_div(a: list, b: list, n: int) -> list:
    """a / b for power series with b[0] = 1 (integer arithmetic)."""
    out = [0] * n
    for k in range(n):
        out[k] = a[k] - sum(out[i] * b[k - i] for i in range(k))
    return out


def _theta_zeta_coeff(kind: str, k: int, n: int) -> list:
    """Coefficient of zeta^k in theta_kind(tau, z)^2 as a series in p = q^{1/2}
    (theta_2 with its q^{1/4} prefactor removed)."""
    out = [0] * n
    r = math.isqrt(n) + 2
    for a in range(-r - abs(k), r + abs(k) + 1):
        if kind == "2":
            b = k - 1 - a
            e = a * (a + 1) + b * (b + 1)
            sign = 1
        else:
            b = k - a
            e = a * a + b * b
            sign = (-1) ** (k % 2) if kind == "4" else 1
        if 0 <= e < n:
            out[e] += sign
    return out


def _theta_null_squared(kind: str, n: int) -> list:
    r = math.isqrt(n) + 2
    single = [0] * n
    for a in range(-r, r + 1):
        e = a * (a + 1) if kind == "2" else a * a
        if e < n:
            single[e] += (-1) ** (a % 2) if kind == "4" else 1
    return _series_mul(single, single, n)


def phi01_input(n_terms: int = 40) -> WeaklyHolomorphicInput:
    """Theta decomposition (h_0, h_1) of the weak Jacobi form phi_{0,1}.

    phi_{0,1} = 4 sum_i (theta_i(tau, z) / theta_i(tau, 0))^2 over i = 2, 3, 4,
    and h_mu collects the coefficients c(n, r) with r = mu mod 2.  The pair
    is weakly holomorphic of weight -1/2 and h_0 theta_0 + h_1 theta_1 = 12.
    """
    n = 2 * n_terms + 2
    h = {}
    for k in (0, 1):
        total = [0] * n
        for kind in ("2", "3", "4"):
            num = _theta_zeta_coeff(kind, k, n)
            den = _theta_null_squared(kind, n)
            lead = den[0]
            q = _series_div([c // lead if c % lead == 0 else Fraction(c, lead) for c in num],
                            [c // lead for c in den], n)
            total = [t + 4 * c for t, c in zip(total, q)]
        if any(total[1::2]):
            raise ArithmeticError("odd powers of q^(1/2) survived")
        h[k] = total[0::2][: n_terms + 1]
    mu0 = [[str(m), str(c)] for m, c in enumerate(h[0]) if c]
    mu1 = [[_fmt_fraction(Fraction(4 * m - 1, 4)), str(c)] for m, c in enumerate(h[1]) if c]
    return WeaklyHolomorphicInput.from_dict({"cosets": {"mu0": mu0, "mu1": mu1}})


@dataclass(frozen=True)
class PeterssonValue:
    log_abs: float
    log_pet: float


def delta_log_array(x, y, reduce_points: bool = True):
    """(log|Delta|, log||Delta||_Pet) on arrays; points are reduced first."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xf, yf = x.ravel().copy(), y.ravel().copy()
    # log|Delta| is not invariant, so reduce only for log_pet and then undo
    # the weight factor: log|Delta(z)| = log_pet(z*) - 6 log y
    if reduce_points:
        for i in range(xf.size):
            if abs(xf[i]) > 0.5 or xf[i] ** 2 + yf[i] ** 2 < 1.0:
                p, _ = reduce(HPoint(float(xf[i]), float(yf[i])))
                xf[i], yf[i] = p.x, p.y
    log_abs_star = kernels.log_delta(xf, yf)
    log_pet = log_abs_star + 0.5 * DELTA_WEIGHT * np.log(yf)
    log_abs = log_pet - 0.5 * DELTA_WEIGHT * np.log(y.ravel())
    return log_abs.reshape(x.shape), log_pet.reshape(x.shape)


def delta_log(z: HPoint) -> PeterssonValue:
    """log|Delta(z)| and log|Delta(z) y^6|."""
    la, lp = delta_log_array(np.array([z.x]), np.array([z.y]))
    return PeterssonValue(float(la[0]), float(lp[0]))


def borcherds_relation_rhs(f: WeaklyHolomorphicInput, phi_value: float, y: float) -> float:
    """-Phi/4 - (c0(0)/2)(log y + Gamma'(1)/2 + log sqrt(2 pi))."""
    c00 = f.c00.real
    return -phi_value / 4.0 - 0.5 * c00 * (math.log(y) + DIGAMMA_ONE / 2.0 + 0.5 * math.log(2.0 * math.pi))
