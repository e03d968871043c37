"""The rational quadratic space of signature (2, 1) and its lattice.

Vectors are triples (l1, l2, l3) standing for the trace-zero matrix
[[l2, l1], [l3, -l2]] with q = -det = l2^2 + l1 l3.  The lattice L has
l1, l2, l3 integral; its dual L' allows l2 in (1/2)Z, so L'/L has two
cosets, mu0 (l2 integral) and mu1 (l2 in 1/2 + Z).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .hdomain import BudgetExceeded, HPoint

__all__ = [
    "BudgetExceeded",
    "CosetId",
    "LatticeVector",
    "MajorantSplit",
    "act",
    "bilinear",
    "coset_of",
    "gram_matrix",
    "lattice_enum",
    "majorant",
    "majorant_gram",
    "majorant_split",
    "q_form",
]


class CosetId(Enum):
    MU0 = "mu0"
    MU1 = "mu1"

    @property
    def shift(self) -> Fraction:
        return Fraction(0) if self is CosetId.MU0 else Fraction(1, 2)

    @classmethod
    def parse(cls, tag) -> "CosetId":
        if isinstance(tag, CosetId):
            return tag
        return cls(str(tag).lower())


@dataclass(frozen=True)
class LatticeVector:
    l1: Fraction
    l2: Fraction
    l3: Fraction

    def __post_init__(self):
        for name in ("l1", "l2", "l3"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.l1.denominator != 1 or self.l3.denominator != 1 or (2 * self.l2).denominator != 1:
            raise ValueError(f"not in the dual lattice: {self}")

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(-self.l1, -self.l2, -self.l3)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.l1, self.l2, self.l3)


@dataclass(frozen=True)
class MajorantSplit:
    q_total: Fraction
    q_pos: float
    q_neg: float
    kappa: float

    @property
    def majorant(self) -> float:
        """(lambda, lambda)_z = 2 q_pos - 2 q_neg."""
        return 2.0 * self.q_pos - 2.0 * self.q_neg


def q_form(lam: LatticeVector) -> Fraction:
    return lam.l2 * lam.l2 + lam.l1 * lam.l3


def bilinear(lam: LatticeVector, mu: LatticeVector) -> Fraction:
    return 2 * lam.l2 * mu.l2 + lam.l1 * mu.l3 + lam.l3 * mu.l1


def gram_matrix() -> np.ndarray:
    """Gram matrix of the bilinear form in (l1, l2, l3) coordinates."""
    return np.array([[0.0, 0.0, 1.0], [0.0, 2.0, 0.0], [1.0, 0.0, 0.0]])


def coset_of(lam: LatticeVector) -> CosetId:
    return CosetId.MU0 if lam.l2.denominator == 1 else CosetId.MU1


def _inverse(g):
    (a, b), (c, d) = g
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant 1")
    return ((d, -b), (-c, a))


def act(g, lam: LatticeVector) -> LatticeVector:
    """Conjugation action M(g.lam) = g M(lam) g^{-1}, in exact arithmetic."""
    (a, b), (c, d) = g
    gi = _inverse(g)
    m = ((lam.l2, lam.l1), (lam.l3, -lam.l2))
    t = (
        (a * m[0][0] + b * m[1][0], a * m[0][1] + b * m[1][1]),
        (c * m[0][0] + d * m[1][0], c * m[0][1] + d * m[1][1]),
    )
    r = (
        (t[0][0] * gi[0][0] + t[0][1] * gi[1][0], t[0][0] * gi[0][1] + t[0][1] * gi[1][1]),
        (t[1][0] * gi[0][0] + t[1][1] * gi[1][0], t[1][0] * gi[0][1] + t[1][1] * gi[1][1]),
    )
    return LatticeVector(r[0][1], r[0][0], r[1][0])


def _D(l1, l2, l3, x: float, y: float):
    return l1 + 2.0 * l2 * x - l3 * (x * x + y * y)


def majorant_split(lam: LatticeVector, z: HPoint, kappa: float = 1.0) -> MajorantSplit:
    """Split q(lam) into its parts on the positive plane and negative line at z.

    q_neg = -kappa D^2 / (4 y^2) with D = l1 + 2 l2 x - l3 |z|^2.
    """
    q = q_form(lam)
    d = _D(float(lam.l1), float(lam.l2), float(lam.l3), z.x, z.y)
    q_neg = -kappa * d * d / (4.0 * z.y * z.y)
    return MajorantSplit(q_total=q, q_pos=float(q) - q_neg, q_neg=q_neg, kappa=kappa)


def majorant(lam: LatticeVector, z: HPoint, kappa: float = 1.0) -> float:
    return majorant_split(lam, z, kappa).majorant


def majorant_gram(z: HPoint, kappa: float = 1.0) -> np.ndarray:
    """Matrix G with (lam, lam)_z = lam^T G lam."""
    a = np.array([1.0, 2.0 * z.x, -(z.x * z.x + z.y * z.y)])
    return 2.0 * np.array([[0.0, 0.0, 0.5], [0.0, 1.0, 0.0], [0.5, 0.0, 0.0]]) + kappa / (z.y * z.y) * np.outer(a, a)


def enumeration_ranges(z: HPoint, bound: float, kappa: float) -> tuple[float, float]:
    """Bounds |l2| <= r2 and |l3| <= r3 for majorant <= bound."""
    ginv = np.linalg.inv(majorant_gram(z, kappa))
    return math.sqrt(bound * ginv[1, 1]), math.sqrt(bound * ginv[2, 2])


def lattice_enum(
    coset: CosetId | str,
    z: HPoint,
    bound: float,
    kappa: float = 1.0,
    max_points: int = 2_000_000,
) -> list[LatticeVector]:
    """All lattice vectors of the coset with majorant <= bound, sorted."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    coset = CosetId.parse(coset)
    r2, r3 = enumeration_ranges(z, bound, kappa)
    x, y = z.x, z.y
    k = kappa / (y * y)
    shift = 0.5 if coset is CosetId.MU1 else 0.0
    out: list[tuple[int, int, int]] = []
    n2_lo = math.ceil(-r2 - shift - 1e-9)
    n2_hi = math.floor(r2 - shift + 1e-9)
    for l3 in range(-math.floor(r3 + 1e-9), math.floor(r3 + 1e-9) + 1):
        for n2 in range(n2_lo, n2_hi + 1):
            l2 = n2 + shift
            c = 2.0 * l2 * x - l3 * (x * x + y * y)
            # 2 l2^2 + 2 l1 l3 + k (l1 + c)^2 <= bound, quadratic in l1
            A = k
            B = 2.0 * l3 + 2.0 * k * c
            C = 2.0 * l2 * l2 + k * c * c - bound
            disc = B * B - 4.0 * A * C
            if disc < 0:
                continue
            sq = math.sqrt(disc)
            lo = math.ceil((-B - sq) / (2.0 * A) - 1e-9)
            hi = math.floor((-B + sq) / (2.0 * A) + 1e-9)
            for l1 in range(lo, hi + 1):
                d = l1 + c
                if 2.0 * l2 * l2 + 2.0 * l1 * l3 + k * d * d <= bound * (1.0 + 1e-14):
                    out.append((l1, int(round(2 * l2)), l3))
            if len(out) > max_points:
                raise BudgetExceeded(f"more than {max_points} lattice points below bound {bound}")
    out.sort(key=lambda t: (t[2], t[1], t[0]))
    return [LatticeVector(l1, Fraction(m2, 2), l3) for l1, m2, l3 in out]
