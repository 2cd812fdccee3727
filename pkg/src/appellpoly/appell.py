"""Appell sequences generated by a compactly supported distribution.

A distribution is carried as its exact moment generating series
``sum_j mu_j z^j / j!``. Its Appell sequence is read off from
``e^{xz} / mgf(z) = sum_m P_m(x) z^m / m!``, and the distributional pairing
``<(-1)^n phi^(n), p>`` is evaluated as ``<phi, p^(n)> = sum_k coeff_k(p^(n)) mu_k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import Q, Poly, poly_affine
from .series import Series, builtin_series, series_pow, series_recip


class InsufficientOrderError(ValueError):
    """The moment series is too short for the requested degree."""


@dataclass(frozen=True)
class MomentDistribution:
    mgf: Series
    name: str = ""
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.mgf.ring != Q:
            raise ValueError("moment series must be exact rational")
        if self.mgf[0] != 1:
            raise ValueError("moment series must be normalised to c_0 = 1")

    @property
    def order(self) -> int:
        return self.mgf.order

    @property
    def moments(self) -> list[Fraction]:
        return [math.factorial(j) * c for j, c in enumerate(self.mgf.coeffs)]

    def moment(self, k: int) -> Fraction:
        if k > self.order:
            raise InsufficientOrderError(f"moment {k} needs order >= {k}, have {self.order}")
        return math.factorial(k) * self.mgf[k]

    @property
    def mean(self) -> Fraction:
        return self.moment(1)

    @property
    def variance(self) -> Fraction:
        return self.moment(2) - self.moment(1) ** 2


def point_mass(order: int) -> MomentDistribution:
    return MomentDistribution(Series.one(order), "point_mass")


def bspline_distribution(N: int, order: int) -> MomentDistribution:
    """Uniform B-spline of order N: mgf ``((e^z-1)/z)^N``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return MomentDistribution(series_pow(builtin_series("expm1_over_z", order), N), "bspline", {"N": N})


def binomial_distribution(N: int, order: int) -> MomentDistribution:
    """Binomial weights ``C(N,k)/2^N`` on ``0..N``: mgf ``((e^z+1)/2)^N``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return MomentDistribution(
        series_pow(builtin_series("half_plus_half_exp", order), N), "binomial", {"N": N}
    )


def gaussian_distribution(order: int) -> MomentDistribution:
    """Standard normal, whose mgf ``e^{z^2/2}`` generates the Hermite polynomials."""
    return MomentDistribution(builtin_series("exp_half_z2", order), "gaussian")


@dataclass(frozen=True)
class AppellSequence:
    polys: tuple
    source: MomentDistribution | None = None

    def __getitem__(self, m: int) -> Poly:
        return self.polys[m]

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


def appell_from_distribution(phi: MomentDistribution, m_max: int = 10) -> AppellSequence:
    if phi.order < m_max:
        raise InsufficientOrderError(f"mgf order {phi.order} < m_max {m_max}")
    b = series_recip(phi.mgf.truncate(m_max)).coeffs
    polys = []
    for m in range(m_max + 1):
        fm = math.factorial(m)
        polys.append(Poly([Fraction(fm, math.factorial(k)) * b[m - k] for k in range(m + 1)], Q))
    return AppellSequence(tuple(polys), phi)


def is_appell(polys) -> bool:
    """Degree-m members with ``P_m' = m P_{m-1}``."""
    for m, p in enumerate(polys):
        if p.degree != m:
            return False
        if m and p.derivative() != polys[m - 1] * m:
            return False
    return True


def pair_derivative(phi: MomentDistribution, n: int, p: Poly) -> Fraction:
    """``<(-1)^n phi^(n), p>``, moved onto the polynomial side."""
    q = p.derivative(n)
    if q.degree > phi.order:
        raise InsufficientOrderError(f"degree {q.degree} exceeds available moments {phi.order}")
    mu = phi.moments
    return sum((c * mu[k] for k, c in enumerate(q.coeffs)), Fraction(0))


def biorthogonality_check(
    phi: MomentDistribution, seq, n_max: int, m_max: int
) -> list[list[Fraction]]:
    """Gram matrix ``G[n][m] = <(-1)^n phi^(n), P_m/m!>``; identity for a matched pair."""
    if len(seq) <= m_max:
        raise InsufficientOrderError(f"sequence has {len(seq)} members, need {m_max + 1}")
    scaled = [seq[m] / math.factorial(m) for m in range(m_max + 1)]
    return [[pair_derivative(phi, n, scaled[m]) for m in range(m_max + 1)] for n in range(n_max + 1)]


def is_identity(G) -> bool:
    return all(v == (1 if i == j else 0) for i, row in enumerate(G) for j, v in enumerate(row))


def standardize(seq, mu, sigma) -> AppellSequence:
    """``sigma^{-m} P_m(sigma x + mu)`` for each member."""
    if sigma == 0:
        raise ValueError("sigma must be nonzero")
    out = []
    inv = 1 / Fraction(sigma) if not isinstance(sigma, float) else 1 / sigma
    for m, p in enumerate(seq):
        out.append(poly_affine(p, sigma, mu) * inv**m)
    return AppellSequence(tuple(out), getattr(seq, "source", None))
