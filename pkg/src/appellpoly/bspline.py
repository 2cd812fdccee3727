"""Exact uniform B-splines on integer knots.

``B_1`` is the indicator of ``[0, 1)`` and ``B_N(x) = int_{x-1}^{x} B_{N-1}(t) dt``.
Pieces are stored in local coordinates: piece ``i`` is a polynomial in
``t = x - i`` valid for ``t`` in ``[0, 1)``. Local form keeps the coefficients
small (they are ``B_N^{(l)}(i) / l!``) and makes the convolution step a pure
antiderivative update with no substitutions. :attr:`PiecewisePoly.pieces`
gives the same pieces in the global variable ``x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .families import hermite
from .poly import Q, Poly, poly_affine
from .series import Series, builtin_series, series_pow

GAUSS_GRID = (-3, 3, 41)


@dataclass(frozen=True)
class PiecewisePoly:
    local: tuple  # local[i](t) == B(i + t), 0 <= t < 1

    @property
    def N(self) -> int:
        return len(self.local)

    @property
    def breakpoints(self) -> range:
        return range(self.N + 1)

    @cached_property
    def pieces(self) -> tuple:
        """Pieces as polynomials in x, piece i valid on [i, i+1)."""
        return tuple(poly_affine(p, 1, -i) for i, p in enumerate(self.local))

    def derivative(self, k: int = 1) -> "PiecewisePoly":
        return PiecewisePoly(tuple(p.derivative(k) for p in self.local))

    def __call__(self, x):
        """Exact value for rational ``x``; floats are converted exactly first."""
        x = Fraction(x)
        i = math.floor(x)
        if i < 0 or i >= self.N:
            return Fraction(0)
        return self.local[i](x - i)


@lru_cache(maxsize=None)
def bspline(N: int) -> PiecewisePoly:
    if N < 1:
        raise ValueError("B-spline order must be >= 1")
    if N == 1:
        return PiecewisePoly((Poly.one(),))
    prev = bspline(N - 1).local
    anti = [p.antiderivative() for p in prev]
    zero = Poly.zero()
    pieces = []
    for i in range(N):
        left = anti[i - 1] if 1 <= i <= N - 1 else zero
        here = anti[i] if i < N - 1 else zero
        pieces.append(left(1) - left + here)
    return PiecewisePoly(tuple(pieces))


def bspline_truncated_power(N: int) -> PiecewisePoly:
    """Independent construction from
    ``B_N(x) = 1/(N-1)! sum_j (-1)^j C(N,j) (x-j)_+^{N-1}``."""
    if N < 1:
        raise ValueError("B-spline order must be >= 1")
    scale = Fraction(1, math.factorial(N - 1))
    pieces, acc = [], Poly.zero()
    for i in range(N):
        acc = acc + poly_affine(Poly.monomial(N - 1), 1, -i) * ((-1) ** i * math.comb(N, i) * scale)
        pieces.append(poly_affine(acc, 1, i))
    return PiecewisePoly(tuple(pieces))


def pp_integrate_against(pp: PiecewisePoly, p: Poly) -> Fraction:
    """Exact ``int pp(x) p(x) dx``."""
    total = Fraction(0)
    for i, piece in enumerate(pp.local):
        total += (piece * poly_affine(p, 1, i)).integrate(0, 1)
    return total


def pp_moments(pp: PiecewisePoly, k_max: int) -> list[Fraction]:
    """``mu_k = int x^k pp(x) dx`` for k = 0..k_max."""
    mu = [Fraction(0)] * (k_max + 1)
    for i, piece in enumerate(pp.local):
        # I[j] = int_0^1 t^j piece(t) dt
        I = [
            sum((c / (l + j + 1) for l, c in enumerate(piece.coeffs)), Fraction(0))
            for j in range(k_max + 1)
        ]
        for k in range(k_max + 1):
            mu[k] += sum(math.comb(k, j) * i ** (k - j) * I[j] for j in range(k + 1))
    return mu


def moments_match_mgf(moments: Sequence, N: int, M: int) -> bool:
    """Whether ``sum mu_j z^j / j!`` equals ``((e^z - 1)/z)^N`` to order M."""
    if len(moments) < M + 1:
        return False
    target = series_pow(builtin_series("expm1_over_z", M), N)
    ours = Series([Fraction(moments[j]) / math.factorial(j) for j in range(M + 1)], Q)
    return ours == target


def mgf_consistency(N: int, M: int) -> bool:
    return moments_match_mgf(pp_moments(bspline(N), M), N, M)


def refinement_mask(N: int) -> list[Fraction]:
    """``2 * C(N, j) / 2^N``, j = 0..N."""
    return [Fraction(2 * math.comb(N, j), 2**N) for j in range(N + 1)]


def refinement_check(N: int, mask: Sequence | None = None) -> bool:
    """Exact check of ``B_N(x) = sum_j mask[j] B_N(2x - j)`` on every half-integer cell.

    On cell ``[h/2, (h+1)/2)`` write ``x = h/2 + u``; the left side is
    ``local[h//2]((h%2)/2 + u)`` and term j on the right is ``local[h-j](2u)``.
    """
    B = bspline(N).local
    mask = refinement_mask(N) if mask is None else [Fraction(m) for m in mask]
    for h in range(2 * N + 2):
        lhs = poly_affine(B[h // 2], 1, Fraction(h % 2, 2)) if h // 2 < N else Poly.zero()
        rhs = Poly.zero()
        for j, a in enumerate(mask):
            if 0 <= h - j < N and a != 0:
                rhs = rhs + poly_affine(B[h - j], 2, 0) * a
        if lhs != rhs:
            return False
    return True


def smoothness_check(pp: PiecewisePoly, max_order: int) -> bool:
    """Derivatives up to ``max_order`` agree at every knot, including the support ends."""
    pieces = (Poly.zero(),) + pp.local + (Poly.zero(),)
    for d in range(max_order + 1):
        for left, right in zip(pieces, pieces[1:]):
            # left piece evaluated at its right end t=1, except the zero padding
            lv = left.derivative(d)(1) if not left.is_zero() else 0
            if lv != right.derivative(d)(0):
                return False
    return True


def partition_of_unity(N: int, x) -> Fraction:
    """``sum_j B_N(x - j)`` over the translates whose support contains x."""
    B = bspline(N)
    x = Fraction(x)
    lo = math.floor(x) - N + 1
    return sum((B(x - j) for j in range(lo, math.floor(x) + 1)), Fraction(0))


def default_gauss_grid() -> list[Fraction]:
    a, b, n = GAUSS_GRID
    return [Fraction(a) + Fraction(b - a) * i / (n - 1) for i in range(n)]


def gaussian_derivative(k: int, x: float) -> float:
    """``(d/dx)^k`` of the standard normal density, via ``(-1)^k H_k G``."""
    hk = hermite(k)[k]
    return (-1) ** k * float(hk(Fraction(x))) * math.exp(-float(x) ** 2 / 2) / math.sqrt(2 * math.pi)


def gaussian_limit_error(N: int, k: int, grid: Sequence | None = None) -> float:
    """sup over grid of ``|(N/12)^{(k+1)/2} B_N^(k)(sqrt(N/12) x + N/2) - G^(k)(x)|``."""
    if N <= k + 2:
        raise ValueError(f"need N > k + 2 (got N={N}, k={k})")
    grid = default_gauss_grid() if grid is None else list(grid)
    if not grid:
        raise ValueError("empty grid")
    dB = bspline(N).derivative(k)
    sigma = math.sqrt(N / 12)
    amp = (N / 12) ** ((k + 1) / 2)
    worst = 0.0
    for x in grid:
        y = sigma * float(x) + N / 2
        val = amp * float(dB(y))
        worst = max(worst, abs(val - gaussian_derivative(k, x)))
    return worst
