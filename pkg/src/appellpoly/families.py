"""Named polynomial families, each read off from its generating function.

Normalisations follow the displayed generating functions:

* Hermite, generalized Bernoulli and Euler carry ``z^m / m!``;
* Laguerre, Buchholz, Gegenbauer and Meixner-Pollaczek carry plain ``z^m``;
* Meixner carries ``(beta)_n / n! z^n``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .appell import appell_from_distribution, binomial_distribution, bspline_distribution
from .poly import C, Q, R, Poly, field_of
from .series import Series, builtin_series, exp_xz, series_exp, series_mul, series_pow, series_recip, series_scale_var

IMAG_TOL = 1e-9


class PochhammerPoleError(ValueError):
    pass


class ImaginaryResidueError(ArithmeticError):
    """A family that must be real came out with an imaginary part."""


def pochhammer(a, n: int):
    """Rising factorial ``(a)_n``, ``(a)_0 = 1``."""
    out = Fraction(1) if field_of(a) == Q else 1.0
    for i in range(n):
        out *= a + i
    return out


def _coefficients(s: Series, factorial: bool) -> list[Poly]:
    out = []
    for m, c in enumerate(s.coeffs):
        out.append(c * math.factorial(m) if factorial else c)
    return out


# --- Hermite ---------------------------------------------------------------

def hermite(m_max: int) -> list[Poly]:
    """Probabilists' Hermite H_0..H_m_max via ``H_{m+1} = x H_m - m H_{m-1}``."""
    x = Poly.x()
    hs = [Poly.one()]
    if m_max >= 1:
        hs.append(x)
    for m in range(1, m_max):
        hs.append(x * hs[m] - hs[m - 1] * m)
    return hs[: m_max + 1]


def hermite_from_series(m_max: int) -> list[Poly]:
    """m! times the z^m coefficient of ``e^{xz - z^2/2}``."""
    g = series_mul(exp_xz(m_max), builtin_series("exp_minus_half_z2", m_max).lift())
    return _coefficients(g, factorial=True)


# --- Laguerre --------------------------------------------------------------

def laguerre(alpha, n_max: int) -> list[Poly]:
    """Generalized Laguerre from the explicit hypergeometric sum."""
    alpha = Fraction(alpha) if field_of(alpha) == Q else alpha
    for j in range(1, n_max + 1):
        if pochhammer(alpha + 1, j) == 0:
            raise PochhammerPoleError(f"(alpha+1)_{j} = 0 for alpha = {alpha}")
    out = []
    for n in range(n_max + 1):
        lead = pochhammer(alpha + 1, n) / math.factorial(n)
        coeffs = [
            lead * pochhammer(-n, j) / pochhammer(alpha + 1, j) / math.factorial(j) for j in range(n + 1)
        ]
        out.append(Poly(coeffs))
    return out


def laguerre_type_sequence(weight: Series, n_max: int) -> list[Poly]:
    """Coefficients of ``e^{-zx/(1-z)} / weight(z)`` (plain ``z^m`` normalisation).

    ``weight`` is the composed transform with the ``(1-z)^n`` factor already
    cancelled, e.g. ``(1-z)^{alpha+1}`` for the Laguerre weight.
    """
    w = weight.truncate(n_max)
    if w.ring.endswith("[x]"):
        raise ValueError("weight must be a scalar series")
    field = w.ring
    # -z/(1-z) = -(z + z^2 + ...)
    inner = Series([0] + [-1] * n_max, field).scale(Poly.x(field))
    g = series_mul(series_exp(inner), series_recip(w).lift())
    return list(g.coeffs)


def laguerre_from_series(alpha, n_max: int) -> list[Poly]:
    """Coefficients of ``(1-z)^{-alpha-1} e^{-zx/(1-z)}``."""
    one_minus_z = Series([1, -1] + [0] * (n_max - 1), Q) if n_max >= 1 else Series([1], Q)
    return laguerre_type_sequence(series_pow(one_minus_z, Fraction(alpha) + 1), n_max)


def laguerre_rodrigues(alpha: int, n: int) -> Poly:
    """``x^{-alpha} e^x / n! (d/dx)^n (e^{-x} x^{n+alpha})`` for integer alpha >= 0."""
    if alpha < 0 or int(alpha) != alpha:
        raise ValueError("Rodrigues cross-check only for integer alpha >= 0")
    alpha = int(alpha)
    q = Poly.monomial(n + alpha)
    for _ in range(n):  # d/dx (e^{-x} q) = e^{-x} (q' - q)
        q = q.derivative() - q
    if any(c != 0 for c in q.coeffs[:alpha]):
        raise ArithmeticError("x^alpha does not divide the Rodrigues numerator")
    return Poly(q.coeffs[alpha:]) / math.factorial(n)


# --- generalized Bernoulli / Euler ----------------------------------------

def gen_bernoulli(N: int, m_max: int) -> list[Poly]:
    """B_m^N from ``w^N e^{wz} / (e^w - 1)^N = sum B_m^N(z) w^m / m!``."""
    return list(appell_from_distribution(bspline_distribution(N, m_max), m_max).polys)


def gen_euler(N: int, m_max: int) -> list[Poly]:
    """E_m^N from ``2^N e^{wz} / (e^w + 1)^N = sum E_m^N(z) w^m / m!``."""
    return list(appell_from_distribution(binomial_distribution(N, m_max), m_max).polys)


# --- Buchholz / Gegenbauer -------------------------------------------------

def buchholz(N: int, m_max: int) -> list[Poly]:
    """P_m^N from ``e^{x(cot z - 1/z)/2} (sin z / z)^N = sum P_m^N(x) z^m``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    expo = builtin_series("cot_minus_inv", m_max).scale(Poly((0, Fraction(1, 2))))
    sinc_n = series_pow(builtin_series("sinc", m_max), N).lift()
    return list(series_mul(series_exp(expo), sinc_n).coeffs)


def gegenbauer(N, m_max: int) -> list[Poly]:
    """C_m^N from ``(1 - 2xz + z^2)^{-N} = sum C_m^N(x) z^m``."""
    field = field_of(N)
    base = [Poly.one(field), Poly((0, -2), field), Poly.one(field)] + [Poly.zero(field)] * (m_max - 1)
    s = Series(base[: m_max + 1], field + "[x]")
    return list(series_pow(s, -N).coeffs)


# --- Meixner / Meixner-Pollaczek ------------------------------------------

def meixner(beta, c, n_max: int) -> list[Poly]:
    """M_n(x; beta, c) from ``(1 - z/c)^x (1 - z)^{-beta-x} = sum (beta)_n/n! M_n z^n``."""
    beta, c = (Fraction(v) if field_of(v) == Q else v for v in (beta, c))
    if c == 0 or c == 1:
        raise ValueError("c must differ from 0 and 1")
    for n in range(1, n_max + 1):
        if pochhammer(beta, n) == 0:
            raise PochhammerPoleError(f"(beta)_{n} = 0 for beta = {beta}")
    field = field_of(beta) if field_of(beta) != Q else field_of(c)
    log1m = builtin_series("log1m", n_max, field)
    a = series_scale_var(log1m, 1 / c).scale(Poly.x(field))
    b = log1m.scale(Poly((-beta, -1), field))
    g = series_mul(series_exp(a), series_exp(b))
    return [p * (math.factorial(n) / pochhammer(beta, n)) for n, p in enumerate(g.coeffs)]


def meixner_pollaczek_complex(lam, omega: float, n_max: int) -> list[Poly]:
    """Complex-coefficient expansion of
    ``(1 - e^{iw} z)^{-lam + ix} (1 - e^{-iw} z)^{-lam - ix}``.

    The two logarithmic exponents are summed before a single exp; that is the
    same product, but keeps the conjugate cancellation exact.
    """
    if not 0 < omega < math.pi:
        raise ValueError("omega must lie in (0, pi)")
    lam = complex(lam)
    w = cmath.exp(1j * omega)
    log1m = builtin_series("log1m", n_max, C)
    plus = series_scale_var(log1m, w).scale(Poly((-lam, 1j), C))
    minus = series_scale_var(log1m, w.conjugate()).scale(Poly((-lam, -1j), C))
    return list(series_exp(plus + minus).coeffs)


def max_imag_residue(polys) -> float:
    return max((abs(c.imag) for p in polys for c in p.coeffs), default=0.0)


def meixner_pollaczek(lam, omega: float, n_max: int, tol: float = IMAG_TOL) -> list[Poly]:
    """Real polynomials P_n^{(lam)}(x; omega); raises if any |Im| exceeds ``tol``."""
    raw = meixner_pollaczek_complex(lam, omega, n_max)
    resid = max_imag_residue(raw)
    if resid >= tol:
        raise ImaginaryResidueError(f"imaginary residue {resid:.3e} >= {tol:.1e}")
    return [Poly([c.real for c in p.coeffs], R) for p in raw]


FAMILIES = ("hermite", "laguerre", "bernoulli", "euler", "buchholz", "gegenbauer", "meixner", "meixner-pollaczek")
