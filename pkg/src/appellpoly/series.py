"""Truncated formal power series in ``z``.

Coefficients live either in a scalar field (``"Q"``, ``"R"``, ``"C"``) or in
the polynomial ring over one (``"Q[x]"``, ``"R[x]"``, ``"C[x]"``). A series of
order ``M`` keeps ``c_0 .. c_M`` and every identity holds modulo ``z**(M+1)``.

exp and log are computed from their ODE recurrences, which only divide by the
integers ``1..M``; this works verbatim for polynomial coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .poly import Q, Poly, field_of, join_fields, to_scalar


class SeriesError(ValueError):
    """Order/ring mismatch or a violated constant-term precondition."""


def _is_poly_ring(ring: str) -> bool:
    return ring.endswith("[x]")


def _field(ring: str) -> str:
    return ring[0]


def ring_zero(ring: str):
    if _is_poly_ring(ring):
        return Poly.zero(_field(ring))
    return to_scalar(0, ring)


def ring_one(ring: str):
    if _is_poly_ring(ring):
        return Poly.one(_field(ring))
    return to_scalar(1, ring)


def _widen(ring: str, field: str) -> str:
    f = join_fields(_field(ring), field)
    return f + "[x]" if _is_poly_ring(ring) else f


def _coerce(c, ring: str):
    f = _field(ring)
    if _is_poly_ring(ring):
        if isinstance(c, Poly):
            return c if c.field == f else c.to_field(f)
        return Poly((c,), f)
    if isinstance(c, Poly):
        raise SeriesError("polynomial coefficient in a scalar ring")
    return to_scalar(c, f)


def _infer_ring(coeffs) -> str:
    fields = [Q]
    poly = False
    for c in coeffs:
        if isinstance(c, Poly):
            poly = True
            fields.append(c.field)
        else:
            fields.append(field_of(c))
    f = join_fields(*fields)
    return f + "[x]" if poly else f


class Series:
    """Truncated power series ``sum_{j<=order} coeffs[j] z**j`` (immutable)."""

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs: Sequence, ring: str | None = None):
        coeffs = list(coeffs)
        if not coeffs:
            raise SeriesError("a series needs at least c_0")
        if ring is None:
            ring = _infer_ring(coeffs)
        self.ring = ring
        self.coeffs = tuple(_coerce(c, ring) for c in coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def const(cls, c, order: int, ring: str = Q) -> "Series":
        return cls([c] + [ring_zero(ring)] * order, ring)

    @classmethod
    def one(cls, order: int, ring: str = Q) -> "Series":
        return cls.const(ring_one(ring), order, ring)

    @classmethod
    def variable(cls, order: int, ring: str = Q) -> "Series":
        """The series ``z``."""
        c = [ring_zero(ring)] * (order + 1)
        if order >= 1:
            c[1] = ring_one(ring)
        return cls(c, ring)

    def __getitem__(self, j: int):
        return self.coeffs[j]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __repr__(self) -> str:
        return f"Series({list(self.coeffs)!r}, ring={self.ring!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ring, self.coeffs))

    def lift(self, ring: str | None = None) -> "Series":
        """Re-express the series over ``ring`` (default: the polynomial ring over its field)."""
        if ring is None:
            ring = _field(self.ring) + "[x]"
        return Series(self.coeffs, ring)

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise SeriesError("cannot raise the truncation order")
        return Series(self.coeffs[: order + 1], self.ring)

    def _check(self, other: "Series") -> None:
        if not isinstance(other, Series):
            raise SeriesError(f"expected Series, got {type(other).__name__}")
        if other.order != self.order:
            raise SeriesError(f"order mismatch: {self.order} vs {other.order}")
        if other.ring != self.ring:
            raise SeriesError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other) -> "Series":
        self._check(other)
        return Series([a + b for a, b in zip(self.coeffs, other.coeffs)], self.ring)

    def __sub__(self, other) -> "Series":
        self._check(other)
        return Series([a - b for a, b in zip(self.coeffs, other.coeffs)], self.ring)

    def __neg__(self) -> "Series":
        return Series([-a for a in self.coeffs], self.ring)

    def __mul__(self, other) -> "Series":
        if isinstance(other, Series):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, k) -> "Series":
        """Multiply every coefficient by the ring element or scalar ``k``."""
        if isinstance(k, Poly):
            ring = join_fields(_field(self.ring), k.field) + "[x]"
            src = self if self.ring == ring else self.lift(ring)
            return Series([c * k.to_field(ring[0]) for c in src.coeffs], ring)
        ring = _widen(self.ring, field_of(k))
        src = self if self.ring == ring else Series(self.coeffs, ring)
        return Series([c * k for c in src.coeffs], ring)

    def derivative(self) -> "Series":
        """d/dz, one order lower."""
        if self.order == 0:
            raise SeriesError("derivative of an order-0 series")
        return Series([j * c for j, c in enumerate(self.coeffs)][1:], self.ring)


def series_mul(s: Series, t: Series) -> Series:
    s._check(t)
    M = s.order
    a, b = s.coeffs, t.coeffs
    out = []
    for n in range(M + 1):
        acc = ring_zero(s.ring)
        for k in range(n + 1):
            acc = acc + a[k] * b[n - k]
        out.append(acc)
    return Series(out, s.ring)


def _invert_constant(c0, ring: str):
    if _is_poly_ring(ring):
        if c0.is_zero() or not c0.is_const():
            raise SeriesError("constant term is not an invertible constant polynomial")
        return 1 / c0.coeffs[0]
    if c0 == 0:
        raise SeriesError("constant term is zero")
    return 1 / c0


def series_recip(s: Series) -> Series:
    """``t`` with ``s*t == 1`` via ``t_n = -(1/c_0) sum_{k=1..n} c_k t_{n-k}``."""
    inv = _invert_constant(s.coeffs[0], s.ring)
    c = s.coeffs
    t = [ring_one(s.ring) * inv]
    for n in range(1, s.order + 1):
        acc = ring_zero(s.ring)
        for k in range(1, n + 1):
            acc = acc + c[k] * t[n - k]
        t.append(-acc * inv)
    return Series(t, s.ring)


def series_exp(s: Series) -> Series:
    """exp of a series with zero constant term: ``n e_n = sum_k k c_k e_{n-k}``."""
    if s.coeffs[0] != ring_zero(s.ring):
        raise SeriesError("exp needs a zero constant term")
    c = s.coeffs
    e = [ring_one(s.ring)]
    for n in range(1, s.order + 1):
        acc = ring_zero(s.ring)
        for k in range(1, n + 1):
            if c[k] != 0:
                acc = acc + c[k] * e[n - k] * k
        e.append(acc / n)
    return Series(e, s.ring)


def series_log(s: Series) -> Series:
    """log of a series with unit constant term, from ``s * (log s)' = s'``."""
    if s.coeffs[0] != ring_one(s.ring):
        raise SeriesError("log needs constant term 1")
    c = s.coeffs
    out = [ring_zero(s.ring)]
    for n in range(1, s.order + 1):
        acc = c[n] * n
        for k in range(1, n):
            acc = acc - out[k] * c[n - k] * k
        out.append(acc / n)
    return Series(out, s.ring)


def series_pow(s: Series, e) -> Series:
    """``s**e = exp(e * log s)``; ``e`` may be a scalar or (over ``*[x]``) a Poly."""
    return series_exp(series_log(s).scale(e))


def series_scale_var(s: Series, lam) -> Series:
    """Substitute ``z -> lam*z``."""
    ring = _widen(s.ring, field_of(lam))
    src = s if s.ring == ring else Series(s.coeffs, ring)
    out, p = [], to_scalar(1, field_of(lam))
    for c in src.coeffs:
        out.append(c * p)
        p = p * lam
    return Series(out, ring)


# --- named series ----------------------------------------------------------

def _fact_series(M: int, f) -> list:
    return [f(j) for j in range(M + 1)]


def _inv_fact(j: int) -> Fraction:
    return Fraction(1, math.factorial(j))


def _sin_over_z(M: int) -> list:
    return _fact_series(M, lambda j: 0 if j % 2 else Fraction((-1) ** (j // 2), math.factorial(j + 1)))


def _builtin_exact(name: str, M: int) -> Series:
    if name == "exp_z":
        return Series(_fact_series(M, _inv_fact), Q)
    if name == "expm1_over_z":
        return Series(_fact_series(M, lambda j: _inv_fact(j + 1)), Q)
    if name == "half_plus_half_exp":
        return Series(_fact_series(M, lambda j: Fraction(1) if j == 0 else _inv_fact(j) / 2), Q)
    if name == "sinc":
        return Series(_sin_over_z(M), Q)
    if name == "cot_minus_inv":
        # (z cos z - sin z)/z**2 divided by sin z / z
        def num(j):
            if j % 2 == 0:
                return 0
            k = (j + 1) // 2
            return (-1) ** k * (_inv_fact(2 * k) - _inv_fact(2 * k + 1))

        return series_mul(Series(_fact_series(M, num), Q), series_recip(Series(_sin_over_z(M), Q)))
    if name == "log1m":
        return Series(_fact_series(M, lambda j: 0 if j == 0 else Fraction(-1, j)), Q)
    if name == "exp_half_z2":
        return Series(_fact_series(M, lambda j: 0 if j % 2 else _inv_fact(j // 2) / 2 ** (j // 2)), Q)
    if name == "exp_minus_half_z2":
        return Series(
            _fact_series(M, lambda j: 0 if j % 2 else (-1) ** (j // 2) * _inv_fact(j // 2) / 2 ** (j // 2)), Q
        )
    raise KeyError(name)


BUILTIN_NAMES = (
    "exp_z",
    "expm1_over_z",
    "half_plus_half_exp",
    "sinc",
    "cot_minus_inv",
    "log1m",
    "exp_half_z2",
    "exp_minus_half_z2",
)


def builtin_series(name: str, M: int, ring: str = Q) -> Series:
    """Exact coefficients of a named series to order ``M``, expressed over ``ring``.

    ``exp_z`` = e^z, ``expm1_over_z`` = (e^z-1)/z, ``half_plus_half_exp`` =
    (e^z+1)/2, ``sinc`` = sin z/z, ``cot_minus_inv`` = cot z - 1/z,
    ``log1m`` = log(1-z), ``exp_half_z2`` = e^{z^2/2},
    ``exp_minus_half_z2`` = e^{-z^2/2}.
    """
    if M < 0:
        raise SeriesError("order must be non-negative")
    if name not in BUILTIN_NAMES:
        raise KeyError(f"unknown series {name!r}")
    s = _builtin_exact(name, M)
    return s if ring == Q else Series(s.coeffs, ring)


def exp_xz(M: int, field: str = Q) -> Series:
    """``e^{xz}`` over the polynomial ring: coefficient ``x**j / j!``."""
    return Series([Poly.monomial(j, _inv_fact(j), field) for j in range(M + 1)], field + "[x]")
