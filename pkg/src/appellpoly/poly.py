"""Dense univariate polynomials over exact or floating scalar fields.

Three fields are supported:

* ``"Q"``: exact rationals (``fractions.Fraction``; Python ints are promoted),
* ``"R"``: 64-bit floats,
* ``"C"``: complex floats.

A :class:`Poly` is immutable. Arithmetic between polynomials of different
fields raises :class:`FieldMismatchError`; convert explicitly with
:meth:`Poly.to_field`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Number
from typing import Iterable, Sequence

Q, R, C = "Q", "R", "C"
_RANK = {Q: 0, R: 1, C: 2}

# Relative trim threshold for float fields. Only exact zeros are dropped:
# legitimate leading coefficients can sit far below 1e-12 of the largest one
# (e.g. Meixner-Pollaczek at small omega has x^n coefficient ~ (2 sin omega)^n / n!).
FLOAT_TRIM = 0.0


class FieldMismatchError(TypeError):
    """Operands live over different scalar fields."""


def field_of(value) -> str:
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, (int, Fraction)):
        return Q
    if isinstance(value, float):
        return R
    if isinstance(value, complex):
        return C
    raise TypeError(f"unsupported scalar {value!r}")


def to_scalar(value, field: str):
    """Coerce ``value`` into ``field``; only widening conversions are allowed."""
    src = field_of(value)
    if _RANK[src] > _RANK[field]:
        raise FieldMismatchError(f"cannot coerce {src} scalar {value!r} into field {field}")
    if field == Q:
        return Fraction(value)
    if field == R:
        return float(value)
    return complex(value)


def join_fields(*fields: str) -> str:
    return max(fields, key=_RANK.__getitem__)


def _trim(coeffs: list, field: str) -> tuple:
    if field == Q:
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)
    big = max((abs(c) for c in coeffs), default=0.0)
    if big == 0:
        return ()
    cut = FLOAT_TRIM * big
    while coeffs and (coeffs[-1] == 0 or abs(coeffs[-1]) < cut):
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Polynomial ``sum(coeffs[k] * x**k)`` with trailing zeros trimmed."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable = (), field: str | None = None):
        raw = list(coeffs)
        if field is None:
            field = join_fields(Q, *(field_of(c) for c in raw))
        self.field = field
        self.coeffs = _trim([to_scalar(c, field) for c in raw], field)

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, field: str = Q) -> "Poly":
        return cls((), field)

    @classmethod
    def one(cls, field: str = Q) -> "Poly":
        return cls((1,), field)

    @classmethod
    def const(cls, c, field: str | None = None) -> "Poly":
        return cls((c,), field)

    @classmethod
    def x(cls, field: str = Q) -> "Poly":
        return cls((0, 1), field)

    @classmethod
    def monomial(cls, k: int, c=1, field: str | None = None) -> "Poly":
        return cls([0] * k + [c], field)

    # basic structure ----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self):
        if not self.coeffs:
            return to_scalar(0, self.field)
        return self.coeffs[-1]

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return to_scalar(0, self.field)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def to_field(self, field: str) -> "Poly":
        return Poly(self.coeffs, field)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r}, {self.field!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                terms.append(mono)
            else:
                terms.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs and (
                self.field == other.field or not self.coeffs
            )
        if isinstance(other, Number) and not isinstance(other, bool):
            return self.coeffs == Poly((other,)).coeffs if other != 0 else not self.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # arithmetic ---------------------------------------------------------
    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        return Poly((to_scalar(other, self.field),), self.field)

    def __add__(self, other) -> "Poly":
        try:
            q = self._lift(other)
        except FieldMismatchError:
            raise
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, q.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly(out, self.field)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.field)

    def __sub__(self, other) -> "Poly":
        try:
            q = self._lift(other)
        except FieldMismatchError:
            raise
        except TypeError:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            try:
                s = to_scalar(other, self.field)
            except TypeError:
                return NotImplemented
            return Poly([c * s for c in self.coeffs], self.field)
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.field)
        out = [to_scalar(0, self.field)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Poly(out, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, Poly):
            if not other.is_const() or other.is_zero():
                raise ZeroDivisionError("only division by a nonzero constant polynomial")
            other = other.coeffs[0]
        s = to_scalar(other, self.field)
        if s == 0:
            raise ZeroDivisionError("division by zero scalar")
        return Poly([c / s for c in self.coeffs], self.field)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        out, base = Poly.one(self.field), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x0):
        return poly_eval(self, x0)

    # calculus -----------------------------------------------------------
    def derivative(self, n: int = 1) -> "Poly":
        p = self
        for _ in range(n):
            p = Poly([k * c for k, c in enumerate(p.coeffs)][1:], p.field)
        return p

    def antiderivative(self) -> "Poly":
        """Antiderivative vanishing at 0."""
        zero = to_scalar(0, self.field)
        return Poly([zero] + [c / (k + 1) for k, c in enumerate(self.coeffs)], self.field)

    def integrate(self, a, b):
        F = self.antiderivative()
        return F(b) - F(a)


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_derivative(p: Poly) -> Poly:
    return p.derivative()


def poly_eval(p: Poly, x0):
    """Horner evaluation; exact over Q when ``x0`` is exact."""
    acc = to_scalar(0, p.field)
    for c in reversed(p.coeffs):
        acc = acc * x0 + c
    return acc


def poly_affine(p: Poly, a, b) -> Poly:
    """Coefficients of ``p(a*x + b)``."""
    lin = Poly((b, a), join_fields(p.field, field_of(a), field_of(b)))
    if lin.field != p.field:
        p = p.to_field(lin.field)
    acc = Poly.zero(p.field)
    for c in reversed(p.coeffs):
        acc = acc * lin + c
    return acc


def sup_error_on_grid(p, q, grid: Sequence) -> float:
    """``max |p(x) - q(x)|`` over ``grid``, as a float.

    The difference is formed exactly before evaluation when both sides share
    a field, so exact agreement reports exactly 0.
    """
    if len(grid) == 0:
        raise ValueError("empty grid")
    if isinstance(p, Poly) and isinstance(q, Poly) and p.field != q.field:
        f = join_fields(p.field, q.field)
        p, q = p.to_field(f), q.to_field(f)
    d = p - q
    if isinstance(d, RadicalPoly):
        return max(abs(d.float_at(x)) for x in grid)
    return max(abs(complex(poly_eval(d, x))) for x in grid)


# --- exact substitution with a square-root scale -------------------------

def _rational_sqrt(t: Fraction) -> Fraction | None:
    if t < 0:
        return None
    n, d = t.numerator, t.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class RadicalPoly:
    """Polynomial whose coefficients lie in Q(sqrt t1, sqrt t2, ...).

    Stored as ``{t: A_t}`` meaning ``sum_t sqrt(t) * A_t(x)`` with every
    ``A_t`` an exact rational :class:`Poly`. The key ``1`` holds the purely
    rational part. Floats appear only in :meth:`float_at`.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: dict):
        self.parts = {Fraction(t): p for t, p in parts.items() if not p.is_zero()}

    @classmethod
    def from_poly(cls, p: Poly) -> "RadicalPoly":
        return cls({Fraction(1): p})

    def rational_part(self) -> Poly:
        return self.parts.get(Fraction(1), Poly.zero(Q))

    def is_rational(self) -> bool:
        return all(t == 1 for t in self.parts)

    def __sub__(self, other) -> "RadicalPoly":
        if isinstance(other, Poly):
            other = RadicalPoly.from_poly(other)
        parts = dict(self.parts)
        for t, p in other.parts.items():
            parts[t] = parts.get(t, Poly.zero(Q)) - p
        return RadicalPoly(parts)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            other = RadicalPoly.from_poly(other)
        if not isinstance(other, RadicalPoly):
            return NotImplemented
        return self.parts == other.parts

    def float_at(self, x) -> float:
        x = Fraction(x)
        return sum(math.sqrt(t) * float(p(x)) for t, p in self.parts.items())

    def __repr__(self) -> str:
        return f"RadicalPoly({self.parts!r})"


def scaled_substitution(p: Poly, m: int, c, s, shift=0, sign: int = 1, factor=1) -> RadicalPoly:
    """Exact form of ``factor * c**(m/2) * p(sign*sqrt(s)*x + shift)``.

    ``c``, ``s``, ``shift`` and ``factor`` must be rational and ``c, s > 0``.
    Each monomial picks up ``sqrt(c**(m%2) * s**(k%2))``; radicands that are
    perfect squares are folded into the rational part.
    """
    c, s, shift, factor = map(Fraction, (c, s, shift, factor))
    if c <= 0 or s <= 0:
        raise ValueError("scales must be positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    shifted = poly_affine(p.to_field(Q), 1, shift)
    base = factor * c ** (m // 2)
    groups: dict[Fraction, list] = {}
    for k, r in enumerate(shifted.coeffs):
        if r == 0:
            continue
        coef = base * r * sign**k * s ** (k // 2)
        t = c ** (m % 2) * s ** (k % 2)
        root = _rational_sqrt(t)
        if root is not None:
            coef, t = coef * root, Fraction(1)
        groups.setdefault(t, [Fraction(0)] * len(shifted.coeffs))[k] += coef
    return RadicalPoly({t: Poly(v, Q) for t, v in groups.items()})
