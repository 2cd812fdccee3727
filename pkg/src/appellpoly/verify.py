"""Identity checks and limit experiments.

Every Hermite-limit normalisation used here has the form
``c^{m/2} P(+-sqrt(s) x + mu)`` with rational ``c``, ``s``, ``mu``, so the
rescaled polynomial is formed exactly (see :func:`poly.scaled_substitution`)
and floats only enter when the difference is evaluated on the grid.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from . import bspline as bs
from .appell import is_appell
from .families import (
    buchholz,
    gegenbauer,
    gen_bernoulli,
    gen_euler,
    hermite,
    laguerre,
    max_imag_residue,
    meixner,
    meixner_pollaczek,
    meixner_pollaczek_complex,
    pochhammer,
)
from .poly import Q, R, Poly, poly_affine, scaled_substitution, sup_error_on_grid
from .series import Series, builtin_series, exp_xz, series_mul, series_pow, series_recip

EXACT_TOL = 1e-12
FINAL_RATIO = 0.75


@dataclass(frozen=True)
class Grid:
    """``count`` equispaced points from ``start`` to ``stop`` inclusive."""

    start: Fraction
    stop: Fraction
    count: int

    def __post_init__(self):
        object.__setattr__(self, "start", Fraction(self.start))
        object.__setattr__(self, "stop", Fraction(self.stop))
        if self.count < 1:
            raise ValueError("grid needs at least one point")

    @classmethod
    def parse(cls, spec: str) -> "Grid":
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid spec must be start:stop:count, got {spec!r}")
        return cls(Fraction(parts[0]), Fraction(parts[1]), int(parts[2]))

    def points(self) -> list[Fraction]:
        if self.count == 1:
            return [self.start]
        step = (self.stop - self.start) / (self.count - 1)
        return [self.start + step * i for i in range(self.count)]

    def to_dict(self) -> dict:
        return {"start": _num(self.start), "stop": _num(self.stop), "count": self.count}


HERMITE_GRID = Grid(-2, 2, 41)
LAGUERRE_GRID = Grid(0, 8, 41)
GAUSS_GRID = Grid(*bs.GAUSS_GRID)


def _num(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else float(v)
    return v


@dataclass
class ConvergenceReport:
    case_id: str
    degree: int
    grid: Grid
    entries: list  # (parameter, sup error) in ladder order, approaching the limit
    empirical_rate: float | None
    passed: bool
    params: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def errors(self) -> list[float]:
        return [e for _, e in self.entries]


def empirical_rate(params: Sequence, errors: Sequence[float]) -> float | None:
    """Least-squares slope of log(error) against log(parameter)."""
    pts = [(math.log(float(p)), math.log(e)) for p, e in zip(params, errors) if e > 0 and float(p) > 0]
    if len(pts) < 2 or len(pts) != len(errors):
        return None
    n = len(pts)
    mx = sum(x for x, _ in pts) / n
    my = sum(y for _, y in pts) / n
    sxx = sum((x - mx) ** 2 for x, _ in pts)
    return sum((x - mx) * (y - my) for x, y in pts) / sxx


def strictly_decreasing(errors: Sequence[float]) -> bool:
    return all(b < a for a, b in zip(errors, errors[1:]))


def judge(errors: Sequence[float], rate: float | None, window: tuple | None = None,
          final_ratio: float = FINAL_RATIO) -> bool:
    """Case acceptance: identically below EXACT_TOL, or a strictly decreasing
    ladder whose last step shrinks by ``final_ratio`` and whose rate sits in
    ``window`` when one is given."""
    if all(e < EXACT_TOL for e in errors):
        return True
    if len(errors) < 2 or not strictly_decreasing(errors):
        return False
    if errors[-1] > final_ratio * errors[-2]:
        return False
    if window is not None and (rate is None or not window[0] <= rate <= window[1]):
        return False
    return True


def _report(case_id, degree, grid, ladder, errors, rate_params=None, window=None, **kw) -> ConvergenceReport:
    rate = empirical_rate(rate_params if rate_params is not None else ladder, errors)
    return ConvergenceReport(
        case_id=case_id,
        degree=degree,
        grid=grid,
        entries=list(zip(ladder, errors)),
        empirical_rate=rate,
        passed=judge(errors, rate, window),
        **kw,
    )


# --- generating pairs -------------------------------------------------------

@dataclass(frozen=True)
class GeneratingPair:
    """Numerator ``f(x, z)`` over ``Q[x]`` and scalar denominator ``phi_hat(z)``."""

    f: Series
    phi_hat: Series

    def __post_init__(self):
        if self.phi_hat[0] != 1:
            raise ValueError("phi_hat must have constant term 1")


def polys_from_pair(pair: GeneratingPair, m_max: int) -> list[Poly]:
    """m! times the z^m coefficient of ``f / phi_hat``."""
    if pair.f.order < m_max or pair.phi_hat.order < m_max:
        raise ValueError("series order below m_max")
    f = pair.f.truncate(m_max)
    inv = series_recip(pair.phi_hat.truncate(m_max)).lift(f.ring)
    g = series_mul(f, inv)
    return [c * math.factorial(m) for m, c in enumerate(g.coeffs)]


def hermite_pair(M: int) -> GeneratingPair:
    return GeneratingPair(exp_xz(M), builtin_series("exp_half_z2", M))


def bernoulli_pair(N: int, M: int) -> GeneratingPair:
    return GeneratingPair(exp_xz(M), series_pow(builtin_series("expm1_over_z", M), N))


def euler_pair(N: int, M: int) -> GeneratingPair:
    return GeneratingPair(exp_xz(M), series_pow(builtin_series("half_plus_half_exp", M), N))


# --- Hermite limits --------------------------------------------------------

def _hermite_case(case_id, m, params, grid, build, target_degree, scaled_target, window=None):
    grid = grid or HERMITE_GRID
    pts = grid.points()
    td = m if target_degree is None else target_degree
    target = hermite(td)[td]
    if scaled_target:
        target = target / math.factorial(td)
    errors = [sup_error_on_grid(build(Fraction(p)), target, pts) for p in params]
    return _report(case_id, m, grid, list(params), errors, window=window,
                   params={"m": m, "target_degree": td})


def converge_bernoulli_hermite(m: int, N_list: Sequence[int], grid: Grid | None = None,
                               target_degree: int | None = None) -> ConvergenceReport:
    """``(12/N)^{m/2} B_m^N(sqrt(N/12) x + N/2) -> H_m(x)``."""
    return _hermite_case(
        "bernoulli-hermite", m, N_list, grid,
        lambda N: scaled_substitution(gen_bernoulli(int(N), m)[m], m, 12 / N, N / 12, N / 2),
        target_degree, scaled_target=False,
    )


def converge_euler_hermite(m: int, N_list: Sequence[int], grid: Grid | None = None,
                           target_degree: int | None = None) -> ConvergenceReport:
    """``(4/N)^{m/2} E_m^N(sqrt(N)/2 x + N/2) -> H_m(x)``."""
    return _hermite_case(
        "euler-hermite", m, N_list, grid,
        lambda N: scaled_substitution(gen_euler(int(N), m)[m], m, 4 / N, N / 4, N / 2),
        target_degree, scaled_target=False,
    )


def converge_buchholz_hermite(m: int, N_list: Sequence[int], grid: Grid | None = None,
                              target_degree: int | None = None) -> ConvergenceReport:
    """``(3/N)^{m/2} P_m^N(-2 sqrt(3N) x) -> H_m(x)/m!``."""
    return _hermite_case(
        "buchholz-hermite", m, N_list, grid,
        lambda N: scaled_substitution(buchholz(int(N), m)[m], m, 3 / N, 12 * N, 0, sign=-1),
        target_degree, scaled_target=True,
    )


def converge_gegenbauer_hermite(m: int, N_list: Sequence, grid: Grid | None = None,
                                target_degree: int | None = None) -> ConvergenceReport:
    """``(2N)^{-m/2} C_m^N(x / sqrt(2N)) -> H_m(x)/m!``."""
    return _hermite_case(
        "gegenbauer-hermite", m, N_list, grid,
        lambda N: scaled_substitution(gegenbauer(N, m)[m], m, 1 / (2 * N), 1 / (2 * N), 0),
        target_degree, scaled_target=True,
    )


LAGUERRE_HERMITE_WINDOW = (-1.5, -0.25)


def converge_laguerre_hermite(m: int, N_list: Sequence[int], grid: Grid | None = None,
                              target_degree: int | None = None,
                              normalization: str = "stated") -> ConvergenceReport:
    """Laguerre -> Hermite as alpha = N grows.

    ``normalization="stated"``: ``(-1)^m (2N)^{-m/2} L_m^{(N)}(x sqrt(2N) + N)``
    against ``H_m(x)/m!``. Its generating function tends to ``e^{xz - z^2/4}``,
    not ``e^{xz - z^2/2}``, so for m >= 2 the error settles at a nonzero
    floor (1/4 at m = 2).

    ``normalization="unit-variance"``: ``(-1)^m N^{-m/2} L_m^{(N)}(x sqrt(N) + N)``,
    whose limit is ``H_m(x)/m!``.
    """
    if normalization == "stated":
        build = lambda N: scaled_substitution(laguerre(N, m)[m], m, 1 / (2 * N), 2 * N, N, factor=(-1) ** m)
    elif normalization == "unit-variance":
        build = lambda N: scaled_substitution(laguerre(N, m)[m], m, 1 / N, N, N, factor=(-1) ** m)
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    r = _hermite_case("laguerre-hermite", m, N_list, grid, build, target_degree,
                      scaled_target=True, window=LAGUERRE_HERMITE_WINDOW)
    r.params["normalization"] = normalization
    return r


# --- Laguerre limits -------------------------------------------------------

def converge_mp_laguerre(n: int, alpha, omega_list: Sequence[float], grid: Grid | None = None) -> ConvergenceReport:
    """``P_n^{((alpha+1)/2)}(-x/(2 omega); omega) -> L_n^{(alpha)}(x)`` as omega -> 0."""
    grid = grid or LAGUERRE_GRID
    pts = grid.points()
    lam = (float(alpha) + 1) / 2
    target = laguerre(alpha, n)[n].to_field(R)
    errors, residues = [], []
    for w in omega_list:
        w = float(w)
        residues.append(max_imag_residue(meixner_pollaczek_complex(lam, w, n)))
        p = meixner_pollaczek(lam, w, n)[n]
        errors.append(sup_error_on_grid(poly_affine(p, -1 / (2 * w), 0.0), target, pts))
    return _report("mp-laguerre", n, grid, [float(w) for w in omega_list], errors,
                   params={"n": n, "alpha": _num(Fraction(alpha))},
                   extra={"max_imag_residue": max(residues)})


def converge_meixner_laguerre(n: int, alpha, c_list: Sequence, grid: Grid | None = None) -> ConvergenceReport:
    """``M_n(cx/(1-c); alpha+1, c) -> L_n^{(alpha)}(x) / L_n^{(alpha)}(0)`` as c -> 1."""
    grid = grid or LAGUERRE_GRID
    pts = grid.points()
    alpha = Fraction(alpha)
    ln = laguerre(alpha, n)[n]
    # L_n^{(alpha)}(0) = (alpha+1)_n / n!
    target = ln / (pochhammer(alpha + 1, n) / math.factorial(n))
    cs = [Fraction(str(c)) if isinstance(c, float) else Fraction(c) for c in c_list]
    errors = []
    for c in cs:
        mn = meixner(alpha + 1, c, n)[n]
        errors.append(sup_error_on_grid(poly_affine(mn, c / (1 - c), 0), target, pts))
    return _report("meixner-laguerre", n, grid, cs, errors, rate_params=[1 - c for c in cs],
                   params={"n": n, "alpha": _num(alpha)})


# --- Gaussian limits -------------------------------------------------------

SINC_RATIO = 0.6


def sinc_power_deviations(N: int, M: int) -> list[Fraction]:
    """Exact ``[z^j] sinc^N(z sqrt(3/N)) - [z^j] e^{-z^2/2}`` for j = 0..M.

    sinc is even, so the substitution only needs ``(3/N)^{j/2}`` at even j.
    """
    sinc = builtin_series("sinc", M)
    lam2 = Fraction(3, N)
    scaled = Series([c * lam2 ** (j // 2) if j % 2 == 0 else c for j, c in enumerate(sinc.coeffs)], Q)
    powered = series_pow(scaled, N)
    target = builtin_series("exp_minus_half_z2", M)
    return [a - b for a, b in zip(powered.coeffs, target.coeffs)]


def sinc_lemma_check(N_list: Sequence[int], M: int = 8) -> ConvergenceReport:
    """``sinc^N(z/2 sqrt(12/N)) -> e^{-z^2/2}`` coefficientwise through z^M."""
    if M < 2 or M % 2:
        raise ValueError("M must be even and >= 2")
    devs = [sinc_power_deviations(int(N), M) for N in N_list]
    errors = [float(max(abs(d) for d in row)) for row in devs]
    low_exact = all(row[0] == 0 and row[2] == 0 for row in devs)
    halving = strictly_decreasing(errors) and all(b <= SINC_RATIO * a for a, b in zip(errors, errors[1:]))
    rate = empirical_rate(N_list, errors)
    return ConvergenceReport(
        "sinc-lemma", M, Grid(0, M, M + 1), list(zip(N_list, errors)), rate, low_exact and halving,
        params={"M": M},
        extra={"deviations": [[str(d) for d in row] for row in devs]},
    )


BSPLINE_GAUSS_WINDOW = (-1.5, -0.5)


def bspline_gauss_report(k: int, N_list: Sequence[int], grid: Grid | None = None) -> ConvergenceReport:
    """Scaled ``B_N^(k)`` against the k-th derivative of the normal density."""
    grid = grid or GAUSS_GRID
    pts = grid.points()
    errors = [bs.gaussian_limit_error(int(N), k, pts) for N in N_list]
    return _report("bspline-gauss", k, grid, list(N_list), errors, window=BSPLINE_GAUSS_WINDOW,
                   params={"k": k})


# --- exact identities ------------------------------------------------------

def identity_bernoulli_euler(N: int, m_max: int, B=None, E=None) -> bool:
    """``B_m^N = 2^{-m} sum_k C(m,k) E_k^N B_{m-k}^N`` for m <= m_max.

    ``B`` / ``E`` override the computed sequences (used for perturbed controls).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    B = gen_bernoulli(N, m_max) if B is None else B
    E = gen_euler(N, m_max) if E is None else E
    for m in range(m_max + 1):
        rhs = Poly.zero()
        for k in range(m + 1):
            rhs = rhs + E[k] * B[m - k] * math.comb(m, k)
        if rhs / 2**m != B[m]:
            return False
    return True


def scaling_characterization_detail(P, Qs, alpha, m_max: int) -> list[bool]:
    """Per-m verdicts of ``sum_k alpha^{-m} C(m,k) P_k(alpha x) Q_{m-k}(alpha x) == Q_m(2x)``."""
    if len(P) <= m_max or len(Qs) <= m_max:
        raise ValueError("sequences shorter than m_max + 1")
    alpha = Fraction(alpha)
    Pa = [poly_affine(p, alpha, 0) for p in P[: m_max + 1]]
    Qa = [poly_affine(q, alpha, 0) for q in Qs[: m_max + 1]]
    out = []
    for m in range(m_max + 1):
        lhs = Poly.zero()
        for k in range(m + 1):
            lhs = lhs + Pa[k] * Qa[m - k] * math.comb(m, k)
        out.append(lhs / alpha**m == poly_affine(Qs[m], 2, 0))
    return out


def scaling_characterization(P, Qs, alpha, m_max: int) -> bool:
    return all(scaling_characterization_detail(P, Qs, alpha, m_max))


def laguerre_type_appell_relation(seq: Sequence[Poly], m_max: int) -> bool:
    """``P_m' = P_{m-1}' - P_{m-1}`` for 1 <= m <= m_max."""
    if len(seq) <= m_max:
        raise ValueError("sequence shorter than m_max + 1")
    return all(
        seq[m].derivative() == seq[m - 1].derivative() - seq[m - 1] for m in range(1, m_max + 1)
    )


def identity_laguerre_recurrence(alpha, n_max: int, polys: Sequence[Poly] | None = None) -> bool:
    """``L_n' = L_{n-1}' - L_{n-1}``; pass ``polys`` to check a perturbed list."""
    seq = laguerre(alpha, n_max) if polys is None else polys
    return laguerre_type_appell_relation(seq, n_max)


def laguerre_orthogonality(alpha: int, m_max: int) -> list[list[Fraction]]:
    """Gram matrix ``int_0^inf L_m L_n x^alpha e^{-x} dx`` via ``int x^k e^{-x} = k!``."""
    if alpha < 0 or int(alpha) != alpha:
        raise ValueError("alpha must be a non-negative integer")
    alpha = int(alpha)
    L = laguerre(alpha, m_max)
    fact = [math.factorial(k) for k in range(2 * m_max + alpha + 1)]

    def inner(p, q):
        return sum((c * fact[k + alpha] for k, c in enumerate((p * q).coeffs)), Fraction(0))

    return [[inner(L[m], L[n]) for n in range(m_max + 1)] for m in range(m_max + 1)]


def laguerre_norms(alpha: int, m_max: int) -> list[Fraction]:
    """``Gamma(alpha + n + 1) / n! = (alpha + n)! / n!``."""
    return [Fraction(math.factorial(alpha + n), math.factorial(n)) for n in range(m_max + 1)]


def appell_property(polys) -> bool:
    return is_appell(polys)


def report_to_dict(r: ConvergenceReport) -> dict:
    d = asdict(r)
    d["grid"] = r.grid.to_dict()
    return d
