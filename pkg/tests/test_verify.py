import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from appellpoly.appell import appell_from_distribution, point_mass
from appellpoly.families import gen_bernoulli, gen_euler, hermite, laguerre
from appellpoly.poly import Poly
from appellpoly.series import Series, builtin_series, exp_xz, series_pow
from appellpoly import verify as vf

F = Fraction
x = Poly.x()


# --- harness pieces ----------------------------------------------------------

def test_grid_parse():
    g = vf.Grid.parse("-2:2:5")
    assert g.points() == [-2, -1, 0, 1, 2]
    assert vf.Grid.parse("0:1/2:2").points() == [0, F(1, 2)]
    with pytest.raises(ValueError):
        vf.Grid.parse("0:1")
    with pytest.raises(ValueError):
        vf.Grid(0, 1, 0)


@given(st.floats(-3, 3), st.floats(0.01, 10))
def test_empirical_rate_recovers_power_law(rate, scale):
    ladder = [16, 32, 64, 128]
    errs = [scale * N**rate for N in ladder]
    assert vf.empirical_rate(ladder, errs) == pytest.approx(rate, abs=1e-9)


def test_empirical_rate_undefined_with_zeros():
    assert vf.empirical_rate([1, 2], [0.0, 0.0]) is None


def test_judge():
    assert vf.judge([0.0, 1e-14], None)
    assert vf.judge([1.0, 0.5, 0.25], -1.0, (-1.5, -0.5))
    assert not vf.judge([1.0, 0.5, 0.25], -2.0, (-1.5, -0.5))
    assert not vf.judge([1.0, 0.9, 0.8], None)  # last ratio above 0.75
    assert not vf.judge([1.0, 1.0, 0.1], None)  # not strictly decreasing


# --- generating pairs --------------------------------------------------------

def test_polys_from_pair_examples():
    M = 8
    assert vf.polys_from_pair(vf.GeneratingPair(exp_xz(M), Series.one(M)), M) == [Poly.monomial(m) for m in range(M + 1)]
    assert vf.polys_from_pair(vf.hermite_pair(M), M) == hermite(M)
    for N in (1, 3, 8):
        assert vf.polys_from_pair(vf.bernoulli_pair(N, M), M) == gen_bernoulli(N, M)
        assert vf.polys_from_pair(vf.euler_pair(N, M), M) == gen_euler(N, M)


def test_polys_from_pair_order_check():
    with pytest.raises(ValueError):
        vf.polys_from_pair(vf.hermite_pair(3), 5)


# --- Hermite limits ----------------------------------------------------------

LADDER = [16, 32, 64, 128]
HERMITE_CASES = [
    vf.converge_bernoulli_hermite,
    vf.converge_euler_hermite,
    vf.converge_buchholz_hermite,
    vf.converge_gegenbauer_hermite,
]


@pytest.mark.parametrize("case", HERMITE_CASES)
@pytest.mark.parametrize("m", [0, 1])
def test_hermite_exact_low_degree(case, m):
    r = case(m, LADDER)
    assert all(e < vf.EXACT_TOL for e in r.errors)
    assert r.passed


@pytest.mark.parametrize("case", HERMITE_CASES)
def test_hermite_decay(case):
    r = case(5, LADDER)
    assert vf.strictly_decreasing(r.errors)
    assert r.passed
    assert -1.5 <= r.empirical_rate <= -0.5


def test_bernoulli_hermite_fixture():
    r = vf.converge_bernoulli_hermite(4, LADDER)
    assert r.errors == pytest.approx([0.075, 0.0375, 0.01875, 0.009375], rel=1e-9)
    assert r.empirical_rate == pytest.approx(-1.0, abs=1e-6)


@pytest.mark.parametrize("case", HERMITE_CASES)
def test_mismatch_control_fails(case):
    r = case(3, LADDER, target_degree=4)
    assert not r.passed
    assert r.errors[-1] > 0.1


def test_laguerre_hermite_m1_error_curve():
    r = vf.converge_laguerre_hermite(1, LADDER)
    assert r.errors == pytest.approx([(2 * N) ** -0.5 for N in LADDER], rel=1e-12)


def test_laguerre_hermite_stated_floor():
    """As written, the m = 2 error does not go to zero: the generating function
    of the stated normalisation tends to exp(xz - z^2/4)."""
    r = vf.converge_laguerre_hermite(2, [2**k for k in range(4, 15)])
    # the limit differs from H_2/2 by the constant 1/4; the approach is O(N^{-1/2})
    assert 0.25 < r.errors[-1] < 0.28
    assert not r.passed


@pytest.mark.parametrize("m", range(0, 6))
def test_laguerre_hermite_unit_variance_converges(m):
    r = vf.converge_laguerre_hermite(m, LADDER, normalization="unit-variance")
    assert r.passed


# --- Laguerre limits ---------------------------------------------------------

OMEGAS = [0.2, 0.1, 0.05, 0.025]


def test_mp_laguerre_low():
    assert vf.converge_mp_laguerre(0, 1, OMEGAS).errors == [0.0] * 4
    r = vf.converge_mp_laguerre(1, 1, OMEGAS)
    assert r.passed and r.empirical_rate == pytest.approx(2.0, abs=0.1)


def test_mp_laguerre_fixture():
    r = vf.converge_mp_laguerre(3, 1, OMEGAS)
    assert vf.strictly_decreasing(r.errors) and r.passed
    assert r.extra["max_imag_residue"] < 1e-9


def test_meixner_laguerre_exact_n1():
    r = vf.converge_meixner_laguerre(1, 2, [0.9, 0.95])
    assert all(e < vf.EXACT_TOL for e in r.errors)
    assert vf.converge_meixner_laguerre(0, 0, [0.9, 0.95]).errors == [0.0, 0.0]


def test_meixner_laguerre_fixture():
    r = vf.converge_meixner_laguerre(3, 2, [0.9, 0.95, 0.975])
    assert vf.strictly_decreasing(r.errors) and r.passed


# --- Gaussian limits ---------------------------------------------------------

def test_sinc_low_coefficients_exact():
    for N in (1, 7, 16):
        d = vf.sinc_power_deviations(N, 8)
        assert d[0] == 0 and d[2] == 0
        assert all(v == 0 for v in d[1::2])


def test_sinc_z4_halves():
    d4 = [vf.sinc_power_deviations(N, 4)[4] for N in LADDER]
    for a, b in zip(d4, d4[1:]):
        assert b / a == F(1, 2)
    assert vf.sinc_lemma_check(LADDER).passed


@pytest.mark.parametrize("k", [0, 1, 2])
def test_bspline_gauss(k):
    r = vf.bspline_gauss_report(k, [8, 16, 32, 64])
    assert r.passed


# --- exact identities --------------------------------------------------------

def test_bernoulli_euler_identity():
    assert vf.identity_bernoulli_euler(1, 1)
    assert vf.identity_bernoulli_euler(16, 10)
    with pytest.raises(ValueError):
        vf.identity_bernoulli_euler(0, 3)


def test_scaling_alpha2():
    assert vf.scaling_characterization(gen_euler(4, 8), gen_bernoulli(4, 8), 2, 8)
    mono = [Poly.monomial(m) for m in range(9)]
    assert vf.scaling_characterization(mono, mono, 2, 8)


def test_scaling_control():
    assert not vf.scaling_characterization(hermite(6), gen_bernoulli(4, 6), 2, 6)


def _appell_from_mgf(mgf, m):
    from appellpoly.appell import MomentDistribution
    return list(appell_from_distribution(MomentDistribution(mgf), m))


@pytest.mark.parametrize("alpha", [3, F(1, 2), 5])
@pytest.mark.parametrize("s", [1, F(1, 3)])
def test_scaling_general_alpha_gaussian_pair(alpha, s):
    """The identity holds for any alpha once phi_P(z/alpha) phi_Q(z/alpha) = phi_Q(z).

    With Q Gaussian of variance s that forces P Gaussian of variance
    s (alpha^2 - 1), e.g. variance 8 for alpha = 3, s = 1."""
    m = 8
    half_z2 = builtin_series("exp_half_z2", m)

    def gaussian(var):
        return Series([c * var ** (j // 2) for j, c in enumerate(half_z2.coeffs)], "Q")

    Qs = _appell_from_mgf(gaussian(s), m)
    P = _appell_from_mgf(gaussian(s * (alpha**2 - 1)), m)
    assert vf.scaling_characterization(P, Qs, alpha, m)
    # the wrong partner fails
    assert not vf.scaling_characterization(Qs, Qs, alpha, m)


@pytest.mark.parametrize("alpha", [2, 3, F(7, 2)])
def test_scaling_point_mass_any_alpha(alpha):
    """Both transforms are 1, so the identity holds for every alpha."""
    mono = [Poly.monomial(k) for k in range(7)]
    assert vf.scaling_characterization(mono, mono, alpha, 6)


def test_laguerre_recurrence():
    assert vf.identity_laguerre_recurrence(0, 1)
    assert vf.identity_laguerre_recurrence(0, 20)
    L = laguerre(0, 5)
    L[3] = L[3] + x
    assert not vf.identity_laguerre_recurrence(0, 5, L)


def test_laguerre_orthogonality():
    assert vf.laguerre_orthogonality(0, 0)[0][0] == 1
    assert vf.laguerre_orthogonality(0, 1)[0][1] == 0
    assert vf.laguerre_orthogonality(1, 2)[2][2] == 3
    for alpha in range(5):
        G = vf.laguerre_orthogonality(alpha, 8)
        norms = vf.laguerre_norms(alpha, 8)
        for i in range(9):
            for j in range(9):
                assert G[i][j] == (norms[i] if i == j else 0)


def test_laguerre_type_relation():
    seq = laguerre(F(3, 2), 8)
    assert vf.laguerre_type_appell_relation(seq, 8)
    assert not vf.laguerre_type_appell_relation(hermite(8), 8)
