from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from pytest import raises

from crmodels.field import CoeffK
from crmodels.linalg import Mat2
from crmodels.series import (
    BiSeries,
    CompositionAtNonzero,
    NotInvertible,
    SeriesMat,
    SingularConstantTerm,
    UniSeries,
    cos_series,
    exp_series,
    geometric_series,
    log1p_series,
    semidirect_exp,
    series_compose,
    series_mat_inverse,
    series_reverse,
    sin_series,
)
from strategies import matrices, series

ORDER = 6


@given(series(ORDER, unit_linear=True))
@settings(max_examples=50, deadline=None)
def test_reversion_composes_back_on_both_sides(f):
    g = series_reverse(f)
    z = UniSeries.zeta(ORDER)
    assert series_compose(f, g) == z
    assert series_compose(g, f) == z


def test_reversion_preconditions():
    with raises(CompositionAtNonzero):
        series_reverse(UniSeries([1, 1], 3))
    with raises(NotInvertible):
        series_reverse(UniSeries([0, 0, 1], 3))
    with raises(CompositionAtNonzero):
        series_compose(UniSeries.zeta(3), UniSeries([1, 1], 3))


@given(series(ORDER, unit_constant=True))
@settings(max_examples=50)
def test_inverse_multiplies_back(f):
    assert f * f.inverse() == UniSeries.const(1, ORDER)


def test_elementary_series_identities():
    n = 9
    z = UniSeries.zeta(n)
    # exp(log(1+ζ)) = 1 + ζ
    assert series_compose(exp_series(1, n), log1p_series(n)) == z + 1
    # sin² + cos² = 1
    assert sin_series(n) * sin_series(n) + cos_series(n) * cos_series(n) == UniSeries.const(1, n)
    # (1 - 2ζ) · 1/(1 - 2ζ) = 1
    assert geometric_series(2, n) * (UniSeries.const(1, n) - z.scale(2)) == UniSeries.const(1, n)
    assert exp_series(1, n).derivative() == exp_series(1, n).truncate(n - 1)


@given(series(4), series(4))
def test_bivariate_embedding_is_multiplicative(f, g):
    assert (f * g).to_bi() == f.to_bi() * g.to_bi()
    assert f.to_bi(in_conjugate=True) == f.conj().to_bi().conj()


@given(series(4, unit_constant=True), series(4))
def test_bivariate_inverse(f, g):
    b = f.to_bi() * g.to_bi(in_conjugate=True) + f.to_bi()
    if b.at_origin().is_zero():
        return
    assert b * b.inverse() == BiSeries.const(1, 4)


def test_bivariate_derivatives():
    b = BiSeries({(2, 1): 3, (0, 3): CoeffK.gaussian(0, 1)}, 5)
    assert b.d_zeta() == BiSeries({(1, 1): 6}, 4)
    assert b.d_zetabar() == BiSeries({(2, 0): 3, (0, 2): CoeffK.gaussian(0, 3)}, 4)


@given(matrices(), matrices(), matrices())
@settings(max_examples=40, deadline=None)
def test_matrix_inverse_multiplies_back(a, b, c):
    if a.det().is_zero():
        m = SeriesMat.from_coeff_matrices({0: a, 1: b, 2: c}, 5)
        with raises(SingularConstantTerm):
            series_mat_inverse(m)
        return
    m = SeriesMat.from_coeff_matrices({0: a, 1: b, 3: c}, 5)
    inv = series_mat_inverse(m)
    ident = SeriesMat.identity(5)
    assert m * inv == ident
    assert inv * m == ident


@given(matrices(), matrices())
@settings(max_examples=40, deadline=None)
def test_semidirect_exp_solves_its_ode(s, omega):
    s02 = s + s.T
    if s02.is_zero():
        return
    n = 7
    S = semidirect_exp(s02, omega, n)
    assert S.is_symmetric()
    assert S.coeff(1) == s02
    # d/dζ S = S02 + Ω S + S Ωᵀ, coefficientwise
    for k in range(1, n):
        lhs = S.coeff(k + 1).scale(k + 1)
        rhs = omega * S.coeff(k) + S.coeff(k) * omega.T
        assert lhs == rhs


def test_semidirect_exp_nilpotent_case():
    # Ω = [[0,0],[τ,0]] and S02 = e11: the series is ζ e11 + τζ²/2 (e12+e21) + τ²ζ³/3 e22
    tau = Fraction(1, 2)
    S = semidirect_exp(Mat2(1, 0, 0, 0), Mat2(0, 0, tau, 0), 6)
    assert S.coeff(1) == Mat2(1, 0, 0, 0)
    assert S.coeff(2) == Mat2(0, tau / 2, tau / 2, 0)
    assert S.coeff(3) == Mat2(0, 0, 0, tau * tau / 3)
    assert S.coeff(4).is_zero()
    with raises(ValueError):
        semidirect_exp(Mat2(0, 1, 0, 0), Mat2.zero(), 3)
