from __future__ import annotations

from fractions import Fraction

import mpmath
from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import raises

from crmodels.field import (
    HALF,
    I,
    ONE,
    ROOTS_OF_UNITY,
    SQRT2,
    SQRT3,
    SQRT6,
    ZERO,
    CoeffK,
    DivisionByZero,
    abs_in_field,
    kth_roots_in_field,
    norm_root,
    real_kth_root,
    sqrt_in_field,
    unit_part,
)
from strategies import coeffs, nonzero_coeffs


def test_generators_square_correctly():
    assert I * I == -ONE
    assert SQRT2 * SQRT2 == CoeffK.from_int(2)
    assert SQRT3 * SQRT3 == CoeffK.from_int(3)
    assert SQRT2 * SQRT3 == SQRT6
    assert (I * SQRT6) * (I * SQRT6) == CoeffK.from_int(-6)


@given(coeffs(), coeffs(), coeffs())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO


@given(nonzero_coeffs)
def test_inverse_multiplies_back(a):
    assert a * a.inverse() == ONE
    assert (ONE / a) * a == ONE


def test_division_by_zero_raises():
    with raises(DivisionByZero):
        ONE / ZERO
    with raises(ZeroDivisionError):
        ZERO.inverse()


@given(coeffs(), coeffs())
def test_conjugation_is_a_field_automorphism(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()
    assert a.conj().conj() == a
    assert a.real() + I * a.imag() == a
    assert a.real().is_real() and a.imag().is_real()


@given(coeffs(dense=True))
def test_numeric_value_agrees_with_exact_operations(a):
    with mpmath.workdps(40):
        assert abs((a * a.conj()).to_mpc() - abs(a.to_mpc()) ** 2) < mpmath.mpf(10) ** -30
        assert abs(a.conj().to_mpc() - mpmath.conj(a.to_mpc())) < mpmath.mpf(10) ** -30


@given(coeffs(dense=True), coeffs(dense=True))
def test_real_order_matches_numeric_order(a, b):
    x, y = a.real(), b.real()
    with mpmath.workdps(40):
        xv, yv = mpmath.re(x.to_mpc()), mpmath.re(y.to_mpc())
    if x == y:
        assert not (x < y)
    else:
        assert (x < y) == (xv < yv)
        assert (x - y).sign() == (1 if xv > yv else -1)


def test_sign_needs_real_input():
    with raises(ValueError):
        I.sign()


@given(coeffs())
def test_strings_round_trip(a):
    assert CoeffK.from_strings(a.to_strings()) == a
    assert all("/" in s for s in a.to_strings())


def test_from_strings_rejects_wrong_length():
    with raises(ValueError):
        CoeffK.from_strings(["1/1"] * 7)


@given(coeffs())
def test_square_roots_of_squares_are_found(a):
    r = sqrt_in_field(a * a)
    assert r is not None
    assert r * r == a * a


def test_square_roots_outside_the_field():
    assert sqrt_in_field(CoeffK.from_int(5)) is None
    assert sqrt_in_field(SQRT2) is None
    assert sqrt_in_field(CoeffK.from_int(-3)) == I * SQRT3
    assert sqrt_in_field(CoeffK.from_int(6)) == SQRT6
    assert sqrt_in_field(2 + SQRT3) is not None  # (√6 + √2)/2


@given(nonzero_coeffs)
def test_absolute_value_and_unit_part(a):
    m = abs_in_field(a)
    if m is None:
        return
    assert m.is_real() and m.sign() > 0
    assert m * m == a * a.conj()
    u = unit_part(a)
    assert u * u.conj() == ONE


def test_norm_root_beyond_real_square_roots():
    # 5 is not a square in K, but 5 = (2 + i)(2 - i)
    a = norm_root(CoeffK.from_int(5))
    assert a is not None and a * a.conj() == CoeffK.from_int(5)
    assert norm_root(-ONE) is None


def test_roots_of_unity_are_the_24th():
    assert len(set(ROOTS_OF_UNITY)) == 24
    for z in ROOTS_OF_UNITY:
        assert z ** 24 == ONE


@given(nonzero_coeffs, st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_kth_roots_are_exact_and_complete(a, k):
    roots = kth_roots_in_field(a ** k, k)
    assert a in roots
    assert all(r ** k == a ** k for r in roots)
    assert len(set(roots)) == len(roots)


def test_real_kth_root():
    assert real_kth_root(CoeffK.from_int(8), 3) == CoeffK.from_int(2)
    assert real_kth_root(CoeffK.from_int(-8), 3) is None  # positive inputs only
    assert real_kth_root(CoeffK.from_fraction(Fraction(1, 16)), 4) == HALF
    assert real_kth_root(CoeffK.from_int(2), 3) is None
