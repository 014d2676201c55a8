from __future__ import annotations

from hypothesis import given, settings
from pytest import raises

from crmodels.field import I, ONE, CoeffK
from crmodels.poly import W, WB, Z1, Z1B, ZETA, Poly, ZeroDivisor, var
from strategies import coeffs, polys


@given(polys(), polys(), polys())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(polys(), polys())
def test_product_degree_is_additive(a, b):
    if a.is_zero() or b.is_zero():
        assert (a * b).is_zero()
    else:
        assert (a * b).degree() == a.degree() + b.degree()


@given(polys(), polys())
@settings(max_examples=60)
def test_divide_back(a, d):
    if d.is_zero():
        with raises(ZeroDivisor):
            a.divmod(d)
        return
    q, r = a.divmod(d)
    assert q * d + r == a
    ok, q2 = d.divides(a * d)
    assert ok and q2 * d == a * d


def test_non_divisible_is_reported():
    x, y = var(Z1), var(ZETA)
    ok, q = (x + ONE).divides(x * y + y + ONE)
    assert not ok and q is None


@given(polys(), polys())
def test_leibniz_rule(a, b):
    for k in (0, 1, 2):
        assert (a * b).diff(k) == a.diff(k) * b + a * b.diff(k)


@given(polys(), polys())
def test_conjugation_swaps_variables_and_is_multiplicative(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert a.conj().conj() == a
    assert (a + a.conj()).is_real()


def test_conjugate_of_a_variable():
    assert var(W).scale(I).conj() == var(WB).scale(-I)
    assert var(Z1).conj() == var(Z1B)


@given(polys())
def test_json_round_trip(a):
    assert Poly.from_json(a.to_json()) == a


def test_from_json_rejects_bad_exponents():
    with raises(ValueError):
        Poly.from_json([[[1, 0], ["1/1"] * 8]])


def test_monomials_need_eight_exponents():
    with raises(ValueError):
        Poly({(1, 0): 1})


@given(polys(), coeffs())
def test_evaluation_is_a_homomorphism(a, c):
    point = {0: 0.5 + 0.25j, 1: -1.0 + 0.5j, 2: 0.75}
    lhs = (a * a.scale(c)).evaluate(point)
    rhs = a.evaluate(point) ** 2 * complex(c)
    assert abs(lhs - rhs) < 1e-6 * (1 + abs(rhs))


def test_zero_polynomial():
    z = Poly()
    assert z.is_zero() and not z and len(z) == 0
    assert Poly.const(CoeffK()) == z
