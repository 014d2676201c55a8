from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import mark, raises

from crmodels.catalog import LABELS, catalog
from crmodels.field import I, ONE, CoeffK
from crmodels.poly import W, Z1, Z1B, Z2, ZETA, Poly, var
from crmodels.symmetry import (
    HoloField,
    ZeroDefining,
    algebra_report,
    bracket,
    euler_field,
    in_real_span,
    negative_part_generators,
    generator_families,
    symmetry_generators,
    tangency,
)

w, z1, z2, zeta = var(W), var(Z1), var(Z2), var(ZETA)
ONE_P = Poly.const(1)

gauss = st.builds(CoeffK.gaussian, st.integers(-2, 2), st.integers(-2, 2))


@st.composite
def holo_polys(draw) -> Poly:
    out = Poly()
    for _ in range(draw(st.integers(0, 3))):
        mono = [0] * 8
        for k in (W, Z1, Z2, ZETA):
            mono[k] = draw(st.integers(0, 2 if k == ZETA else 1))
        out = out + Poly.monomial(tuple(mono), draw(gauss))
    return out


@st.composite
def fields(draw) -> HoloField:
    num = [draw(holo_polys()) for _ in range(4)]
    den = draw(st.sampled_from([ONE_P, zeta.scale(2) + ONE_P, zeta + ONE_P]))
    return HoloField.from_components([(n, den) for n in num])


def _zero() -> HoloField:
    return HoloField([Poly()] * 4)


@given(fields(), fields(), fields())
@settings(max_examples=20, deadline=None)
def test_jacobi_identity(x, y, z):
    total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert total.is_zero()


@given(fields(), fields())
@settings(max_examples=30, deadline=None)
def test_bracket_is_antisymmetric_and_bilinear(x, y):
    assert bracket(x, y) == -bracket(y, x)
    assert bracket(x, x).is_zero()
    assert bracket(x + y, y) == bracket(x, y)
    assert bracket(x.scale(I), y) == bracket(x, y).scale(I)


@given(fields())
@settings(max_examples=30, deadline=None)
def test_json_round_trip_and_common_factor_reduction(x):
    assert HoloField.from_json(x.to_json()) == x
    # multiplying numerators and denominator by the same factor is the same field
    f = zeta + ONE_P
    y = HoloField([n * f for n in x.num], {**{a: e for a, e in x.atoms.items()}, f: x.atoms.get(f, 0) + 1})
    assert y == x


def test_field_validation():
    with raises(ValueError, match="barred"):
        HoloField([var(Z1B), Poly(), Poly(), Poly()])
    with raises(ValueError, match="origin"):
        HoloField.from_components([(ONE_P, zeta), Poly(), Poly(), Poly()])
    with raises(ValueError):
        HoloField([Poly()] * 3)


def test_euler_field_grades_coordinates():
    E = euler_field()
    i_dw = HoloField([Poly.const(I), Poly(), Poly(), Poly()])
    assert bracket(E, i_dw) == i_dw.scale(-2)
    dz1 = HoloField([Poly(), ONE_P, Poly(), Poly()])
    assert bracket(E, dz1) == dz1.scale(-1)
    assert bracket(E, HoloField([Poly(), Poly(), Poly(), ONE_P])).is_zero()


# --- tangency -------------------------------------------------------------------

TYPE_VII = catalog("VII")


def test_tangency_positive_controls():
    for X in (HoloField([Poly.const(I), Poly(), Poly(), Poly()]), euler_field()):
        t = tangency(X, TYPE_VII.P, TYPE_VII.Q2)
        assert t.tangent and t.to_json()["tangent"]


def test_tangency_negative_controls():
    # a real translation in w moves the hypersurface Re w = F
    t = tangency(HoloField([ONE_P, Poly(), Poly(), Poly()]), TYPE_VII.P)
    assert not t and t.witness is not None
    # a rotation of z2 into z1 is not a symmetry of type VII
    t = tangency(HoloField([Poly(), z2, Poly(), Poly()]), TYPE_VII.P)
    assert not t
    assert t.to_json()["witness"]["coefficient"]


def test_tangency_input_errors():
    with raises(ZeroDefining):
        tangency(euler_field(), Poly())
    with raises(ValueError):
        tangency(euler_field(), w * w - z1)


def test_zero_field_is_tangent():
    assert tangency(_zero(), TYPE_VII.P).tangent


# --- algebras -----------------------------------------------------------------

EXPECTED = {"I": (8, {-2: 1, -1: 4, 0: 3}), "II": (8, {-2: 1, -1: 4, 0: 3}), "III": (9, {-2: 1, -1: 4, 0: 4})}


@mark.parametrize("label", generator_families())
def test_generator_families_give_the_expected_algebra(label):
    e = catalog(label)
    rep = algebra_report(symmetry_generators(label), e.P, e.Q2)
    assert rep.tangent and rep.closed and not rep.failures
    assert (rep.dimension, rep.graded_dims) == EXPECTED[label]
    assert rep.dimension == e.isad


def test_dimension_counts_real_independent_generators():
    e = catalog("I")
    gens = symmetry_generators("I")
    rep = algebra_report(gens[:-1], e.P, e.Q2)
    assert rep.dimension == 7


def test_non_symmetry_is_reported():
    e = catalog("II")
    bad = HoloField([Poly(), z2, Poly(), Poly()])
    rep = algebra_report(symmetry_generators("II") + [bad], e.P, e.Q2)
    assert not rep.tangent
    assert any(f["kind"] == "tangency" for f in rep.failures)


@mark.parametrize("label", LABELS)
def test_negative_part_and_euler_field_are_symmetries_of_every_entry(label):
    e = catalog(label)
    gens = negative_part_generators(e.H, e.f_num, e.f_den) + [euler_field()]
    rep = algebra_report(gens, e.P, e.Q2)
    assert rep.tangent and rep.closed
    assert rep.dimension == 6
    assert rep.graded_dims == {-2: 1, -1: 4, 0: 1}
    assert rep.dimension <= e.isad


def test_real_span_distinguishes_real_and_imaginary_multiples():
    X = HoloField([Poly(), z1, Poly(), Poly()])
    assert in_real_span([X], X.scale(CoeffK.from_int(3))) is not None
    assert in_real_span([X], X.scale(I)) is None
    assert in_real_span([X, X.scale(I)], X.scale(ONE + I)) is not None


def test_unknown_family():
    with raises(KeyError):
        symmetry_generators("VII")
