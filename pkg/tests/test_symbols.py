from __future__ import annotations

from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st
from pytest import mark, raises

from crmodels.catalog import catalog, non_constancy_witness, realize_row
from crmodels.field import I, ONE, SQRT2, CoeffK
from crmodels.linalg import Mat2
from crmodels.model import Model
from crmodels.symbols import (
    ROWS,
    DegenerateInput,
    ExtensionRequired,
    apply_bigraded_transform,
    classify_bigraded,
    computed_g00,
    computed_normalizer,
    direct_sum_rank,
    extract_modified_symbol,
    omega_shape,
    representative,
    row_data,
    symbol_invariant_field,
    symbol_operator,
    transform_pair,
)

TWO = CoeffK.from_int(2)

# (row, eps, lam, unit) covering every row and both signs where they exist
CLASSES = [
    ("R1", 1, TWO, None), ("R1", -1, TWO, None), ("R1", 1, CoeffK.from_int(3), None),
    ("R2", None, None, I), ("R2", None, None, (ONE + I) / SQRT2),
    ("R3", 1, None, None), ("R3", -1, None, None),
    ("R4", 1, None, None), ("R4", -1, None, None),
    ("R5", None, None, None), ("R6", None, None, None), ("R7", None, None, None),
]

gauss = st.builds(CoeffK.gaussian, st.integers(-2, 2), st.integers(-2, 2))


@st.composite
def transforms(draw):
    U = Mat2(draw(gauss), draw(gauss), draw(gauss), draw(gauss))
    assume(not U.det().is_zero())
    c = draw(gauss.filter(lambda x: not x.is_zero()))
    u = draw(st.sampled_from([ONE, I]))  # u/ū = ±1
    return u, U, c


def _rep(row, eps, lam, unit):
    return representative(row, eps or 1, lam, unit)


@mark.parametrize("row,eps,lam,unit", CLASSES)
def test_representatives_classify_to_themselves(row, eps, lam, unit):
    H, S = _rep(row, eps, lam, unit)
    bs = classify_bigraded(H, S)
    assert (bs.row, bs.eps, bs.lam, bs.unit) == (row, eps, lam, unit)
    assert bs.representative() == (H, S)


@mark.parametrize("row,eps,lam,unit", CLASSES)
@given(g=transforms())
@settings(max_examples=15, deadline=None)
def test_classification_is_invariant_under_the_action(row, eps, lam, unit, g):
    H, S = _rep(row, eps, lam, unit)
    H2, S2 = transform_pair(H, S, *g)
    try:
        bs = classify_bigraded(H2, S2)
    except ExtensionRequired:
        assume(False)
    assert (bs.row, bs.eps, bs.lam, bs.unit) == (row, eps, lam, unit)
    # the returned transform is an explicit witness
    assert transform_pair(H2, S2, bs.u, bs.U, bs.c) == (H, S)


@given(g=transforms())
@settings(max_examples=20, deadline=None)
def test_symbol_operator_is_conjugated_and_scaled(g):
    u, U, c = g
    H, S = representative("R1", 1, TWO)
    H2, S2 = transform_pair(H, S, u, U, c)
    P, P2 = symbol_operator(H, S), symbol_operator(H2, S2)
    scale = c * c.conj()
    assert P2.trace() * P2.trace() * P.det() == P.trace() * P.trace() * P2.det()
    assert P2.det() == P.det() * scale * scale


def test_degenerate_inputs():
    with raises(DegenerateInput):
        classify_bigraded(Mat2.identity(), Mat2.zero())
    with raises(DegenerateInput):
        classify_bigraded(Mat2(1, 0, 0, 0), Mat2(1, 0, 0, 0))
    with raises(DegenerateInput):
        classify_bigraded(Mat2.identity(), Mat2(0, 1, 0, 0))
    with raises(ValueError):
        row_data("R8")


def test_extension_required_is_raised_rather_than_approximated():
    # the eigenvector normalisation needs a square root outside the field
    with raises(ExtensionRequired):
        classify_bigraded(Mat2.identity(), Mat2(1, 1, 1, 3))


@mark.parametrize("row", ROWS)
def test_normalizer_bases_match_linear_algebra(row):
    params = {"eps": 1, "lam": TWO, "unit": I}
    H, S = representative(row, 1, TWO if row == "R1" else None, I if row == "R2" else None)
    rd = row_data(row)
    assert len(computed_normalizer(H, S)) == len(rd.normalizer(params))
    assert len(computed_g00(H, S)) == len(rd.g00(params))
    imgs, n02, total = direct_sum_rank(row, params)
    assert imgs + n02 == total == 3


TAU_CASES = [
    ("R1", 1, dict(lam=TWO)), ("R1", 0, dict(lam=TWO)), ("R2", 1, dict(unit=I)), ("R3", 0, {}),
    ("R4", 1, {}), ("R4", 0, {}), ("R5", 0, {}), ("R6", 1, {}), ("R6", 0, {}), ("R7", 0, {}),
]


@mark.parametrize("row,tau,kw", TAU_CASES)
@mark.parametrize("eps", [1, -1])
def test_modified_symbol_of_a_realisation(row, tau, kw, eps):
    if eps == -1 and row not in ("R1", "R3", "R4"):
        return
    m = realize_row(row, tau, order=4, eps=eps, **kw)
    bs = classify_bigraded(m.H, m.s1)
    md = extract_modified_symbol(m, bs)
    assert md.tau == CoeffK.from_int(tau)
    assert md.obstruction.is_zero()
    params = {"lam": kw.get("lam"), "unit": kw.get("unit")}
    assert md.omega == omega_shape(row, tau, params)


def test_modified_symbol_requires_the_representative():
    m = Model.from_coefficients(Mat2.identity(), {1: Mat2.diag(4, 1)}, 3)
    bs = classify_bigraded(m.H, m.s1)
    with raises(DegenerateInput):
        extract_modified_symbol(m, bs)
    t = apply_bigraded_transform(m, bs.u, bs.U, bs.c)
    assert (t.H, t.s1) == bs.representative()
    assert extract_modified_symbol(t, bs).tau.is_zero()


def test_obstruction_is_read_off():
    H, S = representative("R3", 1)
    m = Model.from_coefficients(H, {1: S, 2: Mat2(Fraction(1, 2), 0, 0, Fraction(3, 2))}, 3)
    md = extract_modified_symbol(m, classify_bigraded(H, S))
    assert not md.obstruction.is_zero()
    assert (md.o1, md.o2) != (CoeffK(), CoeffK())


@mark.parametrize("label", ["I", "II", "V.A", "V.B", "VI"])
def test_symbol_invariant_is_constant_on_homogeneous_models(label):
    f = symbol_invariant_field(catalog(label).model(6))
    assert all(v.is_zero() for k, v in f.c.items() if sum(k) > 0)


def test_symbol_invariant_moves_on_the_exponential_realisation():
    w = non_constancy_witness(lam=4, tau=1, order=6)
    assert w["varies"]
    assert w["first_moving_term"] is not None


def test_symbol_invariant_needs_full_rank():
    with raises(DegenerateInput):
        symbol_invariant_field(catalog("III").model(4))
