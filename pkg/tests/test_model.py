from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import mark, raises

from crmodels.acceptance import random_model
from crmodels.field import I, CoeffK
from crmodels.linalg import Mat2
from crmodels.model import (
    HCASES,
    InvalidModel,
    Model,
    build_Q1Q2,
    defining_series,
    derive_tensors,
    expand_quotient,
    frame_data,
    graph_function,
    hcase_of,
    levi_form,
    tensor_identities,
)
from crmodels.series import UniSeries

seeds = st.integers(0, 10**6)


def test_invalid_models_are_rejected():
    s1 = {1: Mat2(1, 0, 0, 0)}
    with raises(InvalidModel, match="Hermitian"):
        Model.from_coefficients(Mat2(1, 1, 0, 1), s1, 3)
    with raises(InvalidModel, match="nondegenerate"):
        Model.from_coefficients(Mat2(1, 0, 0, 0), s1, 3)
    with raises(InvalidModel, match="symmetric"):
        Model.from_coefficients(Mat2.identity(), {1: Mat2(0, 1, 0, 0)}, 3)
    with raises(InvalidModel, match="2-nondegeneracy"):
        Model.from_coefficients(Mat2.identity(), {2: Mat2(1, 0, 0, 0)}, 3)
    with raises(InvalidModel, match="vanish"):
        Model.from_coefficients(Mat2.identity(), {0: Mat2(1, 0, 0, 0), 1: Mat2(1, 0, 0, 0)}, 3)


def test_truncation_and_second_derivative():
    m = Model.from_coefficients(Mat2.identity(), {1: Mat2(1, 0, 0, 0), 2: Mat2(0, 1, 1, 0), 5: Mat2(0, 0, 0, 1)}, 6)
    assert m.s2 == Mat2(0, 2, 2, 0)
    t = m.with_order(3)
    assert t.order == 3 and 5 not in t.coefficients()
    assert m.with_order(9).order == 6


@given(seeds)
@settings(max_examples=8, deadline=None)
def test_jet_identities_hold_for_random_models(seed):
    m = random_model(random.Random(seed), order=4)
    assert all(tensor_identities(m).values())


@given(seeds)
@settings(max_examples=6, deadline=None)
def test_levi_form_structure(seed):
    m = random_model(random.Random(seed), order=4)
    rep = levi_form(m)
    assert rep.block_matches
    assert rep.kernel_zero
    assert rep.kernel_zero_off_curve
    assert rep.kernel_spanned_by_e


@given(seeds)
@settings(max_examples=6, deadline=None)
def test_defining_series_is_real_and_frame_is_standard_at_origin(seed):
    m = random_model(random.Random(seed), order=4)
    dt = derive_tensors(m)
    assert dt.defining.is_real()
    assert defining_series(m) == dt.defining
    assert frame_data(m, dt).z_part_vanishes_at_origin()


_REPS = {"definite": Mat2.identity(), "mixed": Mat2.diag(1, -1), "antidiag": Mat2.antidiag()}


@mark.parametrize("hcase", HCASES)
@given(st.lists(st.integers(-2, 2), min_size=9, max_size=9))
@settings(max_examples=5, deadline=None)
def test_closed_form_expands_to_the_series(hcase, c):
    """Q1/Q2 expanded in (ζ, ζ̄) equals the model computed from the matrix series."""
    order = 5
    f = [UniSeries([0, c[3 * j] or 1, c[3 * j + 1], CoeffK.gaussian(0, c[3 * j + 2])], order) for j in range(3)]
    H = _REPS[hcase]
    assert hcase_of(H) == hcase
    m = Model.from_f(H, *f, order=order)
    q1, q2 = build_Q1Q2(hcase, *f)
    assert expand_quotient(q1, q2, order) == graph_function(derive_tensors(m))


def test_closed_form_with_a_denominator_matches_the_plain_form():
    order = 5
    one_minus = UniSeries([1, -1], order)
    inv = one_minus.inverse()
    p1, p2, p3 = UniSeries.zeta(order), UniSeries([0, 0, 1], order), UniSeries([0, I], order)
    f = [p1 * inv, p2 * inv, p3 * inv]
    m = Model.from_f(Mat2.identity(), *f, order=order)
    q1, q2 = build_Q1Q2("definite", p1, p2, p3, denominator=one_minus)
    assert expand_quotient(q1, q2, order) == graph_function(derive_tensors(m))


def test_hcase_errors():
    with raises(ValueError):
        hcase_of(Mat2.diag(2, 1))
    with raises(ValueError):
        build_Q1Q2("other", UniSeries.zeta(3), UniSeries.zeta(3), UniSeries.zeta(3))
