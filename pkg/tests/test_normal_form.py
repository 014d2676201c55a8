from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import mark, raises

from crmodels.acceptance import normal_form_bases, random_group_element, random_model, residual_exemplars
from crmodels.field import I, CoeffK
from crmodels.linalg import Mat2
from crmodels.normal_form import (
    GroupElement,
    TruncationInconclusive,
    equivalent,
    first_entry,
    group_action,
    isotropy_algebra,
    linearized_isotropy_dimension,
    partial_normal_form,
    reduce_to_normal_form,
    residual_components,
    residual_symmetry_dimension,
    satisfies_row_constraints,
)
from crmodels.symbols import ExtensionRequired, apply_bigraded_transform, classify_bigraded

BASES = normal_form_bases()


@mark.parametrize("name", sorted(BASES))
@given(seed=st.integers(0, 10**6))
@settings(max_examples=6, deadline=None)
def test_normal_form_is_constant_on_orbits(name, seed):
    r0 = reduce_to_normal_form(BASES[name])
    g = random_group_element(r0.row, r0.model.H, random.Random(seed))
    assert reduce_to_normal_form(group_action(r0.model, g)).key() == r0.key()


@mark.parametrize("name", sorted(BASES))
def test_normal_form_satisfies_its_row_constraints_and_is_idempotent(name):
    rec = reduce_to_normal_form(BASES[name])
    assert rec.row == name[:2]
    assert satisfies_row_constraints(rec.row, rec.model)
    again = reduce_to_normal_form(rec.model)
    assert again.key() == rec.key()


@mark.parametrize("label,m,expected", residual_exemplars(), ids=[e[0] for e in residual_exemplars()])
def test_residual_dimension_agrees_with_brute_force(label, m, expected):
    rec = reduce_to_normal_form(m)
    assert rec.residual_dim == expected
    assert residual_symmetry_dimension(rec) == expected
    assert linearized_isotropy_dimension(rec.model) == expected
    assert len(isotropy_algebra(rec.model)) == expected


@given(seed=st.integers(0, 10**6))
@settings(max_examples=10, deadline=None)
def test_partial_normal_form_lands_on_the_representative(seed):
    m = random_model(random.Random(seed), order=4)
    try:
        pm = partial_normal_form(m)
    except ExtensionRequired:
        return
    bs = classify_bigraded(m.H, m.s1)
    assert (pm.H, pm.s1) == bs.representative()
    # the leading entry of S is exactly ζ
    pos = first_entry(pm.s1)
    assert [pm.S[pos][k] for k in range(pm.order + 1)] == [CoeffK(), CoeffK.from_int(1)] + [CoeffK()] * (pm.order - 1)


gauss = st.builds(CoeffK.gaussian, st.integers(-2, 2), st.integers(-2, 2))
invertible = st.builds(Mat2, gauss, gauss, gauss, gauss).filter(lambda U: not U.det().is_zero())


@mark.parametrize("name", sorted(BASES))
@given(U=invertible, c=gauss.filter(lambda x: not x.is_zero()), u=st.sampled_from([CoeffK.from_int(1), I]))
@settings(max_examples=5, deadline=None)
def test_a_model_is_equivalent_to_its_transform(name, U, c, u):
    m = BASES[name]
    v = equivalent(m, apply_bigraded_transform(m, u, U, c))
    if name[:2] in ("R5", "R7"):
        # the torus normalisation may need a real root outside the field
        assert v.status == f"equivalent-at-order-{m.order}" or "not in Q(i,√2,√3)" in v.reason
    else:
        assert v.status == f"equivalent-at-order-{m.order}"


def test_distinct_models_come_with_a_witness():
    a, b = BASES["R3a"], BASES["R3b"]
    v = equivalent(a, b)
    assert v.status == "distinct" and v.witness
    v = equivalent(BASES["R1"], BASES["R6"])
    assert v.status == "distinct" and v.witness["invariant"] == "bigraded symbol"


def test_group_action_rejects_non_isotropy_elements():
    m = BASES["R4a"]
    with raises(ValueError):
        group_action(m, GroupElement(U=Mat2(1, 1, 0, 1)))


@mark.parametrize("row", ["R1", "R3", "R5", "R7"])
def test_residual_components_preserve_the_symbol(row):
    m = BASES[row if row in BASES else row + "a"]
    for g in residual_components(row, m.H):
        assert g.preserves(m.H, m.s1)


def test_truncation_policy():
    pure = residual_exemplars()[0][1]  # type VII, S = ζ E11
    rec = reduce_to_normal_form(pure)
    assert rec.to_order_only and rec.residual_dim == 3
    assert any("vanish to order" in n for n in rec.notes)
    with raises(TruncationInconclusive):
        reduce_to_normal_form(pure, strict=True)
    # a general model is unaffected by strict mode
    assert reduce_to_normal_form(BASES["R1"], strict=True).key() == reduce_to_normal_form(BASES["R1"]).key()


def test_record_json_is_exact_strings():
    d = reduce_to_normal_form(BASES["R2"]).to_json()
    assert d["row"] == "R2"
    assert all(isinstance(x, str) for x in d["tau"])
    assert set(d["coefficients"]) == {str(k) for k in range(1, d["order"] + 1)}
