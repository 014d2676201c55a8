"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

from __future__ import annotations

from crmodels.acceptance import CRITERIA, CriterionResult


def _run(n: int) -> CriterionResult:
    r = CRITERIA[n]()
    print(r.line())
    return r


def test_criterion_1_derived_tensor_identities():
    r = _run(1)
    assert r.passed, r.detail
    assert r.detail["models"] == 25 and r.detail["identities"] == 7
    assert r.seconds < 60


def test_criterion_2_levi_structure():
    r = _run(2)
    assert r.passed, r.detail


def test_criterion_3_realisation_anchors():
    r = _run(3)
    assert r.passed, r.detail
    assert all(r.detail.values())


def test_criterion_4_modified_symbol_round_trip():
    r = _run(4)
    assert r.passed, r.detail
    assert r.detail["cases"] >= 7


def test_criterion_5_symmetry_algebras():
    r = _run(5)
    assert r.passed, r.detail
    dims = {k: (v["dimension"], v["gradedDims"]) for k, v in r.detail.items()}
    assert dims == {
        "I": (8, {"-2": 1, "-1": 4, "0": 3}),
        "II": (8, {"-2": 1, "-1": 4, "0": 3}),
        "III": (9, {"-2": 1, "-1": 4, "0": 4}),
    }


def test_criterion_6_catalog_consistency():
    r = _run(6)
    assert r.passed, r.detail
    assert len(r.detail) == 9


def test_criterion_7_normal_form_round_trip():
    r = _run(7)
    assert r.passed, r.detail
    assert {v[2] for v in r.detail["residual_dims"].values()} == {3, 2, 1, 0}


def test_criterion_8_non_constancy():
    r = _run(8)
    assert r.passed, r.detail
    assert r.detail["first_moving_term"] is not None


def test_criterion_9_kernel_properties():
    r = _run(9)
    assert r.passed, r.detail
    assert r.detail == {"reversion": 200, "matrix_inverse": 200, "division": 200}
