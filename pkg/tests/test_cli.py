from __future__ import annotations

import json
import random

from click.testing import CliRunner
from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import fixture, mark, raises

from crmodels.acceptance import normal_form_bases, random_group_element, random_model
from crmodels.catalog import LABELS, catalog
from crmodels.cli import (
    MalformedInput,
    NonHolomorphic,
    ZeroDenominatorAtOrigin,
    emit_fields,
    emit_model,
    main,
    parse_fields,
    parse_model,
)
from crmodels.field import I
from crmodels.linalg import Mat2
from crmodels.model import Model
from crmodels.normal_form import group_action, reduce_to_normal_form
from crmodels.poly import Poly
from crmodels.symmetry import HoloField, symmetry_generators


@fixture
def run(tmp_path):
    runner = CliRunner()

    def _run(*args, files: dict | None = None):
        paths = []
        for name, content in (files or {}).items():
            p = tmp_path / name
            p.write_text(content if isinstance(content, str) else json.dumps(content), encoding="utf-8")
            paths.append(str(p))
        res = runner.invoke(main, [*args, *paths])
        return res.exit_code, (json.loads(res.stdout) if res.stdout.strip() else None), res.stdout

    return _run


# --- round trips ----------------------------------------------------------------


@given(st.integers(0, 10**6))
@settings(max_examples=20, deadline=None)
def test_model_round_trip(seed):
    m = random_model(random.Random(seed), order=5)
    doc = json.loads(json.dumps(emit_model(m)))
    assert parse_model(doc) == m


@mark.parametrize("label", ["I", "II", "III"])
def test_fields_round_trip(label):
    gens = symmetry_generators(label)
    doc = json.loads(json.dumps(emit_fields(gens)))
    back = parse_fields(doc)
    assert len(back) == len(gens) and all(a == b for a, b in zip(back, gens))


def test_fields_accept_exponent_maps():
    one = ["1/1"] + ["0/1"] * 7
    doc = {"fields": [{"components": {"w": {"0,0,0,0,0,0,0,0": ["0/1", "1/1"] + ["0/1"] * 6}},
                       "denominator": {"0,0,0,0,0,0,0,0": one, "0,0,0,1,0,0,0,0": ["2/1"] + ["0/1"] * 7}}]}
    (X,) = parse_fields(doc)
    assert X == HoloField.from_components([(Poly.const(I), Poly({(0, 0, 0, 1, 0, 0, 0, 0): 2, (0,) * 8: 1})),
                                           Poly(), Poly(), Poly()])


def test_parse_fields_errors():
    coeff = ["1/1"] + ["0/1"] * 7
    barred = {"fields": [{"components": {"z1": [[[0, 0, 0, 0, 0, 1, 0, 0], coeff]]}}]}
    with raises(NonHolomorphic) as exc:
        parse_fields(barred)
    assert exc.value.path == "$.fields[0].components.z1"
    vanishing = {"fields": [{"components": {"w": [[[0] * 8, coeff]]}, "denominator": [[[0, 0, 0, 1, 0, 0, 0, 0], coeff]]}]}
    with raises(ZeroDenominatorAtOrigin):
        parse_fields(vanishing)
    with raises(MalformedInput):
        parse_fields({"fields": [{"components": {"q": []}}]})
    with raises(MalformedInput):
        parse_fields([])


def test_parse_model_errors_carry_a_path():
    good = emit_model(Model.from_coefficients(Mat2.identity(), {1: Mat2.diag(1, 2)}, 3))
    cases = [
        ({**good, "order": 0}, "$.order"),
        ({**good, "H": [[1, 0], [0, 1]]}, "$.H[0][0]"),
        ({**good, "S": {"x": good["S"]["1"]}}, "$.S"),
        ({**good, "H": Mat2(1, 1, 0, 1).to_json()}, "$"),
    ]
    for doc, path in cases:
        with raises(MalformedInput) as exc:
            parse_model(doc)
        assert exc.value.path == path
    with raises(MalformedInput):
        parse_model({"H": good["H"]})


# --- commands -------------------------------------------------------------------


def test_classify_type_vii(run):
    code, rep, _ = run("classify", files={"m.json": emit_model(catalog("VII").model(6))})
    assert code == 0
    assert rep["schema"] == 1
    assert rep["bigraded"]["row"] == "R7"
    assert rep["residual_dim"] == 3
    assert set(rep) >= {"bigraded", "modified", "normal_form", "residual_dim", "notes"}


def test_classify_is_deterministic(run):
    files = {"m.json": emit_model(normal_form_bases()["R2"])}
    outs = {run("classify", files=files)[2] for _ in range(3)}
    assert len(outs) == 1


def test_classify_reports_field_extensions_with_exit_two(run):
    m = Model.from_coefficients(Mat2.identity(), {1: Mat2(1, 1, 1, 3), 2: Mat2(0, 1, 1, 0)}, 4)
    code, rep, _ = run("classify", files={"m.json": emit_model(m)})
    assert code == 2
    assert rep["error"]["kind"] == "extension-required"
    assert rep["bigraded"] is None and rep["normal_form"] is None  # never silently approximated
    assert rep["notes"]
    code, rep, _ = run("classify", "--backend", "float", files={"m.json": emit_model(m)})
    assert code == 0 and rep["bigraded"]["row"] == "R1" and rep["bigraded"]["backend"] == "float"


def test_strict_truncation(run):
    files = {"m.json": emit_model(catalog("VII").model(4))}
    code, rep, _ = run("normal-form", "--strict", files=files)
    assert code == 2 and rep["error"]["kind"] == "truncation-inconclusive"
    code, rep, _ = run("normal-form", files=files)
    assert code == 0 and rep["normal_form"]["toOrderOnly"]


def test_malformed_input_exits_one(run, tmp_path):
    code, rep, _ = run("classify", files={"bad.json": '{"H":\n [1,,]}'})
    assert code == 1
    assert "line 2" in rep["error"]["message"]
    code, rep, _ = run("classify", str(tmp_path / "missing.json"))
    assert code == 1 and rep["error"]["kind"] == "malformed-input"


def test_equiv_on_a_group_action_image(run):
    base = reduce_to_normal_form(normal_form_bases()["R4a"])
    g = random_group_element(base.row, base.model.H, random.Random(3))
    image = group_action(base.model, g)
    code, rep, _ = run("equiv", files={"a.json": emit_model(base.model), "b.json": emit_model(image)})
    assert code == 0
    assert rep["verdict"] == f"equivalent-at-order-{base.order}"


def test_equiv_distinct(run):
    b = normal_form_bases()
    code, rep, _ = run("equiv", files={"a.json": emit_model(b["R3a"]), "b.json": emit_model(b["R3b"])})
    assert code == 0 and rep["verdict"] == "distinct" and rep["witness"]


def test_invariants(run):
    code, rep, _ = run("invariants", files={"m.json": emit_model(catalog("VI").model(5))})
    assert code == 0 and rep["symbolInvariant"]["constantToOrder"]
    code, rep, _ = run("invariants", files={"m.json": emit_model(catalog("III").model(5))})
    assert code == 0 and rep["symbolInvariant"] is None


def test_catalog_commands(run):
    code, rep, _ = run("catalog", "list")
    assert code == 0 and [e["label"] for e in rep["entries"]] == list(LABELS)
    code, rep, _ = run("catalog", "emit", "III")
    assert code == 0 and rep["expectedISAD"] == 9
    num = Poly.from_json(rep["definingEquation"]["num"])
    assert num == catalog("III").num
    assert any(c.coords[4] != 0 for _, c in num)  # √3 coefficients survive exactly
    code, rep, _ = run("catalog", "emit", "VIII")
    assert code == 1
    code, rep, _ = run("catalog", "model", "II", "--order", "5")
    assert code == 0 and parse_model(rep) == catalog("II").model(5)


@mark.parametrize("label", ["I", "III"])
def test_verify_symmetry(run, label):
    code, rep, _ = run("verify-symmetry", files={
        "model.json": catalog(label).to_json(4), "fields.json": emit_fields(symmetry_generators(label))})
    assert code == 0 and rep["verified"]
    assert rep["algebra"]["dimension"] == catalog(label).isad


def test_verify_symmetry_reports_a_non_symmetry(run):
    coeff = ["1/1"] + ["0/1"] * 7
    code, rep, _ = run("verify-symmetry", files={
        "model.json": catalog("VII").to_json(4),
        "fields.json": {"fields": [{"components": {"z1": [[[0, 0, 1, 0, 0, 0, 0, 0], coeff]]}}]}})
    assert code == 0 and not rep["verified"]
    assert not rep["tangency"][0]["tangent"] and rep["tangency"][0]["witness"]


def test_verify_symmetry_rejects_bad_fields(run):
    coeff = ["1/1"] + ["0/1"] * 7
    code, rep, _ = run("verify-symmetry", files={
        "model.json": catalog("VII").to_json(4),
        "fields.json": {"fields": [{"components": {"w": [[[0, 0, 0, 0, 0, 1, 0, 0], coeff]]}}]}})
    assert code == 1 and rep["error"]["kind"] == "non-holomorphic"


def test_self_check_single_criterion(run):
    code, rep, _ = run("self-check", "--criterion", "3")
    assert code == 0 and rep["passed"]
    assert [c["criterion"] for c in rep["criteria"]] == [3]
