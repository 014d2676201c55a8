"""Command-line interface: JSON in, deterministic JSON out.

Exit codes: 0 success; 1 malformed input (or a failed self-check);
2 when the exact pipeline needs a scalar outside Q(i,√2,√3) or the
truncation order is too low to decide (the partial report is still printed).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, NoReturn

import click

from .field import CoeffK
from .linalg import Mat2
from .model import InvalidModel, Model
from .poly import NVARS, Poly
from .series import SeriesMat

SCHEMA = 1


# ---------------------------------------------------------------------------
# parsing and emitting
# ---------------------------------------------------------------------------


class MalformedInput(ValueError):
    kind = "malformed-input"

    def __init__(self, message: str, path: str = "") -> None:
        super().__init__(message)
        self.path = path


class NonHolomorphic(MalformedInput):
    kind = "non-holomorphic"


class ZeroDenominatorAtOrigin(MalformedInput):
    kind = "zero-denominator-at-origin"


def _load_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _coeff(x: Any, path: str) -> CoeffK:
    if not isinstance(x, list) or len(x) != 8 or not all(isinstance(v, (str, int)) for v in x):
        raise MalformedInput("expected a list of 8 rational strings", path)
    try:
        return CoeffK.from_strings([str(v) for v in x])
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad rational: {exc}", path) from exc


def _matrix(x: Any, path: str) -> Mat2:
    if not isinstance(x, list) or len(x) != 2 or any(not isinstance(r, list) or len(r) != 2 for r in x):
        raise MalformedInput("expected a 2x2 array", path)
    return Mat2.from_rows([[_coeff(x[i][j], f"{path}[{i}][{j}]") for j in range(2)] for i in range(2)])


def parse_model(data: Any) -> Model:
    """A Model from a ModelFile document."""
    if not isinstance(data, dict):
        raise MalformedInput("a model file is a JSON object", "$")
    for key in ("H", "S", "order"):
        if key not in data:
            raise MalformedInput(f"missing key {key!r}", "$")
    order = data["order"]
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise MalformedInput("order must be a positive integer", "$.order")
    H = _matrix(data["H"], "$.H")
    if not isinstance(data["S"], dict):
        raise MalformedInput("S maps degree strings to 2x2 arrays", "$.S")
    coeffs: dict[int, Mat2] = {}
    for k, v in data["S"].items():
        try:
            deg = int(k)
        except ValueError as exc:
            raise MalformedInput(f"degree {k!r} is not an integer", "$.S") from exc
        if deg < 0:
            raise MalformedInput("negative degree", f"$.S.{k}")
        if deg <= order:
            coeffs[deg] = _matrix(v, f"$.S.{k}")
    try:
        return Model(H, SeriesMat.from_coeff_matrices(coeffs, order), order)
    except InvalidModel as exc:
        raise MalformedInput(str(exc), "$") from exc


def emit_model(m: Model) -> dict:
    return {
        "schema": SCHEMA,
        "H": m.H.to_json(),
        "S": {str(k): m.S.coeff(k).to_json() for k in range(1, m.order + 1) if not m.S.coeff(k).is_zero()},
        "order": m.order,
    }


def _poly(x: Any, path: str) -> Poly:
    """A polynomial from [[exponents, coeff], ...] or {"e0,e1,...": coeff}."""
    items = list(x.items()) if isinstance(x, dict) else x
    if not isinstance(items, list):
        raise MalformedInput("expected a polynomial term list or map", path)
    terms: dict[tuple[int, ...], CoeffK] = {}
    for j, item in enumerate(items):
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise MalformedInput("each term is [exponents, coefficient]", f"{path}[{j}]")
        mono, c = item
        if isinstance(mono, str):
            mono = [p for p in mono.split(",") if p.strip()]
        try:
            exps = tuple(int(e) for e in mono)
        except (TypeError, ValueError) as exc:
            raise MalformedInput("bad exponent vector", f"{path}[{j}]") from exc
        if len(exps) != NVARS or any(e < 0 for e in exps):
            raise MalformedInput(f"exponent vectors have {NVARS} non-negative entries", f"{path}[{j}]")
        terms[exps] = terms.get(exps, CoeffK()) + _coeff(c, f"{path}[{j}]")
    return Poly(terms)


def parse_fields(data: Any) -> list:
    """Validated HoloFields from a fields document."""
    from .symmetry import HOLO_VARS, HoloField

    if not isinstance(data, dict) or not isinstance(data.get("fields"), list):
        raise MalformedInput('expected {"fields": [...]}', "$")
    out = []
    for j, f in enumerate(data["fields"]):
        path = f"$.fields[{j}]"
        if not isinstance(f, dict) or not isinstance(f.get("components", {}), dict):
            raise MalformedInput("a field is an object with a components map", path)
        comps = f.get("components", {})
        names = ("w", "z1", "z2", "zeta")
        unknown = set(comps) - set(names)
        if unknown:
            raise MalformedInput(f"unknown components {sorted(unknown)}", path)
        nums = [_poly(comps[n], f"{path}.components.{n}") if n in comps else Poly() for n in names]
        den = _poly(f["denominator"], f"{path}.denominator") if "denominator" in f else Poly.const(1)
        for p, where in [(n, f"components.{name}") for n, name in zip(nums, names)] + [(den, "denominator")]:
            if p.variables() - set(HOLO_VARS):
                raise NonHolomorphic("coefficients must not involve barred variables", f"{path}.{where}")
        if den.coeff((0,) * NVARS).is_zero():
            raise ZeroDenominatorAtOrigin("the denominator vanishes at the origin", f"{path}.denominator")
        out.append(HoloField.from_components([(n, den) for n in nums]))
    return out


def emit_fields(fields: list) -> dict:
    return {"schema": SCHEMA, "fields": [f.to_json() for f in fields]}


def _defining(data: Any) -> tuple[Poly, Poly]:
    """(P, Q2) from a catalog entry document or {"P": ..., "Q2": ...}."""
    from .poly import W, WB, var

    if not isinstance(data, dict):
        raise MalformedInput("expected a JSON object", "$")
    if "definingEquation" in data:
        eq = data["definingEquation"]
        num, den = _poly(eq.get("num"), "$.definingEquation.num"), _poly(eq.get("den"), "$.definingEquation.den")
        return den * (var(W) + var(WB)) - num.scale(2), den
    if "P" in data:
        P = _poly(data["P"], "$.P")
        Q2 = _poly(data["Q2"], "$.Q2") if "Q2" in data else P.diff(W)
        return P, Q2
    raise MalformedInput("expected definingEquation {num, den} or P", "$")


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _dump(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


def _emit(report: dict, code: int = 0) -> NoReturn:
    report.setdefault("schema", SCHEMA)
    click.echo(_dump(report))
    sys.exit(code)


def _fail_input(exc: MalformedInput, command: str) -> NoReturn:
    _emit({"command": command, "error": {"kind": exc.kind, "message": str(exc), "path": exc.path}}, 1)


def _read(path: str, command: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _fail_input(MalformedInput(f"cannot read {path}: {exc.strerror}"), command)
    try:
        return _load_json(text, path)
    except MalformedInput as exc:
        _fail_input(exc, command)


def _load_model(path: str, command: str, order: int | None = None) -> Model:
    data = _read(path, command)
    try:
        m = parse_model(data)
    except MalformedInput as exc:
        _fail_input(exc, command)
    return m.with_order(order) if order is not None else m


def _inconclusive(report: dict, exc: Exception) -> NoReturn:
    kind = "extension-required" if exc.__class__.__name__ == "ExtensionRequired" else "truncation-inconclusive"
    report["error"] = {"kind": kind, "message": str(exc)}
    if report.get("command") == "classify":
        for key in ("bigraded", "modified", "normal_form", "residual_dim"):
            report.setdefault(key, None)
    report.setdefault("notes", []).append(str(exc))
    _emit(report, 2)


# ---------------------------------------------------------------------------
# pipelines
# ---------------------------------------------------------------------------


def _symbol_reports(m: Model, report: dict) -> None:
    from .symbols import apply_bigraded_transform, classify_bigraded, extract_modified_symbol

    bs = classify_bigraded(m.H, m.s1)
    report["bigraded"] = bs.to_json()
    if m.order >= 2:
        t = apply_bigraded_transform(m, bs.u, bs.U, bs.c)
        report["modified"] = extract_modified_symbol(t, bs).to_json()
    else:
        report["modified"] = None
        report.setdefault("notes", []).append("order 1: the modified symbol needs the ζ² coefficient")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Exact normal forms and symmetries of 2-nondegenerate models in C⁴."""


@main.command()
@click.argument("file", type=click.Path())
@click.option("--order", type=int, default=None, help="Truncate the input to this order.")
@click.option("--backend", type=click.Choice(["exact", "float"]), default="exact", show_default=True)
@click.option("--tolerance", type=float, default=1e-30, show_default=True, help="Float backend only.")
@click.option("--strict", is_flag=True, help="Exit 2 instead of flagging a result valid only to the truncation order.")
def classify(file: str, order: int | None, backend: str, tolerance: float, strict: bool) -> None:
    """Bigraded and modified symbol, normal form and residual symmetry of a model."""
    from .normal_form import TruncationInconclusive, reduce_to_normal_form
    from .symbols import DegenerateInput, ExtensionRequired

    m = _load_model(file, "classify", order)
    report: dict = {"command": "classify", "order": m.order, "notes": []}
    if backend == "float":
        from .approx import classify_float

        try:
            report["bigraded"] = classify_float(m.H, m.s1, tolerance)
        except ValueError as exc:
            _fail_input(MalformedInput(str(exc)), "classify")
        report["notes"].append("float backend: bigraded symbol only; no normal form is computed")
        _emit(report)
    try:
        _symbol_reports(m, report)
        rec = reduce_to_normal_form(m, strict=strict)
    except DegenerateInput as exc:
        _fail_input(MalformedInput(str(exc)), "classify")
    except (ExtensionRequired, TruncationInconclusive) as exc:
        _inconclusive(report, exc)
    report["normal_form"] = rec.to_json()
    report["residual_dim"] = rec.residual_dim
    report["notes"].extend(rec.notes)
    _emit(report)


@main.command("normal-form")
@click.argument("file", type=click.Path())
@click.option("--order", type=int, default=None)
@click.option("--strict", is_flag=True, help="Exit 2 instead of flagging a result valid only to the truncation order.")
def normal_form_cmd(file: str, order: int | None, strict: bool) -> None:
    """The normal form record of a model."""
    from .normal_form import TruncationInconclusive, reduce_to_normal_form
    from .symbols import DegenerateInput, ExtensionRequired

    m = _load_model(file, "normal-form", order)
    report: dict = {"command": "normal-form", "order": m.order}
    try:
        rec = reduce_to_normal_form(m, strict=strict)
    except DegenerateInput as exc:
        _fail_input(MalformedInput(str(exc)), "normal-form")
    except (ExtensionRequired, TruncationInconclusive) as exc:
        _inconclusive(report, exc)
    report["normal_form"] = rec.to_json()
    report["model"] = emit_model(rec.model)
    _emit(report)


@main.command()
@click.argument("file1", type=click.Path())
@click.argument("file2", type=click.Path())
def equiv(file1: str, file2: str) -> None:
    """Decide equivalence of two models up to the common truncation order."""
    from .normal_form import equivalent
    from .symbols import DegenerateInput

    a, b = _load_model(file1, "equiv"), _load_model(file2, "equiv")
    try:
        v = equivalent(a, b)
    except DegenerateInput as exc:
        _fail_input(MalformedInput(str(exc)), "equiv")
    report = {"command": "equiv", **v.to_json()}
    _emit(report, 2 if v.status == "inconclusive" else 0)


@main.command()
@click.argument("file", type=click.Path())
@click.option("--order", type=int, default=None)
def invariants(file: str, order: int | None) -> None:
    """Symbol invariants at the origin and whether the symbol class moves along ζ."""
    from .symbols import DegenerateInput, ExtensionRequired, symbol_invariant_field

    m = _load_model(file, "invariants", order)
    report: dict = {"command": "invariants", "order": m.order, "notes": []}
    try:
        f = symbol_invariant_field(m)
        moving = sorted((k for k, v in f.c.items() if sum(k) > 0 and not v.is_zero()), key=lambda k: (sum(k), k))
        report["symbolInvariant"] = {
            "atOrigin": f.at_origin().to_strings(),
            "constantToOrder": not moving,
            "firstMovingTerm": None if not moving else {"degree": list(moving[0]), "coefficient": f[moving[0]].to_strings()},
        }
    except DegenerateInput:
        report["symbolInvariant"] = None
        report["notes"].append("S02 has rank one; the trace/determinant invariant is not defined")
    try:
        _symbol_reports(m, report)
    except DegenerateInput as exc:
        _fail_input(MalformedInput(str(exc)), "invariants")
    except ExtensionRequired as exc:
        _inconclusive(report, exc)
    _emit(report)


@main.group()
def catalog() -> None:
    """The nine homogeneous models."""


@catalog.command("list")
def catalog_list() -> None:
    from .catalog import LABELS, catalog as get

    rows = []
    for label in LABELS:
        e = get(label)
        rows.append({"label": label, "hCase": e.hcase, "isad": e.isad, "row": e.row})
    _emit({"command": "catalog list", "entries": rows})


@catalog.command("emit")
@click.argument("label")
@click.option("--order", type=int, default=10, show_default=True)
def catalog_emit(label: str, order: int) -> None:
    from .catalog import catalog as get

    try:
        e = get(label)
    except KeyError as exc:
        _fail_input(MalformedInput(str(exc.args[0])), "catalog emit")
    _emit({"command": "catalog emit", **e.to_json(order)})


@catalog.command("model")
@click.argument("label")
@click.option("--order", type=int, default=10, show_default=True)
def catalog_model(label: str, order: int) -> None:
    """The entry as a model file (H and the series of S)."""
    from .catalog import catalog as get

    try:
        e = get(label)
    except KeyError as exc:
        _fail_input(MalformedInput(str(exc.args[0])), "catalog model")
    _emit(emit_model(e.model(order)))


@catalog.command("fields")
@click.argument("label")
def catalog_fields(label: str) -> None:
    """The symmetry generators of types I, II, III as a fields file."""
    from .symmetry import symmetry_generators

    try:
        gens = symmetry_generators(label)
    except KeyError as exc:
        _fail_input(MalformedInput(str(exc.args[0])), "catalog fields")
    _emit(emit_fields(gens))


@main.command("verify-symmetry")
@click.argument("modelfile", type=click.Path())
@click.argument("fieldsfile", type=click.Path())
def verify_symmetry(modelfile: str, fieldsfile: str) -> None:
    """Tangency, closure, dimension and grading of a list of holomorphic fields."""
    from .symmetry import algebra_report, tangency

    try:
        P, Q2 = _defining(_read(modelfile, "verify-symmetry"))
        fields = parse_fields(_read(fieldsfile, "verify-symmetry"))
    except MalformedInput as exc:
        _fail_input(exc, "verify-symmetry")
    try:
        per_field = [tangency(f, P, Q2).to_json() for f in fields]
    except ValueError as exc:
        _fail_input(MalformedInput(str(exc)), "verify-symmetry")
    rep = algebra_report(fields, P, Q2)
    _emit({"command": "verify-symmetry", "tangency": per_field, "algebra": rep.to_json(),
           "verified": rep.tangent and rep.closed})


@main.command("self-check")
@click.option("--criterion", "only", type=int, multiple=True, help="Run only these criteria.")
def self_check(only: tuple[int, ...]) -> None:
    """Run the acceptance suite; exit 1 if any check fails."""
    from .acceptance import CRITERIA

    results = []
    for k in sorted(CRITERIA):
        if only and k not in only:
            continue
        r = CRITERIA[k]()
        click.echo(r.line(), err=True)
        results.append(r)
    ok = all(r.passed for r in results)
    report = {"command": "self-check", "passed": ok,
              "criteria": [{"criterion": r.number, "title": r.title, "passed": r.passed} for r in results]}
    _emit(report, 0 if ok else 1)


if __name__ == "__main__":  # pragma: no cover
    main()
