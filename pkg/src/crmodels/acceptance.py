"""The acceptance suite: nine end-to-end checks, each with its own oracle.

Every check is deterministic (seeded) and returns a CriterionResult; the
test-suite asserts on them and ``crmodels self-check`` prints them.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .field import HALF, I, ONE, ROOTS_OF_UNITY, SQRT2, SQRT3, ZERO, CoeffK
from .linalg import Mat2
from .model import Model, levi_form, tensor_identities
from .poly import NVARS, Poly
from .series import SeriesMat, UniSeries, series_compose, series_mat_inverse, series_reverse
from .symbols import classify_bigraded, extract_modified_symbol, omega_shape, representative

__all__ = [
    "CriterionResult",
    "CRITERIA",
    "run_all",
    "random_model",
    "random_group_element",
    "normal_form_bases",
    "residual_exemplars",
]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"criterion {self.number} [{'PASS' if self.passed else 'FAIL'}] {self.title} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 2), "detail": self.detail}


# ---------------------------------------------------------------------------
# random data
# ---------------------------------------------------------------------------

_RADICALS = (ONE, SQRT2, SQRT3, I, I * SQRT2)


def _rand_k(rng: random.Random, small: bool = False) -> CoeffK:
    a = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    b = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    x = CoeffK.gaussian(a, b)
    if not small and rng.random() < 0.3:
        x = x + rng.choice(_RADICALS) * Fraction(rng.randint(-2, 2), rng.randint(1, 2))
    return x


def _rand_sym(rng: random.Random) -> Mat2:
    b = _rand_k(rng)
    return Mat2(_rand_k(rng), b, b, _rand_k(rng))


def _rand_hermitian(rng: random.Random) -> Mat2:
    while True:
        a = CoeffK.from_fraction(Fraction(rng.randint(-3, 3)))
        d = CoeffK.from_fraction(Fraction(rng.randint(-3, 3)))
        b = _rand_k(rng, small=True)
        H = Mat2(a, b, b.conj(), d)
        if not H.det().is_zero():
            return H


def random_model(rng: random.Random, order: int = 8) -> Model:
    H = _rand_hermitian(rng)
    coeffs = {}
    while True:
        s1 = _rand_sym(rng)
        if not s1.is_zero():
            break
    coeffs[1] = s1
    for k in range(2, order + 1):
        if rng.random() < 0.75:
            coeffs[k] = _rand_sym(rng)
    return Model.from_coefficients(H, coeffs, order)


# ---------------------------------------------------------------------------
# criteria 1 and 2
# ---------------------------------------------------------------------------


def _suite(seed: int = 2024, n: int = 25, order: int = 8) -> list[Model]:
    rng = random.Random(seed)
    return [random_model(rng, order) for _ in range(n)]


def criterion_1() -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    for j, m in enumerate(_suite()):
        res = tensor_identities(m)
        bad = [k for k, ok in res.items() if not ok]
        if bad:
            failures.append({"model": j, "failed": bad})
    dt = time.perf_counter() - t0
    ok = not failures and dt < 60
    return CriterionResult(1, "derived-tensor identities on 25 random models at order 8", ok,
                           {"failures": failures, "models": 25, "identities": 7}, dt)


def criterion_2() -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    for j, m in enumerate(_suite()):
        rep = levi_form(m, order=6)
        if not (rep.block_matches and rep.kernel_zero):
            failures.append({"model": j, "block": rep.block_matches, "kernel": rep.kernel_zero})
    return CriterionResult(2, "Levi matrix: zero kernel row/column, upper block H(ζ,ζ̄) to order 6",
                           not failures, {"failures": failures}, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# criterion 3: realisation anchors
# ---------------------------------------------------------------------------


def criterion_3() -> CriterionResult:
    from .catalog import closed_form_f, reparametrization
    from .series import semidirect_exp

    t0 = time.perf_counter()
    N = 10
    detail = {}
    # row 4, τ = 1/2: exact closed form with no reparametrisation
    H, S02 = representative("R4", 1)
    S = semidirect_exp(S02, omega_shape("R4", HALF, {}), N)
    z = UniSeries.zeta(N)
    expected = (z, (z * z).scale(Fraction(1, 4)), (z * z * z).scale(Fraction(1, 12)))
    detail["row4_tau_half"] = (S[0, 0], S[0, 1], S[1, 1]) == expected
    detail["row4_matches_closed_form"] = closed_form_f("R4", {"tau": HALF}, N) == expected

    def identity(row: str, params: dict) -> bool:
        H, S02 = representative(row, params.get("eps", 1), params.get("lam"), params.get("unit"))
        S = semidirect_exp(S02, omega_shape(row, params["tau"], params), N)
        h = reparametrization(row, params, N)
        composed = tuple(series_compose(S[p], h) for p in ((0, 0), (0, 1), (1, 1)))
        return composed == closed_form_f(row, params, N)

    detail["row6_tau_half"] = identity("R6", {"tau": HALF})
    f1, f2, f3 = closed_form_f("R6", {"tau": HALF}, N)
    detail["row6_is_type_II_data"] = (f1, f2, f3) == (z + z * z, z, UniSeries([], N))
    detail["row1_lambda4_tau1"] = identity("R1", {"tau": ONE, "lam": CoeffK.from_int(4), "eps": 1})
    ok = all(detail.values())
    return CriterionResult(3, "realisation anchors (rows 4, 6, 1) as exact series identities to order 10",
                           ok, detail, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# criterion 4: modified-symbol round trip
# ---------------------------------------------------------------------------


def _row_cases() -> list[tuple[str, dict]]:
    cases: list[tuple[str, dict]] = []
    for tau in (ZERO, ONE):
        for eps in (1, -1):
            cases.append(("R1", {"tau": tau, "eps": eps, "lam": CoeffK.from_int(2)}))
            cases.append(("R4", {"tau": tau, "eps": eps}))
        cases.append(("R2", {"tau": tau, "unit": I}))
        cases.append(("R6", {"tau": tau}))
    for eps in (1, -1):
        cases.append(("R3", {"tau": ZERO, "eps": eps}))
    cases.append(("R5", {"tau": ZERO}))
    cases.append(("R7", {"tau": ZERO}))
    return cases


def criterion_4() -> CriterionResult:
    from .catalog import realize
    from .symbols import _in_g00

    t0 = time.perf_counter()
    failures = []
    for row, p in _row_cases():
        H, S02 = representative(row, p.get("eps", 1), p.get("lam"), p.get("unit"))
        omega = omega_shape(row, p["tau"], p)
        m = realize(S02, omega, H, 8)
        bs = classify_bigraded(m.H, m.s1)
        md = extract_modified_symbol(m, bs)
        ok = (bs.row == row and md.obstruction.is_zero() and md.tau == p["tau"]
              and md.omega == omega and _in_g00(md.omega_solved - omega, row, bs.params))
        if not ok:
            failures.append({"row": row, "params": str(p)})
    return CriterionResult(4, "modified-symbol round trip for every row (τ ∈ {0, 1})", not failures,
                           {"cases": len(_row_cases()), "failures": failures}, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# criterion 5: symmetry algebras
# ---------------------------------------------------------------------------


def criterion_5() -> CriterionResult:
    from .catalog import catalog
    from .symmetry import algebra_report, symmetry_generators

    t0 = time.perf_counter()
    expected = {"I": (8, {-2: 1, -1: 4, 0: 3}), "II": (8, {-2: 1, -1: 4, 0: 3}), "III": (9, {-2: 1, -1: 4, 0: 4})}
    detail = {}
    ok = True
    for label, (dim, graded) in expected.items():
        e = catalog(label)
        rep = algebra_report(symmetry_generators(label), e.P, e.Q2)
        good = rep.tangent and rep.closed and rep.dimension == dim == e.isad and rep.graded_dims == graded
        detail[label] = rep.to_json()
        ok &= good
    return CriterionResult(5, "symmetry algebras of types I, II, III: dimensions 8, 8, 9 and their gradings",
                           ok, detail, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# criterion 6: catalog consistency
# ---------------------------------------------------------------------------


def criterion_6() -> CriterionResult:
    from .catalog import catalog_check_all

    t0 = time.perf_counter()
    report = catalog_check_all(10)
    ok = len(report) == 9 and all(all(legs.values()) for legs in report.values())
    return CriterionResult(6, "catalog: three consistency legs for all nine entries at order 10", ok,
                           report, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# criterion 7: normal-form round trip and residual dimensions
# ---------------------------------------------------------------------------


def _sym(a, b, c) -> Mat2:
    return Mat2(a, b, b, c)


def _base(row: str, extra: dict, order: int = 6, **kw) -> Model:
    H, S02 = representative(row, **kw)
    coeffs = {1: S02}
    coeffs.update(extra)
    return Model.from_coefficients(H, coeffs, order)


def normal_form_bases() -> dict[str, Model]:
    """Ten models covering the seven rows and the finite-group and torus cases."""
    two = CoeffK.from_int(2)
    return {
        "R1": _base("R1", {2: _sym(0, 1, 3), 3: _sym(0, 2, 1)}, eps=1, lam=two),
        "R2": _base("R2", {2: _sym(0, 1, 2), 4: _sym(0, 1, 5)}, unit=I),
        "R3a": _base("R3", {2: _sym(1, 0, 2), 3: _sym(1, 0, 3)}, eps=1),
        "R3b": _base("R3", {3: _sym(0, 0, 2), 4: _sym(1, 0, 1)}, eps=-1),
        "R4a": _base("R4", {2: _sym(0, 1, 1), 3: _sym(0, 2, 1)}, eps=1),
        "R4b": _base("R4", {3: _sym(0, 1, 0), 5: _sym(0, 0, 1)}, eps=-1),
        "R5": _base("R5", {2: _sym(1, 0, 3), 3: _sym(2, 0, 1)}),
        "R6": _base("R6", {2: _sym(0, 1, 2), 3: _sym(0, 1, 1)}),
        "R7a": _base("R7", {2: _sym(0, 2, 1), 3: _sym(0, 1, 2)}),
        "R7b": _base("R7", {2: _sym(0, 1, 0), 3: _sym(0, 1, 3), 4: _sym(0, 2, 1)}),
    }


def residual_exemplars() -> list[tuple[str, Model, int]]:
    """One model per residual-symmetry case, with its expected dimension."""
    two = CoeffK.from_int(2)
    z = {}
    return [
        ("type VII", _base("R7", z), 3),
        ("type VI", _base("R3", z, eps=-1), 2),
        ("type V.A", _base("R3", z, eps=1), 2),
        ("type V.B", _base("R5", z), 2),
        ("type IV.A", _base("R4", z, eps=1), 2),
        ("type IV.B", _base("R4", z, eps=-1), 2),
        ("row 1, λ=2", _base("R1", z, eps=1, lam=two), 1),
        ("row 2, e^{iθ}=i", _base("R2", z, unit=I), 1),
        ("row 3 with c ζ^3", _base("R3", {3: _sym(0, 0, 1)}, eps=-1), 1),
        ("row 4 with c2 ζ^2, c1 ζ^3", _base("R4", {2: _sym(0, 1, 0), 3: _sym(0, 0, 1)}, eps=1), 1),
        ("row 4 with c1 ζ^3", _base("R4", {3: _sym(0, 0, 1)}, eps=-1), 1),
        ("row 6, τ=0", _base("R6", z), 1),
        ("row 1 general", normal_form_bases()["R1"], 0),
        ("row 7 general", normal_form_bases()["R7a"], 0),
    ]


def random_group_element(row: str, H: Mat2, rng: random.Random):
    """A random element of the residual group of a partial normal form, defined over K."""
    from .normal_form import GroupElement, _r7_shear, residual_components

    comp = rng.choice(residual_components(row, H)).U
    x1, x2 = rng.choice(ROOTS_OF_UNITY), rng.choice(ROOTS_OF_UNITY)
    if row in ("R1", "R2", "R6"):
        T = Mat2.diag(x1, x1)
    elif row in ("R3", "R4"):
        T = Mat2.diag(x1, x2)
    elif row == "R5":
        y = rng.choice([ONE, CoeffK.from_int(2), SQRT2, 1 + SQRT2]) * x1
        T = Mat2.diag(y, y.conj().inverse())
    else:
        rho = rng.choice([ONE, CoeffK.from_int(2), SQRT2])
        t = CoeffK.from_fraction(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
        T = Mat2.diag(x1 / rho, x1 * rho) * _r7_shear(t)
    return GroupElement.for_matrix(H, T * comp)


def criterion_7() -> CriterionResult:
    from .normal_form import group_action, linearized_isotropy_dimension, reduce_to_normal_form

    t0 = time.perf_counter()
    rng = random.Random(7)
    orbit_failures = []
    for name, m in normal_form_bases().items():
        r0 = reduce_to_normal_form(m)
        for j in range(25):
            g = random_group_element(r0.row, r0.model.H, rng)
            r = reduce_to_normal_form(group_action(r0.model, g))
            if r.key() != r0.key():
                orbit_failures.append({"base": name, "sample": j})
                break
    dims = {}
    dim_failures = []
    for label, m, expected in residual_exemplars():
        rec = reduce_to_normal_form(m)
        oracle = linearized_isotropy_dimension(rec.model)
        dims[label] = [rec.residual_dim, oracle, expected]
        if not (rec.residual_dim == oracle == expected):
            dim_failures.append(label)
    ok = not orbit_failures and not dim_failures
    return CriterionResult(7, "normal form constant on 10 orbits × 25 elements; residual dims 3/2/1/0",
                           ok, {"orbit_failures": orbit_failures, "residual_dims": dims,
                                "dim_failures": dim_failures}, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# criterion 8: non-constant symbol
# ---------------------------------------------------------------------------


def criterion_8() -> CriterionResult:
    from .catalog import catalog, non_constancy_witness
    from .symbols import symbol_invariant_field

    t0 = time.perf_counter()
    w = non_constancy_witness(4, 1, 6)
    controls = {}
    for label in ("I", "II", "V.A", "V.B", "VI"):  # entries with S02 of full rank
        f = symbol_invariant_field(catalog(label).model(6))
        controls[label] = all(sum(k) == 0 for k, v in f.c.items() if not v.is_zero())
    ok = w["varies"] and w["invariant_at_origin"] == CoeffK.from_fraction(Fraction(289, 16)) and all(controls.values())
    detail = {
        "invariant_at_origin": w["invariant_at_origin"].to_strings(),
        "first_moving_term": None if w["first_moving_term"] is None
        else {"degree": list(w["first_moving_term"][0]), "coefficient": w["first_moving_term"][1].to_strings()},
        "constant_on_homogeneous_entries": controls,
    }
    return CriterionResult(8, "row-1 family (λ=4, τ=1) has a ζ-dependent symbol invariant to order 6",
                           ok, detail, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# criterion 9: kernel properties
# ---------------------------------------------------------------------------


def _rand_unit_series(rng: random.Random, order: int) -> UniSeries:
    lead = _rand_k(rng, small=True)
    while lead.is_zero():
        lead = _rand_k(rng, small=True)
    return UniSeries([ZERO, lead] + [_rand_k(rng) for _ in range(order - 1)], order)


def _rand_poly(rng: random.Random, terms: int, deg: int) -> Poly:
    out: dict = {}
    for _ in range(terms):
        m = [0] * NVARS
        for _ in range(rng.randint(0, deg)):
            m[rng.randrange(NVARS)] += 1
        out[tuple(m)] = _rand_k(rng)
    return Poly(out)


def criterion_9(cases: int = 200) -> CriterionResult:
    t0 = time.perf_counter()
    rng = random.Random(9)
    counts = {"reversion": 0, "matrix_inverse": 0, "division": 0}
    for _ in range(cases):
        order = rng.randint(2, 8)
        f = _rand_unit_series(rng, order)
        g = series_reverse(f)
        z = UniSeries.zeta(order)
        if series_compose(f, g) == z and series_compose(g, f) == z:
            counts["reversion"] += 1

        order = rng.randint(1, 6)
        while True:
            c0 = Mat2(_rand_k(rng), _rand_k(rng), _rand_k(rng), _rand_k(rng))
            if not c0.det().is_zero():
                break
        mats = {0: c0}
        mats.update({k: Mat2(_rand_k(rng), _rand_k(rng), _rand_k(rng), _rand_k(rng)) for k in range(1, order + 1)})
        M = SeriesMat.from_coeff_matrices(mats, order)
        Minv = series_mat_inverse(M)
        ident = SeriesMat.identity(order)
        if M * Minv == ident and Minv * M == ident:
            counts["matrix_inverse"] += 1

        a = _rand_poly(rng, rng.randint(1, 5), 3)
        b = _rand_poly(rng, rng.randint(1, 4), 3)
        if b.is_zero():
            b = Poly.const(1)
        ok, q = b.divides(a * b)
        if ok and q * b == a * b:
            counts["division"] += 1
    ok = all(v == cases for v in counts.values())
    return CriterionResult(9, f"kernel properties: {cases} reversion / inversion / division cases each",
                           ok, counts, time.perf_counter() - t0)


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9,
}


def run_all() -> list[CriterionResult]:
    return [CRITERIA[k]() for k in sorted(CRITERIA)]
