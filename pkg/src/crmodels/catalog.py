"""The nine homogeneous 2-nondegenerate models in C⁴ as exact data.

Each entry stores its Hermitian matrix H, the distinguished functions
(f1, f2, f3) as rational functions p_j(ζ)/δ(ζ), and the closed-form
defining equation Re w = Num/Den typed in independently.  Three
consistency legs tie the representations together:

(a) the closed-form builder applied to (f1, f2, f3) gives a quotient equal
    to Num/Den as rational functions;
(b) the Taylor expansion of Num/Den equals the graph function of the model
    (H, S(ζ)) derived through the tensor machinery;
(c) the modified symbol extracted at the origin has the stored row, τ and
    vanishing obstructions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import HALF, I, SQRT2, SQRT3, ZERO, CoeffK, Scalar, as_coeff, sqrt_in_field
from .linalg import Mat2
from .model import Model, build_Q1Q2, derive_tensors, expand_quotient, graph_function
from .poly import W, WB, Z1, Z1B, Z2, Z2B, ZETA, ZETAB, Poly, var
from .series import (
    UniSeries,
    cos_series,
    log1p_series,
    semidirect_exp,
    series_compose,
    sin_series,
)
from .symbols import (
    ANTIDIAG,
    BigradedSymbol,
    ExtensionRequired,
    apply_bigraded_transform,
    classify_bigraded,
    extract_modified_symbol,
    omega_shape,
    representative,
)

__all__ = [
    "LABELS",
    "CatalogEntry",
    "catalog",
    "catalog_check",
    "catalog_check_all",
    "realize",
    "realize_row",
    "closed_form_f",
    "reparametrization",
    "non_constancy_witness",
    "rational_series",
]

LABELS = ("I", "II", "III", "IV.A", "IV.B", "V.A", "V.B", "VI", "VII")

# --- polynomial shorthands -----------------------------------------------------

z1, z2, z1b, z2b = var(Z1), var(Z2), var(Z1B), var(Z2B)
zeta, zetab = var(ZETA), var(ZETAB)
ONE_P = Poly.const(1)
ABS_ZETA = zeta * zetab


def _c(x: Scalar) -> Poly:
    return Poly.const(x)


def _re(p: Poly) -> Poly:
    return (p + p.conj()).scale(HALF)


def _zpoly(coeffs: list[Scalar]) -> Poly:
    """Σ c_k ζ^k."""
    out = Poly()
    for k, c in enumerate(coeffs):
        out = out + _c(c) * zeta ** k
    return out


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    H: Mat2
    hcase: str
    f_num: tuple[Poly, Poly, Poly]  # numerators p_j(ζ)
    f_den: Poly  # common denominator δ(ζ), δ(0) = 1
    num: Poly  # Re w = num / den
    den: Poly
    isad: int
    row: str
    params: dict
    tau: CoeffK
    note: str = ""

    @property
    def P(self) -> Poly:
        """Denominator-cleared defining polynomial den·(w + w̄) − 2·num."""
        return self.den * (var(W) + var(WB)) - self.num.scale(2)

    @property
    def Q2(self) -> Poly:
        """∂P/∂w, the factor used by tangency certificates."""
        return self.den

    def f_series(self, order: int) -> tuple[UniSeries, UniSeries, UniSeries]:
        inv = _uni(self.f_den, order).inverse()
        return tuple(_uni(p, order) * inv for p in self.f_num)  # type: ignore[return-value]

    def model(self, order: int = 10) -> Model:
        f1, f2, f3 = self.f_series(order)
        return Model.from_f(self.H, f1, f2, f3, order)

    def to_json(self, order: int = 10) -> dict:
        m = self.model(order)
        return {
            "label": self.label,
            "H": self.H.to_json(),
            "hCase": self.hcase,
            "f": {
                "numerators": [p.to_json() for p in self.f_num],
                "denominator": self.f_den.to_json(),
            },
            "definingEquation": {"num": self.num.to_json(), "den": self.den.to_json()},
            "P": self.P.to_json(),
            "series": {str(k): m.S.coeff(k).to_json() for k in range(1, order + 1)},
            "order": order,
            "expectedISAD": self.isad,
            "modifiedSymbol": {
                "row": self.row,
                "params": {k: (v.to_strings() if isinstance(v, CoeffK) else v) for k, v in self.params.items()},
                "tau": self.tau.to_strings(),
            },
            "note": self.note,
        }


def _uni(p: Poly, order: int) -> UniSeries:
    if p.variables() - {ZETA}:
        raise ValueError("expected a polynomial in ζ")
    c = [ZERO] * (order + 1)
    for m, v in p:
        if m[ZETA] <= order:
            c[m[ZETA]] = v
    return UniSeries(c, order)


# ---------------------------------------------------------------------------
# the entries
# ---------------------------------------------------------------------------


def _entries() -> dict[str, CatalogEntry]:
    out: dict[str, CatalogEntry] = {}
    mixed = Mat2.diag(1, -1)
    ident = Mat2.identity()
    r = ABS_ZETA  # |ζ|²
    one_minus = ONE_P - r
    abs1, abs2 = z1 * z1b, z2 * z2b

    out["VII"] = CatalogEntry(
        "VII", ANTIDIAG, "antidiag", (zeta, Poly(), Poly()), ONE_P,
        z1 * z2b + z1b * z2 + _re(zeta * z2b * z2b), ONE_P,
        16, "R7", {}, ZERO,
    )
    out["VI"] = CatalogEntry(
        "VI", mixed, "mixed", (Poly(), zeta, Poly()), ONE_P,
        abs1 - abs2 - _re(zeta * z1b * z2b).scale(2), ONE_P + r,
        15, "R3", {"eps": -1}, ZERO,
    )
    out["V.A"] = CatalogEntry(
        "V.A", ident, "definite", (Poly(), zeta, Poly()), ONE_P,
        abs1 + abs2 + _re(zeta * z1b * z2b).scale(2), one_minus,
        15, "R3", {"eps": 1}, ZERO,
    )
    out["V.B"] = CatalogEntry(
        "V.B", ANTIDIAG, "antidiag", (Poly(), zeta, Poly()), ONE_P,
        _re(z1 * z2b).scale(2) + _re(zeta * z1b * z2b).scale(2), one_minus,
        15, "R5", {}, ZERO,
    )
    out["IV.A"] = CatalogEntry(
        "IV.A", ident, "definite", (zeta, Poly(), Poly()), ONE_P,
        abs1 + _re(zeta * z1b * z1b) + abs2 * one_minus, one_minus,
        10, "R4", {"eps": 1}, ZERO,
    )
    out["IV.B"] = CatalogEntry(
        "IV.B", mixed, "mixed", (zeta, Poly(), Poly()), ONE_P,
        abs1 + _re(zeta * z1b * z1b) - abs2 * one_minus, one_minus,
        10, "R4", {"eps": -1}, ZERO,
    )

    # Type III: the row-4 realisation with ε = -1, τ = √3/2, rescaled by ζ ↦ 2ζ
    s3 = SQRT3
    block1 = _re(abs1.scale(2) + zeta * z1b * z1b).scale(2)
    block2 = _re(
        abs1.scale(-9) - abs2.scale(3) - (z1b * z1b * zeta).scale(6)
        + (z1 * z2b * zeta).scale(s3 * 4) + (z1b * z2b * zeta ** 2).scale(s3 * 2)
    )
    block3 = _re(
        abs1.scale(3) + abs2 + (z1b * z1b * zeta).scale(3) - (z1 * z2b * zeta).scale(s3 * 2)
        + z2b * z2b * zeta ** 3 - (z1b * z2b * zeta ** 2).scale(s3 * 2)
    ).scale(2)
    out["III"] = CatalogEntry(
        "III", mixed, "mixed", (zeta.scale(2), (zeta ** 2).scale(s3), (zeta ** 3).scale(2)), ONE_P,
        block1 * one_minus ** 2 + block2 * one_minus + block3, one_minus ** 3,
        9, "R4", {"eps": -1}, s3 / 2,
        "row-4 realisation with τ = √3/2 after ζ ↦ 2ζ",
    )

    # Type II: the row-6 realisation with τ = 1/2 after ζ ↦ ln(1+ζ)/(2τ)
    inner = z1 * z2b + z1b * z2 + _re(z1 * z2 * zetab).scale(2) + _re(z2 * z2 * (zetab ** 2 + zetab))
    tail = (abs2 * _re(ONE_P + zetab)).scale(2) + _re(z2 * z2 * (r + zetab ** 2 + zetab.scale(2)))
    out["II"] = CatalogEntry(
        "II", ANTIDIAG, "antidiag", (zeta + zeta ** 2, zeta, Poly()), ONE_P,
        inner * one_minus + r * tail, one_minus ** 2,
        8, "R6", {}, HALF,
        "row-6 realisation with τ = 1/2 after ζ ↦ ln(1+ζ)/(2τ)",
    )

    # Type I: row 2 with e^{iθ} = i, τ = 1/√2 after ζ ↦ ln(2ζ+1)/(1-i)
    s2 = SQRT2
    dn = (zeta.scale(2) + ONE_P) * (zetab.scale(2) + ONE_P)
    re_zeta = _re(zeta)
    a_part = _re(
        -(zetab + zetab ** 2) * z1 * z1 * _c(1 + I)
        - (z1 * z2 * zetab ** 2).scale(s2 * 2 * I)
        + (zetab + zetab ** 2) * z2 * z2 * _c(1 - I)
    )
    b_part = (
        -_re(z1 * z2b * (r * _c(1 + I) + re_zeta.scale(2 * I) + _c(I))).scale(2)
        + (abs1 * (r + _re(zeta.scale(1 - I)))).scale(s2)
        + (abs2 * (r + _re(zeta.scale(1 + I)))).scale(s2)
        + _re(z1 * z1 * (r * _c(I - 1) - zetab.scale(2) - _c(1 + I)))
        - _re((z1 * z2 * (r + zetab)).scale(I)).scale(s2 * 2)
        + _re(z2 * z2 * (r * _c(1 + I) + zetab.scale(2) + _c(1 - I)))
    )
    f_den = zeta.scale(2) + ONE_P
    out["I"] = CatalogEntry(
        "I", ANTIDIAG, "antidiag",
        ((zeta + zeta ** 2).scale(1 + I), (zeta ** 2).scale(s2 * I), (zeta + zeta ** 2).scale(I - 1)), f_den,
        (z1 * z2b + z1b * z2) * dn + a_part + (r * b_part).scale(2), dn,
        8, "R2", {"unit": I}, s2 / 2,
        "row-2 realisation with e^{iθ} = i, τ = 1/√2 after ζ ↦ ln(2ζ+1)/(1-i)",
    )
    return out


_CATALOG: dict[str, CatalogEntry] | None = None


def catalog(label: str) -> CatalogEntry:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _entries()
    if label not in _CATALOG:
        raise KeyError(f"unknown catalog label {label!r}; expected one of {', '.join(LABELS)}")
    return _CATALOG[label]


# ---------------------------------------------------------------------------
# consistency legs
# ---------------------------------------------------------------------------


def _leg_closed_form(e: CatalogEntry) -> bool:
    q1, q2 = build_Q1Q2(e.hcase, *e.f_num, denominator=e.f_den)
    return q1 * e.den == e.num * q2


def _leg_series(e: CatalogEntry, order: int) -> bool:
    m = e.model(order)
    return expand_quotient(e.num, e.den, order) == graph_function(derive_tensors(m))


def _leg_symbol(e: CatalogEntry, order: int) -> bool:
    m = e.model(order)
    bs = classify_bigraded(m.H, m.s1)
    if bs.row != e.row or bs.params != e.params:
        return False
    t = apply_bigraded_transform(m, bs.u, bs.U, bs.c)
    msd = extract_modified_symbol(t, BigradedSymbol(bs.row, bs.eps, bs.lam, bs.unit))
    return msd.tau == e.tau and msd.obstruction.is_zero()


def catalog_check(label: str, order: int = 10) -> dict[str, bool]:
    e = catalog(label)
    return {
        "closed_form": _leg_closed_form(e),
        "series": _leg_series(e, order),
        "symbol": _leg_symbol(e, order),
    }


def catalog_check_all(order: int = 10) -> dict[str, dict[str, bool]]:
    return {label: catalog_check(label, order) for label in LABELS}


# ---------------------------------------------------------------------------
# realisations of modified symbols
# ---------------------------------------------------------------------------


def realize(S02: Mat2, omega: Mat2, H: Mat2, order: int = 10) -> Model:
    """The model whose S(ζ) is generated from (S02, Ω) by the semidirect exponential."""
    return Model(H, semidirect_exp(S02, omega, order), order)


def realize_row(row: str, tau: Scalar = 0, order: int = 10, eps: int = 1,
                lam: Scalar | None = None, unit: Scalar | None = None) -> Model:
    H, S02 = representative(row, eps, None if lam is None else as_coeff(lam), None if unit is None else as_coeff(unit))
    params = {"lam": None if lam is None else as_coeff(lam), "unit": None if unit is None else as_coeff(unit)}
    return realize(S02, omega_shape(row, tau, params), H, order)


def rational_series(num: Poly, den: Poly, order: int) -> UniSeries:
    return _uni(num, order) * _uni(den, order).inverse()


def _need_sqrt(x: CoeffK, what: str) -> CoeffK:
    r = sqrt_in_field(x)
    if r is None:
        raise ExtensionRequired(f"{what} is not in Q(i,√2,√3)")
    return r


def reparametrization(row: str, params: dict, order: int, rational: bool = False) -> UniSeries:
    """The ζ-substitution that turns the exponential realisation into the closed form."""
    tau = as_coeff(params.get("tau", 0))
    z = UniSeries.zeta(order)
    if row == "R1" and not tau.is_zero():
        return z.scale((tau * _need_sqrt(as_coeff(params["lam"]), "√λ")).inverse())
    if row == "R2" and not tau.is_zero():
        if rational:
            # ln(1 + 2ζ)/(1 - i)
            return series_compose(log1p_series(order), z.scale(2)).scale((1 - I).inverse())
        half = _need_sqrt(as_coeff(params["unit"]), "e^{iθ/2}")
        return z.scale((tau * half).inverse())
    if row == "R6" and not tau.is_zero():
        return log1p_series(order).scale((tau * 2).inverse())
    return z


def closed_form_f(row: str, params: dict, order: int = 10, rational: bool = False) -> tuple[UniSeries, UniSeries, UniSeries]:
    """The distinguished functions (f1, f2, f3) of a row's realisation, as series."""
    tau = as_coeff(params.get("tau", 0))
    z = UniSeries.zeta(order)
    zero = UniSeries([], order)
    s, c = sin_series(order), cos_series(order)
    if row == "R1":
        lam = as_coeff(params["lam"])
        if tau.is_zero():
            return z, zero, z.scale(lam)
        sl = _need_sqrt(lam, "√λ")
        a, b = lam * lam + 1, lam * lam - 1
        sc = s * c
        f1 = (z.scale(a) - sc.scale(b)).scale((tau * sl * 2).inverse())
        f2 = (s * s).scale(-b / (tau * lam * 2))
        f3 = (z.scale(a) + sc.scale(b)).scale((tau * sl * lam * 2).inverse())
        return f1, f2, f3
    if row == "R2":
        unit = as_coeff(params["unit"])
        if tau.is_zero():
            return z, zero, z.scale(unit)
        if rational:
            den = UniSeries([1, 2], order).inverse()
            zz = z + z * z
            return (zz * den).scale(1 + I), (z * z * den).scale(SQRT2 * I), (zz * den).scale(I - 1)
        half = _need_sqrt(unit, "e^{iθ/2}")
        u2 = unit * unit
        sc = s * c
        f1 = (z.scale(1 + u2) + sc.scale(1 - u2)).scale(half.inverse() / (tau * 2))
        f2 = (s * s).scale(-I * unit.imag() / tau)
        f3 = (z.scale(1 + u2.inverse()) + sc.scale(1 - u2.inverse())).scale(half / (tau * 2))
        return f1, f2, f3
    if row in ("R3", "R5"):
        return zero, z, zero
    if row == "R4":
        return z, (z * z).scale(tau / 2), (z * z * z).scale(tau * tau / 3)
    if row == "R6":
        if tau.is_zero():
            return z, z, zero
        k = (tau * 2).inverse()
        return (z + z * z).scale(k), z.scale(k), zero
    if row == "R7":
        return z, zero, zero
    raise ValueError(f"unknown row {row!r}")


def non_constancy_witness(lam: Scalar = 4, tau: Scalar = 1, order: int = 6) -> dict:
    """Evidence that the row-1 realisation has a bigraded symbol that moves with ζ.

    Returns the constant term of the class invariant tr(P)²/det(P) and its
    first non-constant coefficient (by total degree, then lexicographically).
    """
    from .symbols import symbol_invariant_field

    m = realize_row("R1", tau=tau, lam=lam, order=order)
    f = symbol_invariant_field(m)
    moving = sorted((k for k, v in f.c.items() if sum(k) > 0 and not v.is_zero()), key=lambda k: (sum(k), k))
    first = moving[0] if moving else None
    return {
        "invariant_at_origin": f.at_origin(),
        "varies": first is not None,
        "first_moving_term": None if first is None else (first, f[first]),
        "order": order,
    }
