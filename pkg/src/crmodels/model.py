"""Model hypersurfaces determined by a pair (H, S(ζ)).

A model is the real hypersurface

    Re w = z H(ζ,ζ̄) z̄ᵀ + Re( z̄ S(ζ,ζ̄) z̄ᵀ )

where H(ζ,ζ̄) and S(ζ,ζ̄) are built from the constant Hermitian matrix H and
the holomorphic symmetric matrix S(ζ) by

    H(ζ,ζ̄) = ½ ( H (Id - S̄ Hᵀ S H)⁻¹ + (Id - H S̄ Hᵀ S)⁻¹ H )
    S(ζ,ζ̄) = Hᵀ (Id - S H S̄ Hᵀ)⁻¹ S H

with S̄ the conjugate series in ζ̄.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import HALF, CoeffK, I
from .linalg import Mat2
from .poly import W, WB, Z1, Z1B, Z2, Z2B, ZETA, ZETAB, Poly, var
from .series import (
    DEFAULT_ORDER,
    HERMITIAN,
    SYMMETRIC,
    BiSeries,
    SeriesMat,
    UniSeries,
)

__all__ = [
    "InvalidModel",
    "Model",
    "DerivedTensors",
    "derive_tensors",
    "tensor_identities",
    "defining_series",
    "FrameData",
    "LeviReport",
    "frame_data",
    "levi_form",
    "build_Q1Q2",
    "bi_to_poly",
    "poly_to_bi_coeffs",
    "HCASES",
    "expand_quotient",
    "graph_function",
    "hcase_of",
]


class InvalidModel(ValueError):
    """The pair (H, S(ζ)) violates the model invariants."""


@dataclass(frozen=True)
class Model:
    H: Mat2
    S: SeriesMat
    order: int = DEFAULT_ORDER

    def __post_init__(self) -> None:
        if not self.H.is_hermitian():
            raise InvalidModel("H must be Hermitian")
        if self.H.det().is_zero():
            raise InvalidModel("H must be nondegenerate")
        if self.S.bivariate:
            raise InvalidModel("S must be a series in ζ alone")
        if not self.S.is_symmetric():
            raise InvalidModel("S(ζ) must be symmetric")
        if not self.S.coeff(0).is_zero():
            raise InvalidModel("S(0) must vanish")
        if self.S.order < 1 or self.S.coeff(1).is_zero():
            raise InvalidModel("S_ζ(0) must be nonzero (2-nondegeneracy)")
        if self.S.order != self.order:
            object.__setattr__(self, "S", self.S.truncate(self.order))
            if self.S.order < self.order:
                object.__setattr__(self, "order", self.S.order)
        if self.S.symmetry != SYMMETRIC:
            object.__setattr__(self, "S", self.S.with_symmetry(SYMMETRIC))

    @classmethod
    def from_coefficients(cls, H: Mat2, coeffs: dict[int, Mat2], order: int = DEFAULT_ORDER) -> Model:
        return cls(H, SeriesMat.from_coeff_matrices(coeffs, order), order)

    @classmethod
    def from_f(cls, H: Mat2, f1: UniSeries, f2: UniSeries, f3: UniSeries, order: int | None = None) -> Model:
        if order is None:
            order = min(f1.order, f2.order, f3.order)
        return cls(H, SeriesMat([f1.truncate(order), f2.truncate(order), f2.truncate(order), f3.truncate(order)]), order)

    @property
    def s1(self) -> Mat2:
        """S_ζ(0)."""
        return self.S.coeff(1)

    @property
    def s2(self) -> Mat2:
        """S_ζζ(0) = 2 · (ζ² coefficient)."""
        return self.S.coeff(2).scale(2) if self.order >= 2 else Mat2.zero()

    def coefficients(self) -> dict[int, Mat2]:
        return {k: self.S.coeff(k) for k in range(1, self.order + 1) if not self.S.coeff(k).is_zero()}

    def with_order(self, order: int) -> Model:
        return Model(self.H, self.S.truncate(order), min(order, self.order))


# ---------------------------------------------------------------------------
# derived tensors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DerivedTensors:
    Hfield: SeriesMat
    Sfield: SeriesMat
    defining: Poly
    order: int


def _derive(m: Model) -> tuple[SeriesMat, SeriesMat]:
    H, N = m.H, m.order
    S = m.S.to_bi()
    Sb = m.S.conj()
    ident = SeriesMat.identity(N, bivariate=True)
    HT = H.T
    # (Id - S̄ Hᵀ S H)⁻¹ and (Id - H S̄ Hᵀ S)⁻¹
    a = ident - (Sb * HT) * (S * H)
    b = ident - (H * Sb) * (S.lmul_const(HT))
    hfield = (a.inverse().lmul_const(H) + b.inverse().rmul_const(H)).scale(HALF)
    c = ident - (S * H) * (Sb * HT)
    sfield = (c.inverse() * S).lmul_const(HT).rmul_const(H)
    return hfield.with_symmetry(HERMITIAN), sfield.with_symmetry(SYMMETRIC)


def derive_tensors(m: Model) -> DerivedTensors:
    """H(ζ,ζ̄), S(ζ,ζ̄) and the defining series of the model, to order N."""
    if not m.S.coeff(0).is_zero():
        raise InvalidModel("S(0) must vanish")
    hfield, sfield = _derive(m)
    return DerivedTensors(hfield, sfield, _defining_poly(hfield, sfield), m.order)


def tensor_identities(m: Model, dt: DerivedTensors | None = None) -> dict[str, bool]:
    """The seven jet identities at the origin, each checked exactly."""
    if dt is None:
        dt = derive_tensors(m)
    Hf, Sf = dt.Hfield, dt.Sfield
    HT = m.H.T
    s_z = Sf.d_zeta()
    return {
        "H(0,0) = H": Hf.at_origin() == m.H,
        "S(0,0) = 0": Sf.at_origin().is_zero(),
        "H_ζ(0,0) = 0": Hf.d_zeta().at_origin().is_zero(),
        "S_ζ̄(0,0) = 0": Sf.d_zetabar().at_origin().is_zero(),
        "S_ζζ̄(0,0) = 0": s_z.d_zetabar().at_origin().is_zero(),
        "S_ζ(0,0) = Hᵀ S_ζ(0) H": s_z.at_origin() == HT * m.s1 * m.H,
        "S_ζζ(0,0) = Hᵀ S_ζζ(0) H": s_z.d_zeta().at_origin() == HT * m.s2 * m.H,
    }


# ---------------------------------------------------------------------------
# polynomial views
# ---------------------------------------------------------------------------

_ZVARS = (Z1, Z2)
_ZBVARS = (Z1B, Z2B)


def bi_to_poly(b: BiSeries) -> Poly:
    terms = {}
    for (j, k), v in b.c.items():
        m = [0] * 8
        m[ZETA] = j
        m[ZETAB] = k
        terms[tuple(m)] = v
    return Poly(terms)


def poly_to_bi_coeffs(p: Poly, order: int) -> dict[tuple[int, ...], BiSeries]:
    """Split p into (non-ζ part) → BiSeries in (ζ, ζ̄) coefficient map."""
    groups: dict[tuple[int, ...], dict[tuple[int, int], CoeffK]] = {}
    for m, c in p:
        key = m[:3] + (0,) + m[4:7] + (0,)
        groups.setdefault(key, {})[(m[ZETA], m[ZETAB])] = c
    return {k: BiSeries(v, order) for k, v in groups.items()}


def _defining_poly(hfield: SeriesMat, sfield: SeriesMat) -> Poly:
    z = [var(Z1), var(Z2)]
    zb = [var(Z1B), var(Z2B)]
    herm = Poly()
    sym = Poly()
    for a in range(2):
        for b in range(2):
            herm = herm + z[a] * zb[b] * bi_to_poly(hfield[a, b])
            sym = sym + zb[a] * zb[b] * bi_to_poly(sfield[a, b])
    re_w = (var(W) + var(WB)).scale(HALF)
    return re_w - herm - (sym + sym.conj()).scale(HALF)


def defining_series(m: Model) -> Poly:
    """(w+w̄)/2 − z H(ζ,ζ̄) z̄ᵀ − ½(z̄ S(ζ,ζ̄) z̄ᵀ + conj), truncated in (ζ, ζ̄)."""
    return derive_tensors(m).defining


# ---------------------------------------------------------------------------
# frame and Levi form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FrameData:
    """Frame (g, f1, f2, e) near the curve Im w = z = 0.

    Along the curve g = ∂/∂Im w, f_a = ∂/∂z_a and e = ∂/∂ζ; off the curve the
    fields acquire corrections linear in (z, z̄).  ``e_z[c][a]`` and
    ``e_zbar[c][a]`` are the coefficients of z_a and z̄_a in the f_c-component
    of e (with the sign convention e = ∂ζ − Σ_c corr_c f_c).
    """

    e_z: tuple[tuple[BiSeries, BiSeries], tuple[BiSeries, BiSeries]]
    e_zbar: tuple[tuple[BiSeries, BiSeries], tuple[BiSeries, BiSeries]]
    f_g_z: tuple[tuple[BiSeries, BiSeries], tuple[BiSeries, BiSeries]]
    f_g_zbar: tuple[tuple[BiSeries, BiSeries], tuple[BiSeries, BiSeries]]
    order: int

    def e_component_on_curve(self, c: int) -> BiSeries:
        """f_c-component of e along the curve z = z̄ = 0.

        The correction is linear in (z, z̄), so on the curve it vanishes for
        every ζ; in particular e = ∂/∂ζ at the origin.
        """
        return BiSeries({}, self.order)

    def z_part_vanishes_at_origin(self) -> bool:
        """The z-linear part of the e-correction vanishes over ζ = 0 (from H_ζ(0,0) = 0)."""
        return all(x.at_origin().is_zero() for row in self.e_z for x in row)


def _linear_part(p: Poly, order: int) -> tuple[list[BiSeries], list[BiSeries]]:
    """Coefficients of z_a and z̄_a in a polynomial linear in (z, z̄)."""
    zc, zbc = [], []
    for k in _ZVARS:
        zc.append(_curve_value(p.diff(k), order))
    for k in _ZBVARS:
        zbc.append(_curve_value(p.diff(k), order))
    return zc, zbc


def _curve_value(p: Poly, order: int) -> BiSeries:
    """Restriction to z = z̄ = 0 (w-free) as a series in (ζ, ζ̄)."""
    q = p.subs_zero((Z1, Z2, Z1B, Z2B, W, WB))
    return BiSeries({(m[ZETA], m[ZETAB]): c for m, c in q}, order)


def _hessian(F: Poly) -> dict[tuple[int, int], Poly]:
    hol = (Z1, Z2, ZETA)
    anti = (Z1B, Z2B, ZETAB)
    return {(j, k): F.diff(hol[j]).diff(anti[k]) for j in range(3) for k in range(3)}


def frame_data(m: Model, dt: DerivedTensors | None = None) -> FrameData:
    if dt is None:
        dt = derive_tensors(m)
    order = dt.order - 1
    F = -(dt.defining - (var(W) + var(WB)).scale(HALF))  # Re w = F
    hess = _hessian(F)
    hinv = dt.Hfield.inverse()
    # F_{ζ z̄_b} is linear in (z, z̄); corr_c = Σ_b F_{ζ z̄_b} (H(ζ,ζ̄)⁻¹)_{b c}
    lin = [_linear_part(hess[(2, b)], order) for b in range(2)]
    e_z = []
    e_zb = []
    for c in range(2):
        e_z.append(tuple(sum((lin[b][0][a] * hinv[b, c] for b in range(2)), BiSeries({}, order)) for a in range(2)))
        e_zb.append(tuple(sum((lin[b][1][a] * hinv[b, c] for b in range(2)), BiSeries({}, order)) for a in range(2)))
    # ∂/∂Im w components of f_a: −i F_{z_a}, linear in (z, z̄)
    fz = []
    fzb = []
    for a, k in enumerate(_ZVARS):
        zc, zbc = _linear_part(F.diff(k), order)
        fz.append(tuple(x.scale(-I) for x in zc))
        fzb.append(tuple(x.scale(-I) for x in zbc))
    return FrameData(tuple(e_z), tuple(e_zb), tuple(fz), tuple(fzb), order)


@dataclass(frozen=True)
class LeviReport:
    matrix: tuple[tuple[BiSeries, ...], ...]  # 3×3 in the frame (f1, f2, e) along the curve
    block: SeriesMat
    block_matches: bool
    kernel_zero: bool
    kernel_zero_off_curve: bool
    order: int

    @property
    def kernel_spanned_by_e(self) -> bool:
        return self.kernel_zero and not self.block.at_origin().det().is_zero()


def levi_form(m: Model, order: int | None = None, dt: DerivedTensors | None = None) -> LeviReport:
    """Levi matrix in the frame (f1, f2, e) along Im w = z = 0.

    The Levi form of Re w = F is the complex Hessian of F applied to the
    (z, ζ)-components of the frame.  Along the curve the e-correction
    vanishes, so entries are read off the Hessian directly; off the curve the
    kernel property L(e, ·) = 0 is checked on the terms linear in (z, z̄).
    """
    if dt is None:
        dt = derive_tensors(m)
    if order is None:
        order = dt.order - 1
    order = min(order, dt.order - 1)
    F = -(dt.defining - (var(W) + var(WB)).scale(HALF))
    hess = _hessian(F)
    # frame components along the curve: f_a = e_a, e = e_3
    mat = tuple(tuple(_curve_value(hess[(j, k)], order) for k in range(3)) for j in range(3))
    block = SeriesMat([mat[0][0], mat[0][1], mat[1][0], mat[1][1]])
    target = dt.Hfield.truncate(order)
    block_ok = block == target
    kernel_ok = all(mat[2][k].is_zero() and mat[k][2].is_zero() for k in range(3))

    # off the curve: L(e, f_b) = F_{ζ z̄_b} − Σ_c corr_c F_{z_c z̄_b}, linear part
    fd = frame_data(m, dt)
    off_ok = True
    for b in range(2):
        zc, zbc = _linear_part(hess[(2, b)], order)
        for a in range(2):
            lhs_z = zc[a] - sum((fd.e_z[c][a] * dt.Hfield[c, b] for c in range(2)), BiSeries({}, order))
            lhs_zb = zbc[a] - sum((fd.e_zbar[c][a] * dt.Hfield[c, b] for c in range(2)), BiSeries({}, order))
            if not (lhs_z.truncate(order - 1).is_zero() and lhs_zb.truncate(order - 1).is_zero()):
                off_ok = False
    return LeviReport(mat, block, block_ok, kernel_ok, off_ok, order)


# ---------------------------------------------------------------------------
# closed forms Re w = Q1 / Q2
# ---------------------------------------------------------------------------

HCASES = ("definite", "mixed", "antidiag")


def _as_poly_in_zeta(f) -> Poly:
    if isinstance(f, Poly):
        return f
    if isinstance(f, UniSeries):
        terms = {}
        for k, c in enumerate(f.c):
            m = [0] * 8
            m[ZETA] = k
            terms[tuple(m)] = c
        return Poly(terms)
    return Poly.const(f)


def _re(p: Poly) -> Poly:
    return (p + p.conj()).scale(HALF)


def build_Q1Q2(hcase: str, f1, f2, f3, denominator: Poly | None = None) -> tuple[Poly, Poly]:
    """Numerator and denominator of Re w = Q1/Q2 for S(ζ) = [[f1, f2], [f2, f3]].

    The f_j are polynomials in ζ (or truncated series, treated as
    polynomials).  When ``denominator`` δ(ζ) is given, the f_j are read as
    p_j/δ and both Q1 and Q2 are multiplied by δ² δ̄² to clear denominators.
    """
    if hcase not in HCASES:
        raise ValueError(f"unknown H case {hcase!r}")
    f1, f2, f3 = (_as_poly_in_zeta(f) for f in (f1, f2, f3))
    d = Poly.const(1) if denominator is None else _as_poly_in_zeta(denominator)
    db = d.conj()
    g1, g2, g3 = f1.conj(), f2.conj(), f3.conj()
    z1, z2, z1b, z2b = var(Z1), var(Z2), var(Z1B), var(Z2B)
    D = f1 * f3 - f2 * f2  # carries δ²
    Db = D.conj()
    abs_z1 = z1 * z1b
    abs_z2 = z2 * z2b
    dd = d * db  # |δ|²

    # every piece is scaled to carry the overall factor δ² δ̄²
    if hcase == "definite":
        q1 = (
            abs_z1 * (dd * dd - (f2 * g2 + f3 * g3) * dd)
            + abs_z2 * (dd * dd - (f1 * g1 + f2 * g2) * dd)
            + _re(z1 * z2b * (g2 * f3 + g1 * f2) * dd).scale(2)
            + _re(
                # (Id - S̄S)⁻¹S̄ = (S̄ - D̄ adj S)/Q2, so the pure-square terms carry -D̄
                z1 * z1 * (-(f3 * Db * d) + g1 * d * d * db)
                + (z1 * z2 * (f2 * Db * d + g2 * d * d * db)).scale(2)
                + z2 * z2 * (-(f1 * Db * d) + g3 * d * d * db)
            )
        )
        q2 = dd * dd - (f1 * g1 + (f2 * g2).scale(2) + f3 * g3) * dd + D * Db
    elif hcase == "mixed":
        q1 = (
            abs_z1 * (dd * dd + (f2 * g2 - f3 * g3) * dd)
            + abs_z2 * (-(dd * dd) + (f1 * g1 - f2 * g2) * dd)
            + _re(z1 * z2b * (g2 * f3 - g1 * f2) * dd).scale(2)
            + _re(
                z1 * z1 * (-(f3 * Db * d) + g1 * d * d * db)
                + (z1 * z2 * (f2 * Db * d - g2 * d * d * db)).scale(2)
                + z2 * z2 * (-(f1 * Db * d) + g3 * d * d * db)
            )
        )
        q2 = dd * dd - (f1 * g1 - (f2 * g2).scale(2) + f3 * g3) * dd + D * Db
    else:
        q1 = (
            (abs_z1 * _re(f2 * g3) * dd).scale(2)
            + (abs_z2 * _re(f2 * g1) * dd).scale(2)
            + _re(z1 * z2b * (dd * dd - (g1 * f3 + f2 * g2) * dd)).scale(2)
            + _re(
                z1 * z1 * (-(f3 * Db * d) + g3 * d * d * db)
                + (z1 * z2 * (f2 * Db * d + g2 * d * d * db)).scale(2)
                + z2 * z2 * (-(f1 * Db * d) + g1 * d * d * db)
            )
        )
        q2 = dd * dd - (_re(f1 * g3).scale(2) + (f2 * g2).scale(2)) * dd + D * Db
    return q1, q2


def hcase_of(H: Mat2) -> str:
    """The Q1/Q2 formula block matching a representative H."""
    if H == Mat2.identity():
        return "definite"
    if H == Mat2.diag(1, -1):
        return "mixed"
    if H == Mat2.antidiag():
        return "antidiag"
    raise ValueError(f"no closed-form block for H = {H}")


def expand_quotient(num: Poly, den: Poly, order: int) -> Poly:
    """Series expansion of num/den in (ζ, ζ̄), truncated at total degree ``order``.

    ``den`` must be a polynomial in (ζ, ζ̄) alone with nonzero constant term.
    """
    if den.variables() - {ZETA, ZETAB}:
        raise ValueError("denominator may only involve ζ and ζ̄")
    inv = BiSeries({(m[ZETA], m[ZETAB]): c for m, c in den}, order).inverse()
    out = Poly()
    for key, coeff in poly_to_bi_coeffs(num, order).items():
        out = out + Poly.monomial(key) * bi_to_poly(coeff * inv)
    return out


def graph_function(dt: DerivedTensors) -> Poly:
    """F with the model written as Re w = F (the defining series without Re w)."""
    return (var(W) + var(WB)).scale(HALF) - dt.defining
