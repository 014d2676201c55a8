"""Bigraded symbol, modified symbol and first-order obstructions of a model.

The bigraded symbol at the origin is the pair (H, S02) with S02 = S_ζ(0).
Pairs are acted on by

    H ↦ (u/ū) Uᵀ H Ū,     S02 ↦ c U⁻¹ S02 U⁻ᵀ

(c comes from the reparametrisation ζ ↦ cζ) and every orbit contains exactly
one of seven representatives R1..R7.  The modified symbol adds a matrix Ω,
fixed by requiring S_ζζ(0) - Ω S02 - S02 Ωᵀ to lie in a prescribed
complement N02; what is left over are the obstructions to first-order
constancy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .field import I, ONE, ZERO, CoeffK, Scalar, abs_in_field, as_coeff, norm_root, sqrt_in_field
from .linalg import Mat2, in_span, nullspace, rank, solve
from .model import DerivedTensors, Model, derive_tensors
from .series import BiSeries, SeriesMat

__all__ = [
    "ROWS",
    "ExtensionRequired",
    "DegenerateInput",
    "BigradedSymbol",
    "ModifiedSymbolData",
    "RowData",
    "row_data",
    "representative",
    "symbol_operator",
    "classify_bigraded",
    "apply_bigraded_transform",
    "transform_pair",
    "xi_and_s02_field",
    "omega_field",
    "obstruction_fields",
    "obstruction_alternative",
    "symbol_invariant_field",
    "extract_modified_symbol",
    "computed_normalizer",
    "computed_g00",
    "direct_sum_rank",
    "omega_shape",
]

ROWS = ("R1", "R2", "R3", "R4", "R5", "R6", "R7")

ANTIDIAG = Mat2(0, 1, 1, 0)
E11 = Mat2(1, 0, 0, 0)
E21 = Mat2(0, 0, 1, 0)
E12 = Mat2(0, 1, 0, 0)
E22 = Mat2(0, 0, 0, 1)


class ExtensionRequired(ArithmeticError):
    """The requested normalisation needs a radical that is not in K."""


class DegenerateInput(ValueError):
    """The input is outside the domain of the classification (e.g. S02 = 0)."""


# ---------------------------------------------------------------------------
# row data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RowData:
    """Per-row normalisation data.

    ``normalizer(params)`` returns a basis of the admissible Ω space;
    ``projection`` lists the (i, j) positions (i <= j) spanning N02;
    ``g00(params)`` is a basis of the residual algebra g′00.
    """

    row: str
    normalizer: Callable[[dict], list[Mat2]]
    projection: tuple[tuple[int, int], ...]
    g00: Callable[[dict], list[Mat2]]
    obstruction_slots: tuple[tuple[int, int], ...]  # positions of (o1, o2)


def _diag_pair(_p: dict) -> list[Mat2]:
    return [E11, E22]


def _scalar(_p: dict) -> list[Mat2]:
    return [Mat2.identity()]


_ROWS: dict[str, RowData] = {
    "R1": RowData("R1", lambda p: [Mat2.identity(), Mat2(0, -p["lam"], 1, 0)], ((1, 1),), _scalar, ((1, 1),)),
    "R2": RowData("R2", lambda p: [Mat2.identity(), Mat2(0, -p["unit"], 1, 0)], ((1, 1),), _scalar, ((1, 1),)),
    "R3": RowData("R3", _diag_pair, ((0, 0), (1, 1)), _diag_pair, ((0, 0), (1, 1))),
    "R4": RowData("R4", lambda p: [E11, E22, E21], ((1, 1),), _diag_pair, ((1, 1),)),
    "R5": RowData("R5", _diag_pair, ((0, 0), (1, 1)), _diag_pair, ((0, 0), (1, 1))),
    "R6": RowData("R6", lambda p: [Mat2.identity(), Mat2(0, 1, 0, -2)], ((1, 1),), _scalar, ((1, 1),)),
    "R7": RowData("R7", lambda p: [E11, E12, E22], ((0, 1), (1, 1)), lambda p: [E11, E12, E22], ((1, 1), (0, 1))),
}


def row_data(row: str) -> RowData:
    if row not in _ROWS:
        raise ValueError(f"unknown row {row!r}")
    return _ROWS[row]


def representative(row: str, eps: int = 1, lam: Scalar | None = None, unit: Scalar | None = None) -> tuple[Mat2, Mat2]:
    """The (H, S02) representative of a row."""
    if row in ("R1", "R3", "R4") and eps not in (1, -1):
        raise ValueError("eps must be ±1")
    if row == "R1":
        if lam is None:
            raise ValueError("R1 needs λ")
        return Mat2.diag(1, eps), Mat2.diag(1, lam)
    if row == "R2":
        if unit is None:
            raise ValueError("R2 needs the unit e^{iθ}")
        return ANTIDIAG, Mat2.diag(1, unit)
    if row == "R3":
        return Mat2.diag(1, eps), ANTIDIAG
    if row == "R4":
        return Mat2.diag(1, eps), E11
    if row == "R5":
        return ANTIDIAG, ANTIDIAG
    if row == "R6":
        return ANTIDIAG, Mat2(1, 1, 1, 0)
    if row == "R7":
        return ANTIDIAG, E11
    raise ValueError(f"unknown row {row!r}")


def omega_shape(row: str, tau: Scalar, params: dict) -> Mat2:
    """The realizable Ω of a row as a function of τ (zero for rows without τ)."""
    tau = as_coeff(tau)
    if row == "R1":
        return Mat2(0, -tau * params["lam"], tau, 0)
    if row == "R2":
        return Mat2(0, -tau * params["unit"], tau, 0)
    if row == "R4":
        return Mat2(0, 0, tau, 0)
    if row == "R6":
        return Mat2(tau * 2, tau, 0, 0)
    return Mat2.zero()


def _has_tau(row: str) -> bool:
    return row in ("R1", "R2", "R4", "R6")


# ---------------------------------------------------------------------------
# bigraded symbol
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BigradedSymbol:
    row: str
    eps: int | None = None
    lam: CoeffK | None = None
    unit: CoeffK | None = None
    u: CoeffK = ONE
    U: Mat2 = field(default_factory=Mat2.identity)
    c: CoeffK = ONE

    @property
    def params(self) -> dict:
        out: dict = {}
        if self.eps is not None:
            out["eps"] = self.eps
        if self.lam is not None:
            out["lam"] = self.lam
        if self.unit is not None:
            out["unit"] = self.unit
        return out

    def representative(self) -> tuple[Mat2, Mat2]:
        return representative(self.row, self.eps or 1, self.lam, self.unit)

    def same_class(self, other: BigradedSymbol) -> bool:
        return (self.row, self.eps, self.lam, self.unit) == (other.row, other.eps, other.lam, other.unit)

    def to_json(self) -> dict:
        params = {}
        if self.eps is not None:
            params["eps"] = self.eps
        if self.lam is not None:
            params["lambda"] = self.lam.to_strings()
        if self.unit is not None:
            params["unit"] = self.unit.to_strings()
        return {
            "row": self.row,
            "params": params,
            "transform": {"u": self.u.to_strings(), "U": self.U.to_json(), "c": self.c.to_strings()},
        }


def symbol_operator(H: Mat2, S02: Mat2) -> Mat2:
    """P = S02 · H · conj(S02) · Hᵀ.

    Under the action above P is conjugated by U and scaled by |c|², so its
    spectrum up to positive scaling and its Jordan type are invariants.  For
    the representatives (where H is a real involution) it coincides with
    S02 · conj(H)⁻¹ · conj(S02) · H⁻¹.
    """
    return S02 * H * S02.conj() * H.T


def transform_pair(H: Mat2, S02: Mat2, u: Scalar, U: Mat2, c: Scalar) -> tuple[Mat2, Mat2]:
    u, c = as_coeff(u), as_coeff(c)
    Ui = U.inverse()
    return (U.T * H * U.conj()).scale(u / u.conj()), (Ui * S02 * Ui.T).scale(c)


def apply_bigraded_transform(m: Model, u: Scalar, U: Mat2, c: Scalar) -> Model:
    """H ↦ (u/ū)UᵀHŪ and S(ζ) ↦ U⁻¹ S(cζ) U⁻ᵀ."""
    u, c = as_coeff(u), as_coeff(c)
    Ui = U.inverse()
    H = (U.T * m.H * U.conj()).scale(u / u.conj())
    coeffs = {}
    ck = ONE
    for k in range(1, m.order + 1):
        ck = ck * c
        a = m.S.coeff(k)
        if not a.is_zero():
            coeffs[k] = (Ui * a * Ui.T).scale(ck)
    return Model.from_coefficients(H, coeffs, m.order)


# --- small helpers on column vectors -----------------------------------------

Vec = tuple[CoeffK, CoeffK]


def _herm(G: Mat2, x: Vec, y: Vec) -> CoeffK:
    """x̄ᵀ G y."""
    return x[0].conj() * (G[0, 0] * y[0] + G[0, 1] * y[1]) + x[1].conj() * (G[1, 0] * y[0] + G[1, 1] * y[1])


def _bil(S: Mat2, x: Vec, y: Vec) -> CoeffK:
    """xᵀ S y."""
    return x[0] * (S[0, 0] * y[0] + S[0, 1] * y[1]) + x[1] * (S[1, 0] * y[0] + S[1, 1] * y[1])


def _scale(a: CoeffK, x: Vec) -> Vec:
    return (a * x[0], a * x[1])


def _kernel_vector(A: Mat2) -> Vec:
    ns = nullspace(A.rows(), 2)
    if len(ns) != 1:
        raise DegenerateInput("expected a one-dimensional kernel")
    return (ns[0][0], ns[0][1])


def _parallel(x: Vec, y: Vec) -> bool:
    return (x[0] * y[1] - x[1] * y[0]).is_zero()


def _need(x: CoeffK | None, what: str) -> CoeffK:
    if x is None:
        raise ExtensionRequired(f"{what} is not in Q(i,√2,√3)")
    return x


def _isotropic_lines(S: Mat2) -> list[Vec]:
    s11, s12, s22 = S[0, 0], S[0, 1], S[1, 1]
    if s11.is_zero():
        return [(ONE, ZERO), (s22, -s12 * 2)]
    root = _need(sqrt_in_field(s12 * s12 - s11 * s22), "square root of -det S02")
    return [((-s12 + root) / s11, ONE), ((-s12 - root) / s11, ONE)]


def _positive_sign(x: CoeffK) -> int:
    if not x.is_real() or x.is_zero():
        raise DegenerateInput("expected a nonzero real value")
    return x.sign()


def _abs_real(x: CoeffK) -> CoeffK:
    return x if x.sign() > 0 else -x


def classify_bigraded(H: Mat2, S02: Mat2) -> BigradedSymbol:
    """Identify the row of (H, S02) and an explicit (u, U, c) carrying it there."""
    if not H.is_hermitian() or H.det().is_zero():
        raise DegenerateInput("H must be Hermitian and nondegenerate")
    if not S02.is_symmetric():
        raise DegenerateInput("S02 must be symmetric")
    if S02.is_zero():
        raise DegenerateInput("S02 = 0: the structure is not 2-nondegenerate")
    definite = H.det().sign() > 0
    G = H.inverse()
    T = H * S02.conj() * H.T * S02  # conjugated by the column-basis change, scaled by |c|²
    h = lambda x, y: _herm(G, x, y)  # noqa: E731
    s = lambda x, y: _bil(S02, x, y)  # noqa: E731

    eps = lam = unit = None
    if S02.rank() == 1:
        m2 = _kernel_vector(S02)
        if T.is_zero():
            row = "R7"
            if definite or not h(m2, m2).is_zero():
                raise DegenerateInput("inconsistent rank-one data")
            x: Vec = (ONE, ZERO) if not _parallel((ONE, ZERO), m2) else (ZERO, ONE)
            t = -h(x, x) / (h(x, m2) * 2)
            m1 = (x[0] + t * m2[0], x[1] + t * m2[1])
            sg = 1
            m2 = _scale(ONE / h(m1, m2), m2)
            c = ONE / s(m1, m1)
        else:
            row = "R4"
            row_vec = [m2[0].conj() * G[0, 0] + m2[1].conj() * G[1, 0], m2[0].conj() * G[0, 1] + m2[1].conj() * G[1, 1]]
            k = nullspace([row_vec], 2)[0]
            m1 = (k[0], k[1])
            h11, h22 = h(m1, m1), h(m2, m2)
            sg = _positive_sign(h11)
            eps = sg * _positive_sign(h22)
            m1 = _scale(_need(norm_root(ONE / _abs_real(h11)), "a unit normalisation"), m1)
            m2 = _scale(_need(norm_root(ONE / _abs_real(h22)), "a unit normalisation"), m2)
            c = ONE / s(m1, m1)
    else:
        tr, det = T.trace(), T.det()
        disc = tr * tr - det * 4
        if disc.is_zero():
            mu = tr / 2
            if T == Mat2.diag(mu, mu):
                if not mu.is_real():
                    raise DegenerateInput("scalar invariant with non-real eigenvalue")
                lines = _isotropic_lines(S02)
                m1, m2 = lines
                if definite or mu.sign() < 0:
                    row = "R3"
                    h11, h22 = h(m1, m1), h(m2, m2)
                    sg = _positive_sign(h11)
                    eps = sg * _positive_sign(h22)
                    m1 = _scale(_need(norm_root(ONE / _abs_real(h11)), "a unit normalisation"), m1)
                    m2 = _scale(_need(norm_root(ONE / _abs_real(h22)), "a unit normalisation"), m2)
                    c = ONE / s(m1, m2)
                else:
                    row = "R5"
                    sg = 1
                    m2 = _scale(ONE / h(m1, m2), m2)
                    c = ONE / s(m1, m2)
            else:
                row = "R6"
                if definite:
                    raise DegenerateInput("unipotent invariant with definite H")
                # the eigenline of T is the second basis vector; it is null for
                # both forms.  The first is x + t·m2 with t fixed by h(m1, m1) = 0
                # and by s(m1, m1)·h(m1, m2)/s(m1, m2) being real.
                m2 = _kernel_vector(T - Mat2.diag(mu, mu))
                if not (h(m2, m2).is_zero() and s(m2, m2).is_zero()):
                    raise DegenerateInput("inconsistent unipotent data")
                x = (ONE, ZERO) if not _parallel((ONE, ZERO), m2) else (ZERO, ONE)
                A, B, beta = s(x, x), s(x, m2), h(x, m2)
                two_t_beta = -h(x, x) - I * (A * beta / B).imag()
                t = two_t_beta / (beta * 2)
                m1 = (x[0] + t * m2[0], x[1] + t * m2[1])
                s11, s12, h12 = s(m1, m1), s(m1, m2), h(m1, m2)
                q = s12 / (s11 * h12)
                sg = _positive_sign(q)
                a1 = _need(norm_root(_abs_real(q)), "a unit normalisation")
                m2 = _scale(a1 * s11 / s12, m2)
                m1 = _scale(a1, m1)
                c = ONE / s(m1, m1)
        else:
            root = _need(sqrt_in_field(disc), "an eigenvalue of the symbol operator")
            mua, mub = (tr + root) / 2, (tr - root) / 2
            if mua.is_real() and mub.is_real():
                row = "R1"
                if mua.sign() < 0 or mub.sign() < 0:
                    raise DegenerateInput("negative eigenvalues of the symbol operator")
                if mua < mub:
                    mua, mub = mub, mua
                lam = _need(sqrt_in_field(mua / mub), "λ")
                m1 = _kernel_vector(T - Mat2.diag(mub, mub))
                m2 = _kernel_vector(T - Mat2.diag(mua, mua))
                h11, h22 = h(m1, m1), h(m2, m2)
                sg = _positive_sign(h11)
                eps = sg * _positive_sign(h22)
                m1 = _scale(_need(norm_root(ONE / _abs_real(h11)), "a unit normalisation"), m1)
                m2 = _scale(_need(norm_root(ONE / _abs_real(h22)), "a unit normalisation"), m2)
                c = ONE / s(m1, m1)
                w2 = lam * s(m1, m1) / s(m2, m2)
                m2 = _scale(_need(sqrt_in_field(w2), "a phase normalisation"), m2)
            else:
                row = "R2"
                if definite:
                    raise DegenerateInput("unimodular invariant with definite H")
                va = _kernel_vector(T - Mat2.diag(mua, mua))
                vb = _kernel_vector(T - Mat2.diag(mub, mub))
                sg = 1
                for m1, m2 in ((va, vb), (vb, va)):
                    s11, s22, h12 = s(m1, m1), s(m2, m2), h(m1, m2)
                    R = s22 / (h12 * h12 * s11)
                    R = abs_in_field(R)
                    mod2 = _need(sqrt_in_field(_need(R, "|λ|")), "a modulus normalisation")
                    a1 = _need(norm_root(mod2), "a unit normalisation")
                    n1 = _scale(a1, m1)
                    n2 = _scale(ONE / (a1.conj() * h12), m2)
                    c = ONE / s(n1, n1)
                    unit = c * s(n2, n2)
                    if unit.imag().sign() > 0:
                        m1, m2 = n1, n2
                        break
                else:
                    raise DegenerateInput("could not orient the unimodular invariant")

    M = Mat2(m1[0], m2[0], m1[1], m2[1])
    U = M.inverse().T
    u = ONE if sg == 1 else I
    bs = BigradedSymbol(row, eps, lam, unit, u, U, c)
    Ht, St = transform_pair(H, S02, u, U, c)
    if (Ht, St) != bs.representative():
        raise AssertionError(f"classification transform failed for {row}: {Ht}, {St}")
    return bs


# ---------------------------------------------------------------------------
# fields along the curve z = 0, w = 0
# ---------------------------------------------------------------------------


def _fields(m: Model, dt: DerivedTensors | None):
    if dt is None:
        dt = derive_tensors(m)
    return dt.Hfield, dt.Sfield


def xi_and_s02_field(m: Model, dt: DerivedTensors | None = None) -> tuple[SeriesMat, SeriesMat]:
    """Ξ = (Hᵀ)⁻¹ S_ζ and S02 = Ξ H⁻¹ as functions of (ζ, ζ̄)."""
    Hf, Sf = _fields(m, dt)
    Hinv = Hf.inverse()
    xi = Hf.T.inverse() * Sf.d_zeta()
    return xi, xi * Hinv


def omega_field(m: Model, dt: DerivedTensors | None = None) -> SeriesMat:
    """Ω = (Hᵀ)⁻¹ H_ζᵀ as a function of (ζ, ζ̄)."""
    Hf, _ = _fields(m, dt)
    return Hf.T.inverse() * Hf.d_zeta().T


def obstruction_fields(m: Model, dt: DerivedTensors | None = None) -> tuple[SeriesMat, SeriesMat]:
    """(e(ι(ē)), e(ι(e))) along the curve.

    e(ι(ē)) is conj(S_ζζ̄); e(ι(e)) is the three-term expression
    -Ω S02 + (Hᵀ)⁻¹ S_ζζ H⁻¹ - S02 H_ζ H⁻¹.
    """
    Hf, Sf = _fields(m, dt)
    Hinv = Hf.inverse()
    HTinv = Hf.T.inverse()
    s_z = Sf.d_zeta()
    h_z = Hf.d_zeta()
    ebar = s_z.d_zetabar().conj()
    s02 = HTinv * s_z * Hinv
    omega = HTinv * h_z.T
    e = (HTinv * s_z.d_zeta() * Hinv) - omega * s02 - s02 * h_z * Hinv
    return ebar, e


def obstruction_alternative(m: Model, dt: DerivedTensors | None = None) -> SeriesMat:
    """Second expression for e(ι(ē)): H_ζ H⁻¹ conj(S_ζ) + conj(S_ζ) H⁻ᵀ H_ζᵀ."""
    Hf, Sf = _fields(m, dt)
    Hinv = Hf.inverse()
    h_z = Hf.d_zeta()
    sb = Sf.d_zeta().conj()
    return h_z * Hinv * sb + sb * Hinv.T * h_z.T


def symbol_invariant_field(m: Model, dt: DerivedTensors | None = None) -> BiSeries:
    """tr(P)²/det(P) for P = S02 · H · conj(S02) · Hᵀ along the curve.

    P is conjugated by U and scaled by |c|² under the action on pairs, so this
    ratio is a function of the bigraded symbol class at each point; it is
    constant in (ζ, ζ̄) whenever the symbol is.  Requires det P(0) ≠ 0, i.e.
    S02 of full rank at the origin.
    """
    Hf, _ = _fields(m, dt)
    _, s02 = xi_and_s02_field(m, dt)
    P = s02 * Hf * s02.conj() * Hf.T
    tr = P[0, 0] + P[1, 1]
    det = P[0, 0] * P[1, 1] - P[0, 1] * P[1, 0]
    if det.at_origin().is_zero():
        raise DegenerateInput("the invariant needs S02 of full rank at the origin")
    return tr * tr * det.inverse()


# ---------------------------------------------------------------------------
# modified symbol
# ---------------------------------------------------------------------------

_SYM_POS = ((0, 0), (0, 1), (1, 1))


def _sym_vec(A: Mat2) -> list[CoeffK]:
    return [A[i, j] for i, j in _SYM_POS]


def _sym_unit(i: int, j: int) -> Mat2:
    return Mat2.unit(i, j) if i == j else Mat2.unit(i, j) + Mat2.unit(j, i)


@dataclass(frozen=True)
class ModifiedSymbolData:
    row: str
    omega: Mat2  # the row's Ω shape after canonicalisation
    tau: CoeffK
    obstruction: Mat2  # O^N, an element of N02
    o1: CoeffK
    o2: CoeffK
    omega_solved: Mat2  # the raw solution in the normalizer, before reduction
    rescaling: CoeffK = ONE  # unit c applied by the τ ≥ 0 canonicalisation

    @property
    def constant_to_first_order(self) -> bool:
        return self.obstruction.is_zero()

    def to_json(self) -> dict:
        return {
            "omega": self.omega.to_json(),
            "tau": self.tau.to_strings(),
            "o1": self.o1.to_strings(),
            "o2": self.o2.to_strings(),
        }


def _omega_basis_images(S02: Mat2, basis: list[Mat2]) -> list[list[CoeffK]]:
    return [_sym_vec(B * S02 + S02 * B.T) for B in basis]


def direct_sum_rank(row: str, params: dict) -> tuple[int, int, int]:
    """(dim of {BS+SBᵀ}, dim N02, rank of their union) for a row."""
    _, S02 = representative(row, params.get("eps", 1), params.get("lam"), params.get("unit"))
    rd = row_data(row)
    imgs = _omega_basis_images(S02, rd.normalizer(params))
    proj = [_sym_vec(_sym_unit(i, j)) for i, j in rd.projection]
    return rank(imgs) if any(any(not x.is_zero() for x in v) for v in imgs) else 0, len(proj), rank(imgs + proj)


def computed_normalizer(H: Mat2, S02: Mat2) -> list[Mat2]:
    """Basis of {B : Bᵀ X + X B ∈ span X} for X = H conj(S02) Hᵀ, by linear algebra."""
    X = H * S02.conj() * H.T
    # unknowns b11, b12, b21, b22, κ
    cols = []
    for k in range(4):
        B = Mat2.unit(k // 2, k % 2)
        cols.append(_sym_vec(B.T * X + X * B))
    cols.append([-v for v in _sym_vec(X)])
    rows = [[cols[k][r] for k in range(5)] for r in range(3)]
    basis = [Mat2(*v[:4]) for v in nullspace(rows, 5)]
    red = [b.e for b in basis if not b.is_zero()]
    from .linalg import rref

    r, _ = rref(red)
    return [Mat2(*v) for v in r]


def computed_g00(H: Mat2, S02: Mat2) -> list[Mat2]:
    """Elements of the normalizer that also preserve span{S02}."""
    norm = computed_normalizer(H, S02)
    # B = Σ x_k N_k with B S02 + S02 Bᵀ = κ S02
    cols = [_sym_vec(N * S02 + S02 * N.T) for N in norm]
    cols.append([-v for v in _sym_vec(S02)])
    n = len(cols)
    rows = [[cols[k][r] for k in range(n)] for r in range(3)]
    out = []
    for v in nullspace(rows, n):
        B = Mat2.zero()
        for x, N in zip(v[:-1], norm):
            B = B + N.scale(x)
        if not B.is_zero():
            out.append(B)
    from .linalg import rref

    r, _ = rref([b.e for b in out]) if out else ([], [])
    return [Mat2(*v) for v in r]


def _in_g00(D: Mat2, row: str, params: dict) -> bool:
    basis = row_data(row).g00(params)
    return in_span([list(b.e) for b in basis], list(D.e)) is not None


def extract_modified_symbol(m: Model, bs: BigradedSymbol, canonicalize: bool = True) -> ModifiedSymbolData:
    """Solve S_ζζ(0) = O + ΩS02 + S02Ωᵀ with Ω in the normalizer and O in N02."""
    H_rep, S_rep = bs.representative()
    if m.H != H_rep or m.s1 != S_rep:
        raise DegenerateInput("model is not at the bigraded representative; apply the transform first")
    row, params = bs.row, bs.params
    rd = row_data(row)
    basis = rd.normalizer(params)
    imgs = _omega_basis_images(S_rep, basis)
    proj = [_sym_vec(_sym_unit(i, j)) for i, j in rd.projection]
    cols = imgs + proj
    A = [[cols[k][r] for k in range(len(cols))] for r in range(3)]
    sol = solve(A, _sym_vec(m.s2))
    if sol is None:
        raise AssertionError("normalisation is not a direct sum for this row")
    omega = Mat2.zero()
    for x, B in zip(sol[: len(basis)], basis):
        omega = omega + B.scale(x)
    O = Mat2.zero()
    for x, (i, j) in zip(sol[len(basis):], rd.projection):
        O = O + _sym_unit(i, j).scale(x)

    if row == "R6":
        tau = omega[0, 1]
    elif _has_tau(row):
        tau = omega[1, 0]
    else:
        tau = ZERO
    rep = omega_shape(row, tau, params)
    if not _in_g00(omega - rep, row, params):
        raise AssertionError("Ω does not reduce to the row shape modulo g′00")

    unit = ONE
    if canonicalize and not tau.is_zero():
        a = abs_in_field(tau)
        if a is None:
            raise ExtensionRequired("|τ| is not in Q(i,√2,√3)")
        unit = tau.conj() / a
        tau = a
        rep = omega_shape(row, tau, params)
        O = O.scale(unit)
    slots = rd.obstruction_slots
    o1 = O[slots[0]]
    o2 = O[slots[1]] if len(slots) > 1 else ZERO
    return ModifiedSymbolData(row, rep, tau, O, o1, o2, omega, unit)
