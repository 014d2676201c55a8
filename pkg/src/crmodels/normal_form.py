"""Partial and complete normal forms of models under the isotropy group.

After the bigraded symbol is moved to its representative (H, S02), the
remaining freedom is the group of pairs (u, U), u ∈ {1, i}, with

    (u/ū) Uᵀ H Ū = H      and      U⁻¹ S02 U⁻ᵀ ∈ C·S02,

taken modulo ±Id.  It acts on S(ζ) by S ↦ U⁻¹ S(g(ζ)) U⁻ᵀ, where the
reparametrisation g is forced by keeping the first nonzero entry of S02
(in the order (1,1), (1,2), (2,2)) equal to ζ exactly.

The identity component is a small torus (plus a real shear for R7) acting
on each Taylor coefficient by a monomial character, so a normal form is
reached in two stages:

* continuous: walk the coefficients in a fixed order and make each one
  whose character is independent of the ones already used real positive
  (or equal to 1 where modulus and phase are both available);
* discrete: enumerate every group element that achieves the continuous
  normalisation, keep those whose result obeys the row's sign/order
  constraints, and pick the lexicographically smallest coefficient list
  under the (Re, Im) order.

All group elements are taken with entries in K.  When part of the finite
residual group is not defined over K the record says so, and equivalence
verdicts derived from it become "inconclusive".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .field import I, ONE, ZERO, CoeffK, abs_in_field, kth_roots_in_field, real_kth_root
from .linalg import Mat2, rank as k_rank
from .model import Model
from .series import SeriesMat, UniSeries, series_compose, series_reverse
from .symbols import (
    ANTIDIAG,
    BigradedSymbol,
    DegenerateInput,
    ExtensionRequired,
    apply_bigraded_transform,
    classify_bigraded,
    extract_modified_symbol,
)

__all__ = [
    "TruncationInconclusive",
    "GroupElement",
    "first_entry",
    "partial_normal_form",
    "partial_normal_form_with_symbol",
    "group_action",
    "residual_components",
    "NormalFormRecord",
    "reduce_to_normal_form",
    "Verdict",
    "equivalent",
    "residual_symmetry_dimension",
    "linearized_isotropy_dimension",
    "isotropy_algebra",
    "satisfies_row_constraints",
    "lex_key",
]

_SYM_POS = ((0, 0), (0, 1), (1, 1))


class TruncationInconclusive(Exception):
    """A normalisation step needs Taylor coefficients beyond the truncation order."""


# ---------------------------------------------------------------------------
# group elements and the action
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupElement:
    u: CoeffK = ONE
    U: Mat2 = field(default_factory=Mat2.identity)

    def acts_on_H(self, H: Mat2) -> Mat2:
        u = self.u
        return (self.U.T * H * self.U.conj()).scale(u / u.conj())

    def preserves(self, H: Mat2, S02: Mat2) -> bool:
        """Membership in CU(H) ∩ G00 for the pair (H, S02)."""
        if self.acts_on_H(H) != H:
            return False
        Ui = self.U.inverse()
        img = Ui * S02 * Ui.T
        pos = first_entry(S02)
        k = img[pos] / S02[pos]
        return img == S02.scale(k)

    @classmethod
    def for_matrix(cls, H: Mat2, U: Mat2) -> GroupElement:
        """Attach the u ∈ {1, i} that makes U preserve H."""
        img = U.T * H * U.conj()
        if img == H:
            return cls(ONE, U)
        if img == -H:
            return cls(I, U)
        raise ValueError("U does not preserve H up to sign")

    def to_json(self) -> dict:
        return {"u": self.u.to_strings(), "U": self.U.to_json()}


def first_entry(S02: Mat2) -> tuple[int, int]:
    for pos in _SYM_POS:
        if not S02[pos].is_zero():
            return pos
    raise DegenerateInput("S02 vanishes")


def _reparametrize(m: Model, g: UniSeries) -> Model:
    S = SeriesMat([series_compose(x, g) for x in m.S.e])
    return Model(m.H, S, m.order)


def partial_normal_form_with_symbol(m: Model) -> tuple[Model, BigradedSymbol]:
    """Move the symbol to its representative and make its leading entry exactly ζ."""
    bs = classify_bigraded(m.H, m.s1)
    t = apply_bigraded_transform(m, bs.u, bs.U, bs.c)
    pos = first_entry(t.s1)
    phi = t.S[pos]
    # t.s1 equals the representative whose leading entry is 1, so φ'(0) = 1
    return _reparametrize(t, series_reverse(phi)), bs


def partial_normal_form(m: Model) -> Model:
    return partial_normal_form_with_symbol(m)[0]


def group_action(m: Model, g: GroupElement) -> Model:
    """(H, S(ζ)) ↦ (H, U⁻¹ S(g(ζ)) U⁻ᵀ) for g in the isotropy of (H, S02).

    The reparametrisation is chosen so that the leading entry of S is left
    unchanged; for a partial normal form that entry stays exactly ζ.
    """
    if not g.preserves(m.H, m.s1):
        raise ValueError("group element does not preserve (H, S02)")
    Ui = g.U.inverse()
    coeffs = {k: Ui * m.S.coeff(k) * Ui.T for k in range(1, m.order + 1)}
    t = Model.from_coefficients(m.H, coeffs, m.order)
    pos = first_entry(m.s1)
    reparam = series_compose(series_reverse(t.S[pos]), m.S[pos])
    return _reparametrize(t, reparam)


# ---------------------------------------------------------------------------
# per-row data for the residual group
# ---------------------------------------------------------------------------

# positions of the general-term entries (c1, c2) of each row
_GENERAL = {
    "R1": ((1, 1), (0, 1)),
    "R2": ((1, 1), (0, 1)),
    "R4": ((1, 1), (0, 1)),
    "R6": ((1, 1), (0, 1)),
    "R7": ((1, 1), (0, 1)),
    "R3": ((0, 0), (1, 1)),
    "R5": ((0, 0), (1, 1)),
}

# the ζ² coefficient is read as (τ, o1) for rows with τ and as (o1, o2) otherwise
_SECOND = {
    "R1": (("tau", (0, 1)), ("o1", (1, 1))),
    "R2": (("tau", (0, 1)), ("o1", (1, 1))),
    "R4": (("tau", (0, 1)), ("o1", (1, 1))),
    "R6": (("tau", (0, 1)), ("o1", (1, 1))),
    "R3": (("o1", (0, 0)), ("o2", (1, 1))),
    "R5": (("o1", (0, 0)), ("o2", (1, 1))),
    "R7": (("o1", (1, 1)), ("o2", (0, 1))),
}

_TORUS_DIM = {"R1": 1, "R2": 1, "R6": 1, "R3": 2, "R4": 2}
_CONTINUOUS_DIM = {"R1": 1, "R2": 1, "R3": 2, "R4": 2, "R5": 2, "R6": 1, "R7": 3}


def residual_components(row: str, H: Mat2) -> list[GroupElement]:
    """Representatives of the components of the residual group."""
    mats = [Mat2.identity()]
    if row in ("R1", "R2", "R7"):
        mats.append(Mat2.diag(1, -1))
    elif row == "R3":
        mats.append(ANTIDIAG)
    elif row == "R5":
        mats += [Mat2.diag(1, -1), ANTIDIAG, Mat2(0, 1, -1, 0)]
    return [GroupElement.for_matrix(H, U) for U in mats]


def _tau_weight(row: str, bs_rep: BigradedSymbol, H: Mat2, S02: Mat2) -> CoeffK:
    """τ as a multiple of the (1,2) entry of the ζ² coefficient."""
    probe = Model.from_coefficients(H, {1: S02, 2: Mat2(0, 1, 1, 0)}, 2)
    return extract_modified_symbol(probe, bs_rep, canonicalize=False).tau


@dataclass(frozen=True)
class _Quantity:
    label: str
    k: int
    pos: tuple[int, int]
    weight: CoeffK = ONE


def _quantities(row: str, order: int, tau_weight: CoeffK | None) -> list[_Quantity]:
    out = []
    if order >= 2:
        for label, pos in _SECOND[row]:
            w = tau_weight if label == "tau" and tau_weight is not None else ONE
            out.append(_Quantity(label, 2, pos, w))
    for k in range(3, order + 1):
        for idx, pos in enumerate(_GENERAL[row]):
            out.append(_Quantity(f"c{idx + 1},{k}", k, pos))
    return out


def _character(row: str, k: int, pos: tuple[int, int]) -> tuple[int, ...]:
    """Exponents of the torus character on the ζ^k coefficient at pos."""
    i, j = pos
    if _TORUS_DIM[row] == 1:
        return (2 * k - 2,)
    n1 = (i == 0) + (j == 0)
    n2 = (i == 1) + (j == 1)
    if row == "R4":  # leading entry (1,1): x1^{2k} / (x_i x_j)
        return (2 * k - n1, -n2)
    return (k - n1, k - n2)  # R3, leading entry (1,2): (x1 x2)^k / (x_i x_j)


def _torus_matrix(row: str, x: tuple[CoeffK, ...]) -> Mat2:
    if len(x) == 1:
        return Mat2.diag(x[0], x[0])
    return Mat2.diag(x[0], x[1])


# ---------------------------------------------------------------------------
# monomial systems on the unitary torus
# ---------------------------------------------------------------------------


def _int_rank(vecs: list[tuple[int, ...]]) -> int:
    if not vecs:
        return 0
    if len(vecs[0]) == 1:
        return 1 if any(v[0] for v in vecs) else 0
    if len(vecs) == 1:
        return 1 if any(vecs[0]) else 0
    a, b = vecs[0], vecs[1]
    return 2 if a[0] * b[1] - a[1] * b[0] else 1


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, s, t = _ext_gcd(b, a % b)
    return g, t, s - (a // b) * t


def _roots(v: CoeffK, k: int) -> tuple[list[CoeffK], bool]:
    if k < 0:
        v, k = v.inverse(), -k
    roots = kth_roots_in_field(v, k)
    return roots, len(roots) == k


def _solve_torus(sel: list[tuple[tuple[int, ...], CoeffK]], n: int) -> tuple[list[tuple[CoeffK, ...]], bool]:
    """All K-points x of the torus with x^a = v for the selected (a, v).

    Coordinates that the system leaves free are set to 1.  The flag reports
    whether every solution over C (up to the free directions) lies in K.
    """
    if not sel:
        return [(ONE,) * n], True
    if n == 1:
        (a,), v = sel[0]
        roots, ok = _roots(v, a)
        return [(r,) for r in roots], ok
    if len(sel) == 1:
        (a1, a2), v = sel[0]
        g, s, t = _ext_gcd(a1, a2)
        roots, ok = _roots(v, g)
        return [(y ** s, y ** t) for y in roots], ok
    (a11, a12), v1 = sel[0]
    (a21, a22), v2 = sel[1]
    det = a11 * a22 - a12 * a21
    w1 = v1 ** a22 * v2 ** (-a12)
    w2 = v1 ** (-a21) * v2 ** a11
    r1, _ = _roots(w1, det)
    r2, _ = _roots(w2, det)
    sols = []
    for x1 in r1:
        for x2 in r2:
            if x1 ** a11 * x2 ** a12 == v1 and x1 ** a21 * x2 ** a22 == v2:
                sols.append((x1, x2))
    return sols, len(sols) == abs(det)


# ---------------------------------------------------------------------------
# constraints, ordering and records
# ---------------------------------------------------------------------------


def lex_key(m: Model) -> tuple:
    return tuple(m.S.coeff(k)[pos].order_key() for k in range(2, m.order + 1) for pos in _SYM_POS)


def _leading_pair(row: str, m: Model) -> tuple[int, CoeffK, CoeffK] | None:
    """(μ, value at the first slot, value at the second slot) at the first nonzero degree."""
    for k in range(2, m.order + 1):
        slots = [p for _, p in _SECOND[row]] if k == 2 else list(_GENERAL[row])
        a, b = (m.S.coeff(k)[p] for p in slots)
        if not (a.is_zero() and b.is_zero()):
            return k, a, b
    return None


def _positive(x: CoeffK) -> bool:
    return x.is_real() and x.sign() > 0


def _modulus_sq(x: CoeffK) -> CoeffK:
    return x * x.conj()


def satisfies_row_constraints(row: str, m: Model, tau_weight: CoeffK | None = None) -> bool:
    """The sign/order conditions that single out the normal form within its row."""
    lead = _leading_pair(row, m)
    if lead is None:
        return True
    k, a, b = lead
    if row in ("R1", "R2", "R6"):
        if k == 2:
            if tau_weight is None:
                tau_weight = _tau_weight(row, _rep_symbol(classify_bigraded(m.H, m.s1)), m.H, m.s1)
            a = a * tau_weight  # the first slot at degree two is τ
        return _positive(a) if not a.is_zero() else _positive(b)
    if row == "R4":
        return all(_positive(x) for x in (a, b) if not x.is_zero())
    if row == "R3":
        if a.is_zero():
            return _positive(b)
        if not (_positive(a) and _positive(b)) or b < a:
            return False
        if a == b:
            for kk in range(k + 1, m.order + 1):
                c1, c2 = (m.S.coeff(kk)[p] for p in _GENERAL[row])
                d = _modulus_sq(c2) - _modulus_sq(c1)
                if not d.is_zero():
                    return d.sign() > 0
        return True
    if row == "R5":
        return a == ONE if not a.is_zero() else b == ONE
    if row == "R7":
        if not a.is_zero():
            return a == ONE and b.is_real() and b.sign() >= 0
        return b == ONE
    raise ValueError(row)


@dataclass(frozen=True)
class NormalFormRecord:
    row: str
    params: dict
    model: Model  # the normalised model
    order: int
    tau: CoeffK
    o1: CoeffK
    o2: CoeffK
    residual_dim: int
    complete_over_K: bool = True
    to_order_only: bool = False  # True when no coefficient beyond degree one is nonzero
    notes: tuple[str, ...] = ()

    @property
    def coefficients(self) -> dict[int, Mat2]:
        return {k: self.model.S.coeff(k) for k in range(1, self.order + 1)}

    def general_terms(self) -> list[tuple[int, CoeffK, CoeffK]]:
        """(k, c1k, c2k) in the row's general-term positions for k ≥ 3."""
        p1, p2 = _GENERAL[self.row]
        return [(k, self.model.S.coeff(k)[p1], self.model.S.coeff(k)[p2]) for k in range(3, self.order + 1)]

    def key(self) -> tuple:
        return (self.row, tuple(sorted((k, str(v)) for k, v in self.params.items())), lex_key(self.model))

    def to_json(self) -> dict:
        params = {k: (v.to_strings() if isinstance(v, CoeffK) else v) for k, v in self.params.items()}
        return {
            "row": self.row,
            "params": params,
            "order": self.order,
            "H": self.model.H.to_json(),
            "coefficients": {str(k): self.model.S.coeff(k).to_json() for k in range(1, self.order + 1)},
            "tau": self.tau.to_strings(),
            "o1": self.o1.to_strings(),
            "o2": self.o2.to_strings(),
            "residualSymmetryDim": self.residual_dim,
            "completeOverK": self.complete_over_K,
            "toOrderOnly": self.to_order_only,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# the reduction
# ---------------------------------------------------------------------------


def _rep_symbol(bs: BigradedSymbol) -> BigradedSymbol:
    return BigradedSymbol(bs.row, bs.eps, bs.lam, bs.unit)


def _need_abs(x: CoeffK) -> CoeffK:
    a = abs_in_field(x)
    if a is None:
        raise ExtensionRequired(f"|{x}| is not in Q(i,√2,√3)")
    return a


def _reduce_unitary(m: Model, row: str, tau_w: CoeffK | None) -> tuple[list[Model], int, bool]:
    n = _TORUS_DIM[row]
    quantities = _quantities(row, m.order, tau_w)
    cands: list[Model] = []
    complete = True
    dim = n
    for comp in residual_components(row, m.H):
        mc = group_action(m, comp)
        sel: list[tuple[tuple[int, ...], CoeffK]] = []
        for q in quantities:
            val = mc.S.coeff(q.k)[q.pos] * q.weight
            if val.is_zero():
                continue
            a = _character(row, q.k, q.pos)
            if _int_rank([s[0] for s in sel] + [a]) > len(sel):
                sel.append((a, _need_abs(val) / val))
                if len(sel) == n:
                    break
        dim = n - len(sel)
        sols, ok = _solve_torus(sel, n)
        complete = complete and ok
        for x in sols:
            cands.append(group_action(mc, GroupElement(ONE, _torus_matrix(row, x))))
    return cands, dim, complete


def _first_nonzero(m: Model, row: str) -> tuple[int, tuple[int, int], CoeffK] | None:
    for q in _quantities(row, m.order, None):
        v = m.S.coeff(q.k)[q.pos]
        if not v.is_zero():
            return q.k, q.pos, v
    return None


def _reduce_r5(m: Model) -> tuple[list[Model], int, bool]:
    cands: list[Model] = []
    complete = True
    dim = 2
    for comp in residual_components("R5", m.H):
        mc = group_action(m, comp)
        lead = _first_nonzero(mc, "R5")
        if lead is None:
            cands.append(mc)
            continue
        dim = 0
        k, pos, q = lead
        aq = _need_abs(q)
        r = real_kth_root(aq if pos == (0, 0) else aq.inverse(), 2)
        if r is None:
            raise ExtensionRequired("the required real scaling is not in Q(i,√2,√3)")
        omegas, ok = _roots(aq / q, k - 1)
        complete = complete and ok
        for om in omegas:
            e = kth_roots_in_field(om, 2)
            if not e:
                complete = False
                continue
            x1 = r * e[0]
            cands.append(group_action(mc, GroupElement(ONE, Mat2.diag(x1, x1.conj().inverse()))))
    return cands, dim, complete


def _r7_torus(x: CoeffK, rho: CoeffK) -> Mat2:
    return Mat2.diag(x / rho, x * rho)


def _r7_shear(t: CoeffK) -> Mat2:
    return Mat2(1, I * t, 0, 1)


def _probe_shear(m: Model) -> tuple[int, tuple[int, int], CoeffK, CoeffK] | None:
    """First coefficient moved by the shear, as an affine function A + tB of t."""
    m1 = group_action(m, GroupElement(ONE, _r7_shear(ONE)))
    for k in range(2, m.order + 1):
        for pos in ((1, 1), (0, 1)):
            a0, a1 = m.S.coeff(k)[pos], m1.S.coeff(k)[pos]
            if a0 != a1:
                m2 = group_action(m, GroupElement(ONE, _r7_shear(CoeffK.from_int(2))))
                B = a1 - a0
                if m2.S.coeff(k)[pos] != a0 + B * 2:
                    raise AssertionError("shear dependence of the first moved coefficient is not affine")
                return k, pos, a0, B
    return None


def _reduce_r7(m: Model) -> tuple[list[Model], int, bool, bool]:
    cands: list[Model] = []
    complete = True
    dim = 3
    shear_free = False
    for comp in residual_components("R7", m.H):
        mc = group_action(m, comp)
        lead = _leading_pair("R7", mc)
        if lead is None:
            cands.append(mc)
            continue
        k, c1, c2 = lead
        if not c1.is_zero():
            dim = 0
            a = _need_abs(c1)
            rho = real_kth_root(a, 2 * k + 2)
            if rho is None:
                raise ExtensionRequired("the required real scaling is not in Q(i,√2,√3)")
            xs, ok = _roots(a / c1, 2 * k - 2)
            complete = complete and ok
            for x in xs:
                mx = group_action(mc, GroupElement(ONE, _r7_torus(x, rho)))
                pos2 = _SECOND["R7"][1][1] if k == 2 else _GENERAL["R7"][1]
                # the shear moves the (1,2) slot by -i t · (the (2,2) slot) = -i t
                t = mx.S.coeff(k)[pos2].imag()
                my = group_action(mx, GroupElement(ONE, _r7_shear(t)))
                if not my.S.coeff(k)[pos2].is_real():
                    raise AssertionError("shear normalisation failed")
                cands.append(my)
        else:
            a = _need_abs(c2)
            rho = real_kth_root(a, 2 * k)
            if rho is None:
                raise ExtensionRequired("the required real scaling is not in Q(i,√2,√3)")
            xs, ok = _roots(a / c2, 2 * k - 2)
            complete = complete and ok
            dim = 1
            for x in xs:
                mx = group_action(mc, GroupElement(ONE, _r7_torus(x, rho)))
                probe = _probe_shear(mx)
                if probe is None:
                    shear_free = True
                    cands.append(mx)
                    continue
                dim = 0
                kk, pos, A, B = probe
                ref = _reference(mx, kk, pos)
                # choose t with (A + tB)/ref real
                ib = (B / ref).imag()
                if ib.is_zero():
                    raise AssertionError("shear acts trivially on the probed coefficient")
                t = -(A / ref).imag() / ib
                cands.append(group_action(mx, GroupElement(ONE, _r7_shear(t))))
    return cands, dim, complete, shear_free


def _reference(m: Model, k: int, pos: tuple[int, int]) -> CoeffK:
    """The lowest nonzero coefficient in the same entry, below degree k."""
    for j in range(2, k):
        v = m.S.coeff(j)[pos]
        if not v.is_zero():
            return v
    return ONE


def reduce_to_normal_form(m: Model, strict: bool = False) -> NormalFormRecord:
    """Normal form of a model together with its invariants and residual symmetry.

    When every coefficient beyond degree one vanishes to the truncation order,
    the residual symmetry depends on terms that were not supplied.  By default
    the record is flagged ``to_order_only`` and carries the dimension of the
    untruncated pure model; with ``strict=True`` TruncationInconclusive is
    raised instead.
    """
    pm, bs = partial_normal_form_with_symbol(m)
    row = bs.row
    rep = _rep_symbol(bs)
    tau_w = _tau_weight(row, rep, pm.H, pm.s1) if row in ("R1", "R2", "R4", "R6") else None
    notes: list[str] = []
    shear_free = False
    if row in _TORUS_DIM:
        cands, dim, complete = _reduce_unitary(pm, row, tau_w)
    elif row == "R5":
        cands, dim, complete = _reduce_r5(pm)
    else:
        cands, dim, complete, shear_free = _reduce_r7(pm)
    good = [c for c in cands if satisfies_row_constraints(row, c, tau_w)]
    if not good:
        notes.append("no candidate satisfies the row constraints; lexicographic choice only")
        good = cands
    best = min(good, key=lex_key)
    if not complete:
        notes.append("part of the finite residual group is not defined over Q(i,√2,√3)")
    lead = _leading_pair(row, best)
    to_order_only = lead is None
    if to_order_only and strict:
        raise TruncationInconclusive(
            f"all coefficients beyond degree one vanish to order {m.order}; "
            "the residual symmetry depends on higher terms"
        )
    if to_order_only:
        notes.append(f"all coefficients beyond degree one vanish to order {m.order}")
    if shear_free:
        notes.append(f"the shear acts trivially to order {m.order}")
    msd = extract_modified_symbol(best, rep, canonicalize=False) if best.order >= 2 else None
    tau = msd.tau if msd else ZERO
    o1 = msd.o1 if msd else ZERO
    o2 = msd.o2 if msd else ZERO
    return NormalFormRecord(
        row, bs.params, best, best.order, tau, o1, o2, dim, complete, to_order_only, tuple(notes)
    )


# ---------------------------------------------------------------------------
# equivalence and residual symmetry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    status: str  # "equivalent-at-order-N", "distinct" or "inconclusive"
    order: int
    witness: dict | None = None
    reason: str = ""

    def to_json(self) -> dict:
        out = {"verdict": self.status, "order": self.order}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason:
            out["reason"] = self.reason
        return out


def equivalent(a: Model, b: Model) -> Verdict:
    n = min(a.order, b.order)
    try:
        ra = reduce_to_normal_form(a.with_order(n))
        rb = reduce_to_normal_form(b.with_order(n))
    except (ExtensionRequired, TruncationInconclusive) as exc:
        return Verdict("inconclusive", n, reason=str(exc))
    if (ra.row, ra.params) != (rb.row, rb.params):
        return Verdict(
            "distinct",
            n,
            {"invariant": "bigraded symbol", "a": {"row": ra.row}, "b": {"row": rb.row},
             "a_params": _params_json(ra.params), "b_params": _params_json(rb.params)},
        )
    for k in range(1, n + 1):
        ca, cb = ra.model.S.coeff(k), rb.model.S.coeff(k)
        if ca != cb:
            if not (ra.complete_over_K and rb.complete_over_K):
                return Verdict("inconclusive", n, reason="finite residual group not fully defined over K")
            return Verdict(
                "distinct", n, {"invariant": f"normal-form coefficient of ζ^{k}", "a": ca.to_json(), "b": cb.to_json()}
            )
    return Verdict(f"equivalent-at-order-{n}", n)


def _params_json(p: dict) -> dict:
    return {k: (v.to_strings() if isinstance(v, CoeffK) else v) for k, v in p.items()}


_GENERATORS = {
    "R1": "e^{iθ}·Id acting on ζ^μ by e^{i(2μ-2)θ}",
    "R2": "e^{iθ}·Id acting on ζ^μ by e^{i(2μ-2)θ}",
    "R6": "e^{iθ}·Id acting on ζ^μ by e^{i(2μ-2)θ}",
    "R3": "diag(e^{iθ1}, e^{iθ2})",
    "R4": "diag(e^{iθ1}, e^{iθ2})",
    "R5": "diag(e^{θ1+iθ2}, e^{-θ1+iθ2})",
    "R7": "[[e^{iθ1-θ2}, iθ3 e^{iθ1+θ2}], [0, e^{iθ1+θ2}]]",
}


def residual_symmetry_dimension(rec: NormalFormRecord) -> int:
    return rec.residual_dim


def residual_generators(rec: NormalFormRecord) -> str:
    """A description of the continuous residual symmetry of a normal form."""
    if rec.residual_dim == 0:
        return "finite"
    if rec.residual_dim == _CONTINUOUS_DIM[rec.row]:
        return _GENERATORS[rec.row]
    alg = isotropy_algebra(rec.model)
    return "span of " + "; ".join(str(B) for B in alg)


# --- brute-force linearised isotropy --------------------------------------


def _re_im_rows(vals: list[CoeffK]) -> list[list[CoeffK]]:
    return [[v.real() for v in vals], [v.imag() for v in vals]]


def _real_basis() -> list[Mat2]:
    """Real basis of gl2(C): E_ij and i·E_ij."""
    out = []
    for idx in range(4):
        e = [0, 0, 0, 0]
        e[idx] = 1
        out.append(Mat2(*e))
        out.append(Mat2(*e).scale(I))
    return out


def _linear_conditions(m: Model) -> list[list[CoeffK]]:
    """Real-linear conditions on (B, κ) for B in the isotropy algebra of (H, S02, S)."""
    H, S02 = m.H, m.s1
    basis = _real_basis()
    pos = first_entry(S02)
    # unknown vector: 8 real coordinates of B, then Re κ, Im κ
    cols: list[list[CoeffK]] = []
    for B in basis:
        col: list[CoeffK] = []
        # u(H):  Bᵀ H + H B̄ = 0
        col += list((B.T * H + H * B.conj()).e)
        # g00:  B S02 + S02 Bᵀ - κ S02 = 0
        col += [(B * S02 + S02 * B.T)[p] for p in _SYM_POS]
        # isotropy of S: -(B S + S Bᵀ) + δg S' = 0 with δg = (B S + S Bᵀ)_pos
        bs = [B * m.S.coeff(k) + m.S.coeff(k) * B.T for k in range(m.order + 1)]
        dg = [bs[k][pos] for k in range(m.order + 1)]
        for k in range(1, m.order + 1):
            tot = bs[k].scale(-1)
            for j in range(1, k + 1):
                l = k - j + 1  # ζ^{j} · l A_l ζ^{l-1}
                if 1 <= l <= m.order:
                    tot = tot + m.S.coeff(l).scale(dg[j] * l)
            col += [tot[p] for p in _SYM_POS]
        cols.append(col)
    for kap in (ONE, I):
        col = [ZERO] * 4 + [-(S02.scale(kap))[p] for p in _SYM_POS] + [ZERO] * (3 * m.order)
        cols.append(col)
    rows = []
    for r in range(len(cols[0])):
        rows += _re_im_rows([c[r] for c in cols])
    return rows


def isotropy_algebra(m: Model) -> list[Mat2]:
    """Real basis of the infinitesimal symmetries of a partial normal form."""
    from .linalg import nullspace

    rows = [r for r in _linear_conditions(m) if any(not x.is_zero() for x in r)]
    ker = nullspace(rows, 10) if rows else [[ONE if i == j else ZERO for i in range(10)] for j in range(10)]
    basis = _real_basis()
    out = []
    for v in ker:
        B = Mat2.zero()
        for x, b in zip(v[:8], basis):
            B = B + b.scale(x)
        out.append(B)
    return out


def linearized_isotropy_dimension(m: Model) -> int:
    """Dimension of the real Lie algebra of residual symmetries, by brute force."""
    rows = [r for r in _linear_conditions(m) if any(not x.is_zero() for x in r)]
    return 10 - (k_rank(rows) if rows else 0)
