"""Holomorphic vector fields, tangency certificates and symmetry algebras.

A HoloField is X = Σ X_k ∂/∂x_k over x = (w, z1, z2, ζ) with coefficients
that are rational functions in the unbarred variables.  Coefficients share
one denominator kept as a product of "atoms" (polynomials raised to
exponents), which lets brackets cancel common factors without polynomial
gcds.

Tangency of X to the real hypersurface {P = 0} means (X + X̄)P vanishes on
it.  After clearing the denominator D of X this is the polynomial
F = D̄·Y(P) + D·Ȳ(P) with Y = D·X.  Since P is linear in w with coefficient
Q2 = ∂P/∂w, F vanishes on the hypersurface iff P divides Q2^k·F for k the
w-degree of F; the quotient is the certificate.

Symmetry algebras are real Lie algebras, so span membership is decided over
the real subfield: every coefficient splits as re + i·im with re, im real,
and the linear systems are solved on the real and imaginary parts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .field import HALF, I, ONE, SQRT2, SQRT3, ZERO, CoeffK, Scalar
from .linalg import Mat2, rank, solve
from .poly import W, Z1, Z2, ZETA, Poly, var

__all__ = [
    "HoloField",
    "ZeroDefining",
    "TangencyResult",
    "SymmetryAlgebraReport",
    "tangency",
    "bracket",
    "euler_field",
    "in_real_span",
    "algebra_report",
    "symmetry_generators",
    "generator_families",
    "negative_part_generators",
]

HOLO_VARS = (W, Z1, Z2, ZETA)
_NAMES = ("w", "z1", "z2", "zeta")


class ZeroDefining(ValueError):
    """Tangency asked against the zero polynomial."""


def _holomorphic(p: Poly) -> bool:
    return not (p.variables() - set(HOLO_VARS))


def _atoms_poly(atoms: dict[Poly, int]) -> Poly:
    out = Poly.const(1)
    for a, e in atoms.items():
        out = out * a ** e
    return out


class HoloField:
    """Holomorphic vector field with numerators over a common denominator."""

    __slots__ = ("num", "atoms", "_den")

    def __init__(self, num: Sequence[Poly], atoms: dict[Poly, int] | None = None) -> None:
        if len(num) != 4:
            raise ValueError("a field has four components (w, z1, z2, ζ)")
        num = tuple(num)
        atoms = {a: e for a, e in (atoms or {}).items() if e > 0}
        for p in num + tuple(atoms):
            if not _holomorphic(p):
                raise ValueError("field coefficients must not involve barred variables")
        for a in atoms:
            if a.coeff((0,) * 8).is_zero():
                raise ValueError("denominator vanishes at the origin")
        self.num = num
        self.atoms = atoms
        self._den: Poly | None = None
        self._reduce()

    @classmethod
    def from_components(cls, comps: Sequence[Poly | tuple[Poly, Poly]]) -> HoloField:
        """Build from four entries, each a polynomial or a (numerator, denominator) pair."""
        pairs = [(c, Poly.const(1)) if isinstance(c, Poly) else c for c in comps]
        atoms: dict[Poly, int] = {}
        for _, d in pairs:
            if d.degree() > 0:
                atoms[d] = max(atoms.get(d, 0), 1)
        den = _atoms_poly(atoms)
        num = []
        for n, d in pairs:
            if d.degree() == 0:
                num.append(n.scale(d.coeff((0,) * 8).inverse()) * den)
            else:
                ok, q = d.divides(den)
                num.append(n * q)
        return cls(num, atoms)

    def _reduce(self) -> None:
        changed = True
        while changed:
            changed = False
            for a in list(self.atoms):
                quots = []
                for n in self.num:
                    ok, q = a.divides(n)
                    if not ok:
                        break
                    quots.append(q)
                else:
                    self.num = tuple(quots)
                    self.atoms[a] -= 1
                    if self.atoms[a] == 0:
                        del self.atoms[a]
                    changed = True
        self._den = None

    @property
    def den(self) -> Poly:
        if self._den is None:
            self._den = _atoms_poly(self.atoms)
        return self._den

    def is_zero(self) -> bool:
        return all(n.is_zero() for n in self.num)

    def apply(self, f: Poly) -> tuple[Poly, Poly]:
        """X(f) as (numerator, denominator); f may involve barred variables."""
        out = Poly()
        for n, k in zip(self.num, HOLO_VARS):
            if not n.is_zero():
                out = out + n * f.diff(k)
        return out, self.den

    def conj_apply(self, f: Poly) -> tuple[Poly, Poly]:
        """X̄(f), the conjugate field acting on barred variables."""
        out = Poly()
        for n, k in zip(self.num, HOLO_VARS):
            if not n.is_zero():
                out = out + n.conj() * f.diff(k + 4)
        return out, self.den.conj()

    def scale(self, c: Scalar) -> HoloField:
        return HoloField([n.scale(c) for n in self.num], dict(self.atoms))

    def __add__(self, other: HoloField) -> HoloField:
        atoms = dict(self.atoms)
        for a, e in other.atoms.items():
            atoms[a] = max(atoms.get(a, 0), e)
        return HoloField([x + y for x, y in zip(self.lift(atoms), other.lift(atoms))], atoms)

    def __neg__(self) -> HoloField:
        return self.scale(-1)

    def __sub__(self, other: HoloField) -> HoloField:
        return self + (-other)

    def lift(self, atoms: dict[Poly, int]) -> tuple[Poly, ...]:
        """Numerators over the larger denominator given by `atoms`."""
        extra = Poly.const(1)
        for a, e in atoms.items():
            have = self.atoms.get(a, 0)
            if e < have:
                raise ValueError("target denominator does not contain this field's")
            extra = extra * a ** (e - have)
        return tuple(n * extra for n in self.num)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HoloField):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]  # equality is as rational fields

    def __repr__(self) -> str:
        parts = [f"({n})∂{name}" for n, name in zip(self.num, _NAMES) if not n.is_zero()]
        body = " + ".join(parts) or "0"
        return body if not self.atoms else f"[{body}] / ({self.den})"

    def to_json(self) -> dict:
        return {
            "components": {name: n.to_json() for n, name in zip(self.num, _NAMES)},
            "denominator": self.den.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> HoloField:
        comps = data.get("components", {})
        unknown = set(comps) - set(_NAMES)
        if unknown:
            raise ValueError(f"unknown field components {sorted(unknown)}")
        den = Poly.from_json(data["denominator"]) if "denominator" in data else Poly.const(1)
        nums = [Poly.from_json(comps[name]) if name in comps else Poly() for name in _NAMES]
        return cls.from_components([(n, den) for n in nums])


def euler_field() -> HoloField:
    """2w∂w + z1∂z1 + z2∂z2, the grading element for wt(w)=2, wt(z)=1, wt(ζ)=0."""
    return HoloField([var(W).scale(2), var(Z1), var(Z2), Poly()])


# ---------------------------------------------------------------------------
# tangency
# ---------------------------------------------------------------------------


@dataclass
class TangencyResult:
    tangent: bool
    power: int = 0  # k with Q2^k·F = q·P
    quotient: Poly | None = None
    residue: Poly | None = None  # F restricted to the hypersurface (times Q2^k), when nonzero
    witness: tuple | None = None  # leading term of the residue

    def __bool__(self) -> bool:
        return self.tangent

    def to_json(self) -> dict:
        out: dict = {"tangent": self.tangent, "q2Power": self.power}
        if self.witness is not None:
            mono, c = self.witness
            out["witness"] = {"monomial": list(mono), "coefficient": c.to_strings()}
        return out


def _restrict(F: Poly, P: Poly, Q2: Poly) -> tuple[Poly, int]:
    """Q2^d·F with w replaced by its value on {P = 0}; d = deg_w F."""
    rest = P - Q2 * var(W)  # P = Q2·w + rest
    d = max(F.degree_in(W), 0) if not F.is_zero() else 0
    parts: dict[int, Poly] = {}
    for m, c in F:
        k = m[W]
        mm = list(m)
        mm[W] = 0
        parts[k] = parts.get(k, Poly()) + Poly.monomial(tuple(mm), c)
    out = Poly()
    for k, Fk in parts.items():
        out = out + Fk * (-rest) ** k * Q2 ** (d - k)
    return out, d


def tangency(X: HoloField, P: Poly, Q2: Poly | None = None) -> TangencyResult:
    """Exact test that Re(X) is tangent to {P = 0}."""
    if P.is_zero():
        raise ZeroDefining("the defining polynomial is zero")
    if Q2 is None:
        Q2 = P.diff(W)
    if P.degree_in(W) != 1 or Q2 != P.diff(W) or Q2.degree_in(W) != 0:
        raise ValueError("expected P linear in w with ∂P/∂w = Q2 free of w")
    yp, d = X.apply(P)
    ybp, db = X.conj_apply(P)
    F = db * yp + d * ybp
    residue, power = _restrict(F, P, Q2)
    if residue.is_zero():
        for k in range(power + 1):
            ok, q = P.divides(F * Q2 ** k)
            if ok:
                return TangencyResult(True, k, q)
        raise AssertionError("restriction vanished but division failed")  # pragma: no cover
    return TangencyResult(False, power, None, residue, residue.leading())


# ---------------------------------------------------------------------------
# brackets
# ---------------------------------------------------------------------------


def bracket(X: HoloField, Y: HoloField) -> HoloField:
    """[X, Y] with [X, Y]_k = X(Y_k) − Y(X_k)."""
    D, E = X.den, Y.den
    xe, _ = X.apply(E)
    yd, _ = Y.apply(D)
    num = []
    for a_k, b_k in zip(X.num, Y.num):
        xb, _ = X.apply(b_k)
        ya, _ = Y.apply(a_k)
        num.append(D * (xb * E - b_k * xe) - E * (ya * D - a_k * yd))
    atoms = dict(X.atoms)
    for a, e in atoms.items():
        atoms[a] = 2 * e
    for a, e in Y.atoms.items():
        atoms[a] = atoms.get(a, 0) + 2 * e
    return HoloField(num, atoms)


# ---------------------------------------------------------------------------
# real span membership
# ---------------------------------------------------------------------------


def _common_atoms(fields: Iterable[HoloField]) -> dict[Poly, int]:
    atoms: dict[Poly, int] = {}
    for f in fields:
        for a, e in f.atoms.items():
            atoms[a] = max(atoms.get(a, 0), e)
    return atoms


def _real_vectors(fields: Sequence[HoloField]) -> list[list[CoeffK]]:
    atoms = _common_atoms(fields)
    lifted = [f.lift(atoms) for f in fields]
    keys = sorted({(k, m) for nums in lifted for k, n in enumerate(nums) for m, _ in n})
    out = []
    for nums in lifted:
        v = []
        for k, m in keys:
            c = nums[k].coeff(m)
            v.append(c.real())
            v.append(c.imag())
        out.append(v)
    return out


def in_real_span(basis: Sequence[HoloField], target: HoloField) -> list[CoeffK] | None:
    """Real coefficients expressing target in the span of basis, or None."""
    vecs = _real_vectors(list(basis) + [target])
    if not basis:
        return [] if target.is_zero() else None
    cols = vecs[:-1]
    A = [list(r) for r in zip(*cols)]
    return solve(A, vecs[-1])


def real_rank(fields: Sequence[HoloField]) -> int:
    if not fields:
        return 0
    return rank(_real_vectors(fields))


# ---------------------------------------------------------------------------
# algebra report
# ---------------------------------------------------------------------------


@dataclass
class SymmetryAlgebraReport:
    dimension: int
    graded_dims: dict[int, int]
    closed: bool
    tangent: bool
    failures: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "gradedDims": {str(k): v for k, v in sorted(self.graded_dims.items())},
            "closed": self.closed,
            "tangent": self.tangent,
            "failures": self.failures,
        }


def _grading(basis: list[HoloField], failures: list[dict]) -> dict[int, int]:
    """Eigenvalue multiplicities of ad(E) on the span; E need not be in it."""
    E = euler_field()
    n = len(basis)
    M: list[list[CoeffK]] = []  # column j = coordinates of [E, X_j]
    for j, X in enumerate(basis):
        coords = in_real_span(basis, bracket(E, X))
        if coords is None:
            failures.append({"kind": "grading", "generator": j})
            return {}
        M.append(coords)
    A = [[M[j][i] for j in range(n)] for i in range(n)]
    dims: dict[int, int] = {}
    for lam in range(-4, 5):
        shifted = [[A[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        mult = n - rank(shifted)
        if mult:
            dims[lam] = mult
    if sum(dims.values()) != n:
        failures.append({"kind": "grading", "reason": "not diagonalisable with integer weights in [-4, 4]"})
    return dims


def algebra_report(gens: Sequence[HoloField], P: Poly, Q2: Poly | None = None) -> SymmetryAlgebraReport:
    """Tangency of every generator, bracket closure of their real span, dimension and grading."""
    failures: list[dict] = []
    tangent = True
    for j, X in enumerate(gens):
        t = tangency(X, P, Q2)
        if not t:
            tangent = False
            failures.append({"kind": "tangency", "generator": j, **t.to_json()})
    # extract a real basis
    basis: list[HoloField] = []
    for X in gens:
        if in_real_span(basis, X) is None:
            basis.append(X)
    closed = True
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if in_real_span(basis, bracket(basis[a], basis[b])) is None:
                closed = False
                failures.append({"kind": "closure", "pair": [a, b]})
    graded = _grading(basis, failures) if basis else {}
    return SymmetryAlgebraReport(len(basis), graded, closed, tangent, failures)


# ---------------------------------------------------------------------------
# generator families for types I, II, III
# ---------------------------------------------------------------------------

w, z1, z2, zeta = var(W), var(Z1), var(Z2), var(ZETA)
_ONE = Poly.const(1)


def _c(x: Scalar) -> Poly:
    return Poly.const(x)


def _type1(b: CoeffK, a1: CoeffK, a2: CoeffK, c: CoeffK, d: CoeffK) -> HoloField:
    den = zeta.scale(2) + _ONE
    f1 = (zeta + _ONE) * zeta * _c(1 + I)
    f2 = (zeta ** 2).scale(SQRT2 * I)
    f3 = (zeta + _ONE) * zeta * _c(I - 1)
    e_p = (ONE + I) / SQRT2  # e^{iπ/4}
    e_m = e_p.conj()
    ab1, ab2, db = a1.conj(), a2.conj(), d.conj()
    q = zeta ** 2 + zeta + _c(HALF)
    r = zeta ** 2 + zeta
    # everything over the denominator 2ζ+1
    fw = (w.scale(2 * c) + (z1 ** 2).scale(-(1 + I) * db) + (z2 ** 2).scale((1 - I) * db)
          + (z2.scale(2 * ab1) + z1.scale(2 * ab2))) * den + _c(2 * b * I) * den
    fz1 = (z1.scale(c) + z2.scale(d * e_m) + _c(a1)) * den \
        + (q * z2).scale(-2 * db * e_p) + (r * z1).scale(2 * db * I) \
        - f2.scale(ab1) - f1.scale(ab2)
    fz2 = (z2.scale(c) + z1.scale(d * e_p) + _c(a2)) * den \
        - (q * z1).scale(2 * db * e_m) - (r * z2).scale(2 * db * I) \
        - f3.scale(ab1) - f2.scale(ab2)
    fzeta = den.scale(d) * den
    return HoloField([fw, fz1, fz2, fzeta], {den: 1})


def _type2(b: CoeffK, a1: CoeffK, a2: CoeffK, c: CoeffK, d: CoeffK) -> HoloField:
    ab1, ab2, db = a1.conj(), a2.conj(), d.conj()
    fw = _c(2 * b * I) + z1.scale(2 * ab2) + z2.scale(2 * ab1) + w.scale(2 * c) \
        + (z2 ** 2 + (z1 * z2).scale(2)).scale(2 * db)
    fz1 = _c(a1) - zeta.scale(ab1) - zeta.scale(ab2) - (zeta ** 2).scale(ab2) \
        + z1.scale(c) + (z2 + z1.scale(2)).scale(d) - z2.scale(db) \
        - (zeta * (z2.scale(2) + z1 + z2 * zeta)).scale(2 * db)
    fz2 = _c(a2) - zeta.scale(ab2) + z2.scale(c) - (z2 * (_ONE + zeta)).scale(2 * db)
    fzeta = (_c(d) - zeta.scale(db)) * (_ONE + zeta).scale(2)
    return HoloField([fw, fz1, fz2, fzeta])


def _type3(b: CoeffK, a1: CoeffK, a2: CoeffK, c1: CoeffK, c2: CoeffK) -> HoloField:
    ab1, ab2, cb1 = a1.conj(), a2.conj(), c1.conj()
    re2, im2 = c2.real(), c2.imag()
    fw = _c(2 * b * I) + z1.scale(2 * ab1) - z2.scale(2 * ab2) + w.scale(2 * re2) + (z1 ** 2).scale(2 * cb1)
    fz1 = _c(a1) - zeta.scale(2 * ab1) + (zeta ** 2).scale(SQRT3 * ab2) \
        + z1.scale(c2) + z2.scale(SQRT3 * cb1) - (z1 * zeta).scale(4 * cb1)
    fz2 = _c(a2) - (zeta ** 2).scale(SQRT3 * ab1) + (zeta ** 3).scale(2 * ab2) \
        + z1.scale(SQRT3 * c1) + z2.scale(c2) + z2.scale(2 * I * im2) - (z1 * zeta ** 2).scale(2 * SQRT3 * cb1)
    fzeta = _c(c1) - (zeta ** 2).scale(cb1) + zeta.scale(2 * I * im2)
    return HoloField([fw, fz1, fz2, fzeta])


_FAMILIES = {
    # parameter names, which are real, and the builder
    "I": (("b", "a1", "a2", "c", "d"), {"b", "c"}, _type1),
    "II": (("b", "a1", "a2", "c", "d"), {"b", "c"}, _type2),
    "III": (("b", "a1", "a2", "c1", "c2"), {"b"}, _type3),
}


def generator_families() -> tuple[str, ...]:
    return tuple(_FAMILIES)


def symmetry_generators(label: str) -> list[HoloField]:
    """One field per real parameter direction: real parameters at 1, complex ones at 1 and i."""
    if label not in _FAMILIES:
        raise KeyError(f"generator families exist for {', '.join(_FAMILIES)}, not {label!r}")
    names, real, build = _FAMILIES[label]
    out = []
    for name in names:
        for val in ((ONE,) if name in real else (ONE, I)):
            args = {n: ZERO for n in names}
            args[name] = val
            out.append(build(*(args[n] for n in names)))
    return out


def negative_part_generators(H: Mat2, f_num: Sequence[Poly], f_den: Poly) -> list[HoloField]:
    """The degree −2 and −1 fields of a model with S(ζ) = [[f1, f2], [f2, f3]]/δ(ζ).

    i∂w, and for a ∈ C² the field 2(zᵀHā)∂w + (a − S(ζ)Hā)·∂z, instantiated at
    a = e1, i·e1, e2, i·e2.  Together with the Euler field they give a lower
    bound of 6 on the symmetry dimension of every catalog entry.
    """
    f1, f2, f3 = f_num
    out = [HoloField([Poly.const(I), Poly(), Poly(), Poly()])]
    atoms = {f_den: 1} if f_den.degree() > 0 else {}
    dscale = f_den if atoms else Poly.const(1)
    zs = (z1, z2)
    for k in range(2):
        for val in (ONE, I):
            a = [ZERO, ZERO]
            a[k] = val
            hab = [H[0, 0] * a[0].conj() + H[0, 1] * a[1].conj(), H[1, 0] * a[0].conj() + H[1, 1] * a[1].conj()]
            fw = (zs[0].scale(hab[0]) + zs[1].scale(hab[1])).scale(2) * dscale
            fz1 = _c(a[0]) * dscale - f1.scale(hab[0]) - f2.scale(hab[1])
            fz2 = _c(a[1]) * dscale - f2.scale(hab[0]) - f3.scale(hab[1])
            out.append(HoloField([fw, fz1, fz2, Poly()], dict(atoms)))
    return out
