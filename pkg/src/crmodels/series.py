"""Truncated power series over K and 2×2 matrices of them.

``UniSeries`` is a series in ζ truncated after ζ^N; ``BiSeries`` is a series
in (ζ, ζ̄) truncated to total degree ≤ N.  Every series carries its order and
binary operations truncate to the smaller of the two orders.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Sequence, Union

from .field import ZERO, CoeffK, Scalar, as_coeff
from .linalg import Mat2

__all__ = [
    "DEFAULT_ORDER",
    "UniSeries",
    "BiSeries",
    "SeriesMat",
    "CompositionAtNonzero",
    "NotInvertible",
    "SingularConstantTerm",
    "series_compose",
    "series_reverse",
    "series_mat_inverse",
    "semidirect_exp",
    "exp_series",
    "log1p_series",
    "sin_series",
    "cos_series",
    "geometric_series",
]

DEFAULT_ORDER = 10


class CompositionAtNonzero(ValueError):
    """The inner series of a composition has a nonzero constant term."""


class NotInvertible(ValueError):
    """A series has no compositional (or multiplicative) inverse."""


class SingularConstantTerm(ZeroDivisionError):
    """The constant term of a series matrix is a singular matrix."""


# ======================================================================
# univariate
# ======================================================================


class UniSeries:
    """c_0 + c_1 ζ + ... + c_N ζ^N  (mod ζ^{N+1})."""

    __slots__ = ("c", "order")

    def __init__(self, coeffs: Iterable[Scalar] = (), order: int = DEFAULT_ORDER) -> None:
        cs = [as_coeff(x) for x in coeffs][: order + 1]
        cs += [ZERO] * (order + 1 - len(cs))
        self.c: tuple[CoeffK, ...] = tuple(cs)
        self.order = order

    @classmethod
    def zeta(cls, order: int = DEFAULT_ORDER) -> UniSeries:
        return cls([0, 1], order)

    @classmethod
    def const(cls, a: Scalar, order: int = DEFAULT_ORDER) -> UniSeries:
        return cls([a], order)

    @classmethod
    def from_function(cls, fn: Callable[[int], Scalar], order: int = DEFAULT_ORDER) -> UniSeries:
        return cls([fn(k) for k in range(order + 1)], order)

    def __getitem__(self, k: int) -> CoeffK:
        return self.c[k] if 0 <= k <= self.order else ZERO

    def truncate(self, order: int) -> UniSeries:
        return UniSeries(self.c[: order + 1], min(order, self.order))

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.c)

    def valuation(self) -> int | None:
        for k, x in enumerate(self.c):
            if not x.is_zero():
                return k
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.c[: n + 1] == other.c[: n + 1]

    def __hash__(self) -> int:
        return hash(self.c)

    def __add__(self, other: UniSeries | Scalar) -> UniSeries:
        if not isinstance(other, UniSeries):
            other = UniSeries.const(other, self.order)
        n = min(self.order, other.order)
        return UniSeries([a + b for a, b in zip(self.c[: n + 1], other.c[: n + 1])], n)

    __radd__ = __add__

    def __neg__(self) -> UniSeries:
        return UniSeries([-a for a in self.c], self.order)

    def __sub__(self, other: UniSeries | Scalar) -> UniSeries:
        if not isinstance(other, UniSeries):
            other = UniSeries.const(other, self.order)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> UniSeries:
        return UniSeries.const(other, self.order) - self

    def scale(self, k: Scalar) -> UniSeries:
        k = as_coeff(k)
        return UniSeries([k * a for a in self.c], self.order)

    def __mul__(self, other: UniSeries | Scalar) -> UniSeries:
        if not isinstance(other, UniSeries):
            return self.scale(other)
        n = min(self.order, other.order)
        a, b = self.c, other.c
        out = [ZERO] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if ai.is_zero():
                continue
            for j in range(n + 1 - i):
                bj = b[j]
                if not bj.is_zero():
                    out[i + j] = out[i + j] + ai * bj
        return UniSeries(out, n)

    def __rmul__(self, k: Scalar) -> UniSeries:
        return self.scale(k)

    def __pow__(self, n: int) -> UniSeries:
        result = UniSeries.const(1, self.order)
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> UniSeries:
        """Multiplicative inverse; requires c_0 ≠ 0."""
        if self.c[0].is_zero():
            raise NotInvertible("series with zero constant term has no reciprocal")
        inv0 = self.c[0].inverse()
        out = [inv0]
        for k in range(1, self.order + 1):
            s = ZERO
            for j in range(1, k + 1):
                s = s + self.c[j] * out[k - j]
            out.append(-s * inv0)
        return UniSeries(out, self.order)

    def derivative(self) -> UniSeries:
        return UniSeries([self.c[k] * k for k in range(1, self.order + 1)], max(self.order - 1, 0))

    def conj(self) -> UniSeries:
        """Conjugate coefficients (the series ζ ↦ σ(f)(ζ))."""
        return UniSeries([a.conj() for a in self.c], self.order)

    def to_bi(self, in_conjugate: bool = False) -> BiSeries:
        if in_conjugate:
            return BiSeries({(0, k): a for k, a in enumerate(self.c)}, self.order)
        return BiSeries({(k, 0): a for k, a in enumerate(self.c)}, self.order)

    def __repr__(self) -> str:
        terms = [f"({a})*ζ^{k}" for k, a in enumerate(self.c) if not a.is_zero()]
        return f"UniSeries({' + '.join(terms) or '0'}; O(ζ^{self.order + 1}))"

    def to_json(self) -> dict:
        return {str(k): a.to_strings() for k, a in enumerate(self.c) if not a.is_zero()}


def series_compose(f: UniSeries, g: UniSeries) -> UniSeries:
    """f(g(ζ)) truncated to min(order f, order g); needs g(0) = 0."""
    if not g.c[0].is_zero():
        raise CompositionAtNonzero("composition requires g(0) = 0")
    n = min(f.order, g.order)
    g = g.truncate(n)
    result = UniSeries.const(f[n], n)
    for k in range(n - 1, -1, -1):
        result = result * g + f[k]
    return result


def series_reverse(f: UniSeries) -> UniSeries:
    """Compositional inverse g with f(g(ζ)) = ζ; needs f(0) = 0, f'(0) ≠ 0."""
    if not f.c[0].is_zero():
        raise CompositionAtNonzero("reversion requires f(0) = 0")
    if f.order < 1 or f.c[1].is_zero():
        raise NotInvertible("reversion requires f'(0) ≠ 0")
    n = f.order
    inv1 = f.c[1].inverse()
    g = [ZERO, inv1] + [ZERO] * (n - 1)
    # fix coefficients one degree at a time: the ζ^k coefficient of f(g) is
    # f_1 g_k + (terms involving only g_1..g_{k-1})
    for k in range(2, n + 1):
        comp = series_compose(f, UniSeries(g, k))
        g[k] = -comp.c[k] * inv1
    return UniSeries(g, n)


def exp_series(a: Scalar, order: int = DEFAULT_ORDER) -> UniSeries:
    """exp(aζ)."""
    a = as_coeff(a)
    return UniSeries.from_function(lambda k: a**k * Fraction(1, factorial(k)), order)


def log1p_series(order: int = DEFAULT_ORDER) -> UniSeries:
    """ln(1 + ζ)."""
    return UniSeries.from_function(lambda k: Fraction((-1) ** (k + 1), k) if k else 0, order)


def sin_series(order: int = DEFAULT_ORDER) -> UniSeries:
    return UniSeries.from_function(
        lambda k: Fraction((-1) ** ((k - 1) // 2), factorial(k)) if k % 2 else 0, order
    )


def cos_series(order: int = DEFAULT_ORDER) -> UniSeries:
    return UniSeries.from_function(
        lambda k: 0 if k % 2 else Fraction((-1) ** (k // 2), factorial(k)), order
    )


def geometric_series(a: Scalar = 1, order: int = DEFAULT_ORDER) -> UniSeries:
    """1 / (1 - aζ)."""
    a = as_coeff(a)
    return UniSeries.from_function(lambda k: a**k, order)


# ======================================================================
# bivariate
# ======================================================================


class BiSeries:
    """Σ c_{j,k} ζ^j ζ̄^k over j + k ≤ N, stored sparsely."""

    __slots__ = ("c", "order")

    def __init__(self, coeffs: dict[tuple[int, int], Scalar] | None = None, order: int = DEFAULT_ORDER) -> None:
        clean = {}
        if coeffs:
            for (j, k), v in coeffs.items():
                if j + k <= order:
                    v = as_coeff(v)
                    if not v.is_zero():
                        clean[(j, k)] = v
        self.c: dict[tuple[int, int], CoeffK] = clean
        self.order = order

    @classmethod
    def _from_clean(cls, c: dict, order: int) -> BiSeries:
        obj = cls.__new__(cls)
        obj.c = c
        obj.order = order
        return obj

    @classmethod
    def const(cls, a: Scalar, order: int = DEFAULT_ORDER) -> BiSeries:
        return cls({(0, 0): a}, order)

    def __getitem__(self, jk: tuple[int, int]) -> CoeffK:
        return self.c.get(jk, ZERO)

    def truncate(self, order: int) -> BiSeries:
        order = min(order, self.order)
        return BiSeries._from_clean({jk: v for jk, v in self.c.items() if sum(jk) <= order}, order)

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.truncate(n).c == other.truncate(n).c

    def __hash__(self) -> int:
        return hash(frozenset(self.c.items()))

    def __add__(self, other: BiSeries | Scalar) -> BiSeries:
        if not isinstance(other, BiSeries):
            other = BiSeries.const(other, self.order)
        n = min(self.order, other.order)
        out = {jk: v for jk, v in self.c.items() if sum(jk) <= n}
        for jk, v in other.c.items():
            if sum(jk) > n:
                continue
            s = out.get(jk)
            if s is None:
                out[jk] = v
            else:
                s = s + v
                if s.is_zero():
                    del out[jk]
                else:
                    out[jk] = s
        return BiSeries._from_clean(out, n)

    __radd__ = __add__

    def __neg__(self) -> BiSeries:
        return BiSeries._from_clean({jk: -v for jk, v in self.c.items()}, self.order)

    def __sub__(self, other: BiSeries | Scalar) -> BiSeries:
        if not isinstance(other, BiSeries):
            other = BiSeries.const(other, self.order)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> BiSeries:
        return BiSeries.const(other, self.order) - self

    def scale(self, k: Scalar) -> BiSeries:
        k = as_coeff(k)
        if k.is_zero():
            return BiSeries({}, self.order)
        return BiSeries._from_clean({jk: k * v for jk, v in self.c.items()}, self.order)

    def __mul__(self, other: BiSeries | Scalar) -> BiSeries:
        if not isinstance(other, BiSeries):
            return self.scale(other)
        n = min(self.order, other.order)
        out: dict[tuple[int, int], CoeffK] = {}
        b_items = [(jk, v, jk[0] + jk[1]) for jk, v in other.c.items()]
        for (j1, k1), v1 in self.c.items():
            d1 = j1 + k1
            if d1 > n:
                continue
            for (j2, k2), v2, d2 in b_items:
                if d1 + d2 > n:
                    continue
                key = (j1 + j2, k1 + k2)
                p = v1 * v2
                s = out.get(key)
                out[key] = p if s is None else s + p
        return BiSeries._from_clean({jk: v for jk, v in out.items() if not v.is_zero()}, n)

    def __rmul__(self, k: Scalar) -> BiSeries:
        return self.scale(k)

    def d_zeta(self) -> BiSeries:
        return BiSeries._from_clean(
            {(j - 1, k): v * j for (j, k), v in self.c.items() if j}, max(self.order - 1, 0)
        )

    def d_zetabar(self) -> BiSeries:
        return BiSeries._from_clean(
            {(j, k - 1): v * k for (j, k), v in self.c.items() if k}, max(self.order - 1, 0)
        )

    def conj(self) -> BiSeries:
        """The series conj(F(ζ, ζ̄)): swap exponents and conjugate coefficients."""
        return BiSeries._from_clean({(k, j): v.conj() for (j, k), v in self.c.items()}, self.order)

    def inverse(self) -> BiSeries:
        c0 = self[(0, 0)]
        if c0.is_zero():
            raise NotInvertible("series with zero constant term has no reciprocal")
        inv0 = c0.inverse()
        x = BiSeries.const(1, self.order) - self.scale(inv0)
        total = BiSeries.const(1, self.order)
        power = BiSeries.const(1, self.order)
        for _ in range(self.order):
            power = power * x
            if power.is_zero():
                break
            total = total + power
        return total.scale(inv0)

    def at_origin(self) -> CoeffK:
        return self[(0, 0)]

    def __repr__(self) -> str:
        terms = [f"({v})*ζ^{j}ζ̄^{k}" for (j, k), v in sorted(self.c.items())]
        return f"BiSeries({' + '.join(terms) or '0'}; deg ≤ {self.order})"

    def to_json(self) -> dict:
        return {f"{j},{k}": v.to_strings() for (j, k), v in sorted(self.c.items())}


Series = Union[UniSeries, BiSeries]


def _const_like(proto: Series, a: Scalar) -> Series:
    if isinstance(proto, UniSeries):
        return UniSeries.const(a, proto.order)
    return BiSeries.const(a, proto.order)


def _promote(x: Series) -> BiSeries:
    return x.to_bi() if isinstance(x, UniSeries) else x


# ======================================================================
# 2×2 matrices of series
# ======================================================================

SYMMETRIC = "symmetric"
HERMITIAN = "hermitian"


class SeriesMat:
    """2×2 matrix of UniSeries or BiSeries entries with a symmetry flag."""

    __slots__ = ("e", "symmetry")

    def __init__(self, entries: Sequence[Series], symmetry: str | None = None) -> None:
        e = list(entries)
        if len(e) != 4:
            raise ValueError("SeriesMat needs four entries (row-major)")
        if any(isinstance(x, BiSeries) for x in e):
            e = [_promote(x) for x in e]
        self.e: tuple[Series, ...] = tuple(e)
        if symmetry == SYMMETRIC and not self.e[1] == self.e[2]:
            raise ValueError("matrix flagged symmetric is not symmetric")
        if symmetry == HERMITIAN:
            if isinstance(self.e[0], UniSeries):
                raise ValueError("a univariate matrix cannot be Hermitian")
            if not self._hermitian_check():
                raise ValueError("matrix flagged Hermitian is not Hermitian")
        self.symmetry = symmetry

    def _hermitian_check(self) -> bool:
        a, b, c, d = self.e
        return a == a.conj() and d == d.conj() and b == c.conj()

    # ------------------------------------------------------------ constructors
    @classmethod
    def from_const(cls, m: Mat2, order: int = DEFAULT_ORDER, bivariate: bool = False) -> SeriesMat:
        mk = BiSeries.const if bivariate else UniSeries.const
        return cls([mk(x, order) for x in m.e])

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER, bivariate: bool = False) -> SeriesMat:
        return cls.from_const(Mat2.identity(), order, bivariate)

    @classmethod
    def from_coeff_matrices(cls, mats: dict[int, Mat2], order: int = DEFAULT_ORDER) -> SeriesMat:
        """Σ_k mats[k] ζ^k as a univariate matrix."""
        entries = []
        for idx in range(4):
            entries.append(UniSeries([mats[k].e[idx] if k in mats else ZERO for k in range(order + 1)], order))
        return cls(entries)

    # ------------------------------------------------------------- properties
    @property
    def order(self) -> int:
        return min(x.order for x in self.e)

    @property
    def bivariate(self) -> bool:
        return isinstance(self.e[0], BiSeries)

    def __getitem__(self, ij: tuple[int, int]) -> Series:
        i, j = ij
        return self.e[2 * i + j]

    def coeff(self, *deg: int) -> Mat2:
        """Coefficient matrix of ζ^j (univariate) or ζ^j ζ̄^k (bivariate)."""
        if self.bivariate:
            key = tuple(deg) if len(deg) == 2 else (deg[0], 0)
            return Mat2(*(x[key] for x in self.e))
        return Mat2(*(x[deg[0]] for x in self.e))

    def at_origin(self) -> Mat2:
        return self.coeff(0, 0) if self.bivariate else self.coeff(0)

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.e)

    def is_symmetric(self) -> bool:
        return self.e[1] == self.e[2]

    def is_hermitian(self) -> bool:
        return self.bivariate and self._hermitian_check()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SeriesMat):
            return NotImplemented
        if self.bivariate != other.bivariate:
            return [_promote(x) for x in self.e] == [_promote(x) for x in other.e]
        return all(a == b for a, b in zip(self.e, other.e))

    def __hash__(self) -> int:
        return hash(self.e)

    # ------------------------------------------------------------- arithmetic
    def _combine(self, other: SeriesMat, op) -> SeriesMat:
        a, b = self.e, other.e
        if self.bivariate != other.bivariate:
            a = [_promote(x) for x in a]
            b = [_promote(x) for x in b]
        return SeriesMat([op(x, y) for x, y in zip(a, b)])

    def __add__(self, other: SeriesMat) -> SeriesMat:
        return self._combine(other, lambda x, y: x + y)

    def __sub__(self, other: SeriesMat) -> SeriesMat:
        return self._combine(other, lambda x, y: x - y)

    def __neg__(self) -> SeriesMat:
        return SeriesMat([-x for x in self.e])

    def scale(self, k: Scalar) -> SeriesMat:
        return SeriesMat([x.scale(k) for x in self.e], self.symmetry)

    def __mul__(self, other: SeriesMat | Mat2 | Scalar) -> SeriesMat:
        if isinstance(other, Mat2):
            return self.rmul_const(other)
        if not isinstance(other, SeriesMat):
            return self.scale(other)
        a, b = self.e, other.e
        if self.bivariate != other.bivariate:
            a = [_promote(x) for x in a]
            b = [_promote(x) for x in b]
        return SeriesMat(
            [
                a[0] * b[0] + a[1] * b[2],
                a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2],
                a[2] * b[1] + a[3] * b[3],
            ]
        )

    def __rmul__(self, other: Mat2 | Scalar) -> SeriesMat:
        if isinstance(other, Mat2):
            return self.lmul_const(other)
        return self.scale(other)

    def lmul_const(self, m: Mat2) -> SeriesMat:
        """m · self for a constant matrix m."""
        p, q, r, s = m.e
        a = self.e
        return SeriesMat(
            [
                a[0].scale(p) + a[2].scale(q),
                a[1].scale(p) + a[3].scale(q),
                a[0].scale(r) + a[2].scale(s),
                a[1].scale(r) + a[3].scale(s),
            ]
        )

    def rmul_const(self, m: Mat2) -> SeriesMat:
        """self · m for a constant matrix m."""
        p, q, r, s = m.e
        a = self.e
        return SeriesMat(
            [
                a[0].scale(p) + a[1].scale(r),
                a[0].scale(q) + a[1].scale(s),
                a[2].scale(p) + a[3].scale(r),
                a[2].scale(q) + a[3].scale(s),
            ]
        )

    @property
    def T(self) -> SeriesMat:
        a, b, c, d = self.e
        return SeriesMat([a, c, b, d], self.symmetry if self.symmetry == SYMMETRIC else None)

    def conj(self) -> SeriesMat:
        """Entrywise conjugate; a univariate matrix in ζ becomes bivariate in ζ̄."""
        if self.bivariate:
            return SeriesMat([x.conj() for x in self.e])
        return SeriesMat([x.conj().to_bi(in_conjugate=True) for x in self.e])

    def to_bi(self) -> SeriesMat:
        return SeriesMat([_promote(x) for x in self.e], self.symmetry)

    def d_zeta(self) -> SeriesMat:
        if self.bivariate:
            return SeriesMat([x.d_zeta() for x in self.e])
        return SeriesMat([x.derivative() for x in self.e])

    def d_zetabar(self) -> SeriesMat:
        if not self.bivariate:
            return SeriesMat([UniSeries([], max(x.order - 1, 0)) for x in self.e])
        return SeriesMat([x.d_zetabar() for x in self.e])

    def truncate(self, order: int) -> SeriesMat:
        return SeriesMat([x.truncate(order) for x in self.e], self.symmetry)

    def with_symmetry(self, flag: str | None) -> SeriesMat:
        return SeriesMat(self.e, flag)

    def inverse(self) -> SeriesMat:
        return series_mat_inverse(self)

    def __repr__(self) -> str:
        return f"SeriesMat({list(self.e)!r}, symmetry={self.symmetry})"

    def to_json(self) -> list:
        return [[self.e[0].to_json(), self.e[1].to_json()], [self.e[2].to_json(), self.e[3].to_json()]]


def series_mat_inverse(m: SeriesMat) -> SeriesMat:
    """Inverse modulo truncation: invert the constant term, Neumann-expand the rest."""
    c0 = m.at_origin()
    if c0.det().is_zero():
        raise SingularConstantTerm("constant term of the series matrix is singular")
    c0_inv = c0.inverse()
    order = m.order
    ident = SeriesMat.identity(order, m.bivariate)
    x = ident - m.lmul_const(c0_inv)  # M = C0 (Id - X) with X(0) = 0
    total = ident
    power = ident
    for _ in range(order):
        power = power * x
        if power.is_zero():
            break
        total = total + power
    return total.rmul_const(c0_inv)


def semidirect_exp(s02: Mat2, omega: Mat2, order: int = DEFAULT_ORDER) -> SeriesMat:
    """S(ζ) = Σ_{k≥0} ζ^{k+1} L^k(S02)/(k+1)!  with  L(S) = ΩS + SΩᵀ.

    This is the holomorphic matrix produced by the group product
    ln(exp((S02 ζ, Ω ζ)) exp((0, -Ω ζ))) in the semidirect product of the
    symmetric matrices with gl(2).
    """
    if not s02.is_symmetric():
        raise ValueError("S02 must be symmetric")
    mats: dict[int, Mat2] = {}
    term = s02
    for k in range(order):
        if term.is_zero():
            break
        mats[k + 1] = term.scale(Fraction(1, factorial(k + 1)))
        term = omega * term + term * omega.T
    return SeriesMat.from_coeff_matrices(mats, order).with_symmetry(SYMMETRIC)
