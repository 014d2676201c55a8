"""Constant 2×2 matrices over K and small exact linear-algebra helpers."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .field import ONE, ZERO, CoeffK, Scalar, as_coeff

__all__ = ["Mat2", "rref", "rank", "nullspace", "solve", "in_span"]


class Mat2:
    """Immutable 2×2 matrix with CoeffK entries, stored row-major."""

    __slots__ = ("e",)

    def __init__(self, a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> None:
        self.e = (as_coeff(a), as_coeff(b), as_coeff(c), as_coeff(d))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> Mat2:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> Mat2:
        return cls(1, 0, 0, 1)

    @classmethod
    def zero(cls) -> Mat2:
        return cls(0, 0, 0, 0)

    @classmethod
    def diag(cls, a: Scalar, d: Scalar) -> Mat2:
        return cls(a, 0, 0, d)

    @classmethod
    def antidiag(cls) -> Mat2:
        return cls(0, 1, 1, 0)

    @classmethod
    def unit(cls, i: int, j: int) -> Mat2:
        vals = [0, 0, 0, 0]
        vals[2 * i + j] = 1
        return cls(*vals)

    def __getitem__(self, ij: tuple[int, int]) -> CoeffK:
        i, j = ij
        return self.e[2 * i + j]

    def rows(self) -> list[list[CoeffK]]:
        return [[self.e[0], self.e[1]], [self.e[2], self.e[3]]]

    def __add__(self, o: Mat2) -> Mat2:
        return Mat2(*(x + y for x, y in zip(self.e, o.e)))

    def __sub__(self, o: Mat2) -> Mat2:
        return Mat2(*(x - y for x, y in zip(self.e, o.e)))

    def __neg__(self) -> Mat2:
        return Mat2(*(-x for x in self.e))

    def scale(self, c: Scalar) -> Mat2:
        c = as_coeff(c)
        return Mat2(*(c * x for x in self.e))

    def __mul__(self, o: Mat2 | Scalar) -> Mat2:
        if not isinstance(o, Mat2):
            if isinstance(o, (int, Fraction, CoeffK)):
                return self.scale(o)
            return NotImplemented
        a, b, c, d = self.e
        p, q, r, s = o.e
        return Mat2(a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)

    def __rmul__(self, c: Scalar) -> Mat2:
        return self.scale(c)

    def __matmul__(self, o: Mat2) -> Mat2:
        return self * o

    @property
    def T(self) -> Mat2:
        a, b, c, d = self.e
        return Mat2(a, c, b, d)

    def conj(self) -> Mat2:
        return Mat2(*(x.conj() for x in self.e))

    @property
    def H(self) -> Mat2:
        return self.conj().T

    def det(self) -> CoeffK:
        a, b, c, d = self.e
        return a * d - b * c

    def trace(self) -> CoeffK:
        return self.e[0] + self.e[3]

    def inverse(self) -> Mat2:
        a, b, c, d = self.e
        det = self.det()
        if det.is_zero():
            raise ZeroDivisionError("singular 2x2 matrix")
        k = det.inverse()
        return Mat2(d * k, -b * k, -c * k, a * k)

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.e)

    def is_symmetric(self) -> bool:
        return self.e[1] == self.e[2]

    def is_hermitian(self) -> bool:
        return self == self.H

    def rank(self) -> int:
        if self.is_zero():
            return 0
        return 2 if not self.det().is_zero() else 1

    def __eq__(self, o: object) -> bool:
        return isinstance(o, Mat2) and self.e == o.e

    def __hash__(self) -> int:
        return hash(self.e)

    def __repr__(self) -> str:
        a, b, c, d = self.e
        return f"Mat2([[{a}, {b}], [{c}, {d}]])"

    def to_json(self) -> list:
        return [[x.to_strings() for x in row] for row in self.rows()]

    @classmethod
    def from_json(cls, data: list) -> Mat2:
        if len(data) != 2 or any(len(r) != 2 for r in data):
            raise ValueError("expected a 2x2 array")
        return cls.from_rows([[CoeffK.from_strings(x) for x in row] for row in data])


# ---------------------------------------------------------------- elimination


def rref(rows: Iterable[Sequence[CoeffK]]) -> tuple[list[list[CoeffK]], list[int]]:
    """Reduced row echelon form over K. Returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if not m[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Iterable[Sequence[CoeffK]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[CoeffK]], ncols: int | None = None) -> list[list[CoeffK]]:
    """Basis of {x : A x = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence[CoeffK]], rhs: Sequence[CoeffK]) -> list[CoeffK] | None:
    """One solution of A x = b, or None when inconsistent."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def in_span(vectors: Sequence[Sequence[CoeffK]], target: Sequence[CoeffK]) -> list[CoeffK] | None:
    """Coefficients expressing target in the span of vectors, or None."""
    if not vectors:
        return [] if all(t.is_zero() for t in target) else None
    cols = list(zip(*vectors))  # rows of the matrix whose columns are the vectors
    return solve([list(c) for c in cols], list(target))
