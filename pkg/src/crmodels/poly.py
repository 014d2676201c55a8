"""Sparse polynomials over K in (w, z1, z2, ζ) and their formal conjugates.

Exponent vectors have length 8 and follow the variable order

    w, z1, z2, ζ, w̄, z̄1, z̄2, ζ̄

so that the conjugate of variable ``k`` is ``(k + 4) % 8``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .field import ONE, ZERO, CoeffK, Scalar, as_coeff

__all__ = ["Poly", "ZeroDivisor", "VARS", "var", "W", "Z1", "Z2", "ZETA", "WB", "Z1B", "Z2B", "ZETAB"]

VARS = ("w", "z1", "z2", "zeta", "wbar", "z1bar", "z2bar", "zetabar")
_PRETTY = ("w", "z₁", "z₂", "ζ", "w̄", "z̄₁", "z̄₂", "ζ̄")
W, Z1, Z2, ZETA, WB, Z1B, Z2B, ZETAB = range(8)
NVARS = 8

Monomial = tuple[int, ...]
_ONE_MONO: Monomial = (0,) * NVARS


class ZeroDivisor(ZeroDivisionError):
    """Raised when dividing by the zero polynomial."""


def _mono_key(m: Monomial) -> tuple:
    # graded lex with w < z1 < z2 < ζ < w̄ < z̄1 < z̄2 < ζ̄: compare total degree,
    # then the exponent of the largest variable first.
    return (sum(m), m[7], m[6], m[5], m[4], m[3], m[2], m[1], m[0])


def _conj_mono(m: Monomial) -> Monomial:
    return m[4:] + m[:4]


class Poly:
    """Immutable sparse polynomial; zero coefficients are never stored."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None) -> None:
        clean: dict[Monomial, CoeffK] = {}
        if terms:
            for m, c in terms.items():
                c = as_coeff(c)
                if not c.is_zero():
                    if len(m) != NVARS:
                        raise ValueError("monomials need 8 exponents")
                    clean[tuple(m)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict[Monomial, CoeffK]) -> Poly:
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Scalar) -> Poly:
        return cls({_ONE_MONO: c})

    @classmethod
    def monomial(cls, exps: Mapping[int, int] | Monomial, c: Scalar = 1) -> Poly:
        if isinstance(exps, Mapping):
            m = [0] * NVARS
            for k, e in exps.items():
                m[k] = e
            exps = tuple(m)
        return cls({tuple(exps): c})

    # ------------------------------------------------------------------ basics
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, CoeffK]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, m: Monomial) -> CoeffK:
        return self.terms.get(tuple(m), ZERO)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, k: int) -> int:
        return max((m[k] for m in self.terms), default=-1)

    def degree_bounds(self) -> tuple[int, ...]:
        return tuple(self.degree_in(k) for k in range(NVARS))

    def variables(self) -> set[int]:
        return {k for m in self.terms for k in range(NVARS) if m[k]}

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, CoeffK)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -------------------------------------------------------------- arithmetic
    @staticmethod
    def _coerce(x) -> Poly:
        if isinstance(x, Poly):
            return x
        return Poly.const(x)

    def __add__(self, other) -> Poly:
        other = Poly._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[m]
                else:
                    out[m] = s
        return Poly._from_clean(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._from_clean({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        return self + (-Poly._coerce(other))

    def __rsub__(self, other) -> Poly:
        return Poly._coerce(other) - self

    def scale(self, c: Scalar) -> Poly:
        c = as_coeff(c)
        if c.is_zero():
            return Poly()
        return Poly._from_clean({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            return self.scale(other)
        out: dict[Monomial, CoeffK] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = c1 * c2
                s = out.get(m)
                out[m] = v if s is None else s + v
        return Poly._from_clean({m: c for m, c in out.items() if not c.is_zero()})

    def __rmul__(self, other) -> Poly:
        return self.scale(other)

    def __pow__(self, n: int) -> Poly:
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def diff(self, k: int) -> Poly:
        """Partial derivative with respect to variable index k."""
        out = {}
        for m, c in self.terms.items():
            e = m[k]
            if e:
                mm = list(m)
                mm[k] = e - 1
                out[tuple(mm)] = c * e
        return Poly._from_clean(out)

    def conj(self) -> Poly:
        """Swap barred and unbarred variables and conjugate coefficients."""
        return Poly._from_clean({_conj_mono(m): c.conj() for m, c in self.terms.items()})

    def is_real(self) -> bool:
        return self == self.conj()

    def truncate(self, keep) -> Poly:
        """Keep only the monomials for which keep(monomial) is true."""
        return Poly._from_clean({m: c for m, c in self.terms.items() if keep(m)})

    def subs_zero(self, ks: Iterable[int]) -> Poly:
        ks = tuple(ks)
        return self.truncate(lambda m: all(m[k] == 0 for k in ks))

    def evaluate(self, point: Mapping[int, complex]) -> complex:
        total = 0j
        for m, c in self.terms.items():
            v = complex(c)
            for k, e in enumerate(m):
                if e:
                    v *= point[k] ** e
            total += v
        return total

    # ---------------------------------------------------------------- division
    def leading(self) -> tuple[Monomial, CoeffK]:
        m = max(self.terms, key=_mono_key)
        return m, self.terms[m]

    def divmod(self, d: Poly) -> tuple[Poly, Poly]:
        """Multivariate division by a single divisor (graded lex order)."""
        if d.is_zero():
            raise ZeroDivisor("division by the zero polynomial")
        lm, lc = d.leading()
        lc_inv = lc.inverse()
        dterms = list(d.terms.items())
        rem: dict[Monomial, CoeffK] = dict(self.terms)
        quot: dict[Monomial, CoeffK] = {}
        out_rem: dict[Monomial, CoeffK] = {}
        while rem:
            m = max(rem, key=_mono_key)
            c = rem[m]
            if all(a >= b for a, b in zip(m, lm)):
                qm = tuple(a - b for a, b in zip(m, lm))
                qc = c * lc_inv
                quot[qm] = quot.get(qm, ZERO) + qc
                for dm, dc in dterms:
                    tm = tuple(a + b for a, b in zip(qm, dm))
                    v = rem.get(tm, ZERO) - qc * dc
                    if v.is_zero():
                        rem.pop(tm, None)
                    else:
                        rem[tm] = v
            else:
                out_rem[m] = c
                del rem[m]
        return Poly(quot), Poly._from_clean(out_rem)

    def divides(self, f: Poly) -> tuple[bool, Poly | None]:
        """(True, q) if f = q * self exactly, else (False, None)."""
        q, r = f.divmod(self)
        if r.is_zero():
            return True, q
        return False, None

    # ------------------------------------------------------------ formatting
    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_mono_key, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                _PRETTY[k] + (f"^{e}" if e > 1 else "") for k, e in enumerate(m) if e
            )
            if not mono:
                parts.append(f"({c})")
            elif c == ONE:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [[list(m), self.terms[m].to_strings()] for m in sorted(self.terms, key=_mono_key)]

    @classmethod
    def from_json(cls, data: list) -> Poly:
        terms: dict[Monomial, CoeffK] = {}
        for mono, coeff in data:
            m = tuple(int(e) for e in mono)
            if len(m) != NVARS or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {mono!r}")
            terms[m] = terms.get(m, ZERO) + CoeffK.from_strings(coeff)
        return cls(terms)


def var(k: int) -> Poly:
    m = [0] * NVARS
    m[k] = 1
    return Poly({tuple(m): ONE})
