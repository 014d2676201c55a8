"""Exact arithmetic in the number field K = Q(i, √2, √3).

An element is stored as eight integer numerators over one positive common
denominator, with respect to the basis

    1, i, √2, i√2, √3, i√3, √6, i√6.

The basis index doubles as a bit mask (bit 0 = i, bit 1 = √2, bit 2 = √3), so
the product of two basis elements is the basis element at ``j ^ k`` times a
small integer: -1 when both contain i, 2 when both contain √2, 3 when both
contain √3.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import gcd
from typing import Iterable, Union

__all__ = [
    "CoeffK",
    "DivisionByZero",
    "ZERO",
    "ONE",
    "I",
    "SQRT2",
    "SQRT3",
    "SQRT6",
    "HALF",
    "as_coeff",
    "sqrt_in_field",
    "abs_in_field",
    "unit_part",
    "norm_root",
    "ROOTS_OF_UNITY",
    "kth_roots_in_field",
    "real_kth_root",
]

BASIS_NAMES = ("1", "i", "√2", "i√2", "√3", "i√3", "√6", "i√6")

_IMAG_MASK = (1, 3, 5, 7)
_SQRT2_MASK = (2, 3, 6, 7)
_SQRT3_MASK = (4, 5, 6, 7)


def _basis_scalar(j: int, k: int) -> int:
    s = 1
    common = j & k
    if common & 1:
        s = -s
    if common & 2:
        s *= 2
    if common & 4:
        s *= 3
    return s


# _MUL[j][k] = (index, integer factor) of basis_j * basis_k
_MUL = tuple(tuple((j ^ k, _basis_scalar(j, k)) for k in range(8)) for j in range(8))


class DivisionByZero(ZeroDivisionError):
    """Raised when inverting the zero element of K."""


Scalar = Union["CoeffK", int, Fraction]


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = [-n for n in nums]
        den = -den
    g = gcd(den, *nums)
    if g != 1 and g != 0:
        nums = [n // g for n in nums]
        den //= g
    if not any(nums):
        den = 1
    return tuple(nums), den


@total_ordering
class CoeffK:
    """An exact element of Q(i, √2, √3)."""

    __slots__ = ("_nums", "_den", "_hash")

    def __init__(self, coords: Iterable[Scalar] = (0,) * 8) -> None:
        fr = [Fraction(c) for c in coords]
        if len(fr) != 8:
            raise ValueError("CoeffK needs exactly eight coordinates")
        den = 1
        for f in fr:
            den = den * f.denominator // gcd(den, f.denominator)
        nums = [f.numerator * (den // f.denominator) for f in fr]
        self._nums, self._den = _normalize(nums, den)
        self._hash = None

    @classmethod
    def _raw(cls, nums: tuple[int, ...] | list[int], den: int) -> CoeffK:
        obj = cls.__new__(cls)
        obj._nums, obj._den = _normalize(list(nums), den)
        obj._hash = None
        return obj

    @classmethod
    def from_int(cls, n: int) -> CoeffK:
        return cls._raw((n, 0, 0, 0, 0, 0, 0, 0), 1)

    @classmethod
    def from_fraction(cls, q: Fraction | int) -> CoeffK:
        q = Fraction(q)
        return cls._raw((q.numerator, 0, 0, 0, 0, 0, 0, 0), q.denominator)

    @classmethod
    def gaussian(cls, re: Fraction | int, im: Fraction | int = 0) -> CoeffK:
        return cls((re, im, 0, 0, 0, 0, 0, 0))

    # ------------------------------------------------------------------ access
    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self._den) for n in self._nums)

    def is_zero(self) -> bool:
        return not any(self._nums)

    def __bool__(self) -> bool:
        return any(self._nums)

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    def is_real(self) -> bool:
        return not any(self._nums[j] for j in _IMAG_MASK)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._nums[0], self._den)

    # -------------------------------------------------------------- arithmetic
    @staticmethod
    def coerce(x: Scalar) -> CoeffK:
        if isinstance(x, CoeffK):
            return x
        if isinstance(x, int):
            return CoeffK.from_int(x)
        if isinstance(x, Fraction):
            return CoeffK.from_fraction(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CoeffK")

    def __add__(self, other: Scalar) -> CoeffK:
        if not isinstance(other, CoeffK):
            try:
                other = CoeffK.coerce(other)
            except TypeError:
                return NotImplemented
        d1, d2 = self._den, other._den
        if d1 == d2:
            return CoeffK._raw([a + b for a, b in zip(self._nums, other._nums)], d1)
        return CoeffK._raw([a * d2 + b * d1 for a, b in zip(self._nums, other._nums)], d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> CoeffK:
        obj = CoeffK.__new__(CoeffK)
        obj._nums = tuple(-n for n in self._nums)
        obj._den = self._den
        obj._hash = None
        return obj

    def __pos__(self) -> CoeffK:
        return self

    def __sub__(self, other: Scalar) -> CoeffK:
        if not isinstance(other, CoeffK):
            try:
                other = CoeffK.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> CoeffK:
        return CoeffK.coerce(other) - self

    def __mul__(self, other: Scalar) -> CoeffK:
        if isinstance(other, int):
            return CoeffK._raw([n * other for n in self._nums], self._den)
        if isinstance(other, Fraction):
            return CoeffK._raw([n * other.numerator for n in self._nums], self._den * other.denominator)
        if not isinstance(other, CoeffK):
            return NotImplemented
        a, b = self._nums, other._nums
        out = [0] * 8
        for j in range(8):
            aj = a[j]
            if not aj:
                continue
            row = _MUL[j]
            for k in range(8):
                bk = b[k]
                if bk:
                    idx, s = row[k]
                    out[idx] += s * aj * bk
        return CoeffK._raw(out, self._den * other._den)

    __rmul__ = __mul__

    def _flip(self, mask: tuple[int, ...]) -> CoeffK:
        nums = list(self._nums)
        for j in mask:
            nums[j] = -nums[j]
        return CoeffK._raw(nums, self._den)

    def conj(self) -> CoeffK:
        """Complex conjugation σ: i ↦ -i, radicals fixed."""
        return self._flip(_IMAG_MASK)

    def real(self) -> CoeffK:
        return CoeffK._raw([n if j not in _IMAG_MASK else 0 for j, n in enumerate(self._nums)], self._den)

    def imag(self) -> CoeffK:
        """Imaginary part as a real element, so that a = real + i*imag."""
        return (self - self.real()) * CoeffK._raw((0, -1, 0, 0, 0, 0, 0, 0), 1)

    def inverse(self) -> CoeffK:
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(i,√2,√3)")
        # a⁻¹ = σ(a)·τ₃(r)·τ₂(s) / n with r = a·σ(a), s = r·τ₃(r), n = s·τ₂(s)
        ca = self.conj()
        r = self * ca
        r3 = r._flip(_SQRT3_MASK)
        s = r * r3
        s2 = s._flip(_SQRT2_MASK)
        n = s * s2
        return ca * r3 * s2 * n.to_fraction() ** -1

    def __truediv__(self, other: Scalar) -> CoeffK:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * (Fraction(1) / Fraction(other))
        if not isinstance(other, CoeffK):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> CoeffK:
        return CoeffK.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> CoeffK:
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ------------------------------------------------------------ comparisons
    def __eq__(self, other: object) -> bool:
        if isinstance(other, CoeffK):
            return self._den == other._den and self._nums == other._nums
        if isinstance(other, (int, Fraction)):
            return self == CoeffK.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nums, self._den))
        return self._hash

    def sign(self) -> int:
        """Exact sign of a real element."""
        if not self.is_real():
            raise ValueError(f"sign of non-real element {self}")
        n = self._nums
        # x + y√3 with x = n0 + n2√2, y = n4 + n6√2
        return _sign_sqrt3((n[0], n[2]), (n[4], n[6]))

    def __lt__(self, other: Scalar) -> bool:
        return (self - CoeffK.coerce(other)).sign() < 0

    def order_key(self) -> tuple:
        """Key realising the lexicographic (Re, Im) total order, exactly."""
        return (_RealKey(self.real()), _RealKey(self.imag()))

    # --------------------------------------------------------------- numerics
    def __complex__(self) -> complex:
        return complex(self.to_mpc())

    def to_mpc(self):
        """Numerical value as an mpmath complex at the current working precision."""
        import mpmath

        s2, s3 = mpmath.sqrt(2), mpmath.sqrt(3)
        vals = (1, 1j, s2, 1j * s2, s3, 1j * s3, s2 * s3, 1j * s2 * s3)
        total = mpmath.mpc(0)
        for n, v in zip(self._nums, vals):
            if n:
                total += n * v
        return total / self._den

    # ---------------------------------------------------------- serialization
    def to_strings(self) -> list[str]:
        out = []
        for q in self.coords:
            out.append(f"{q.numerator}/{q.denominator}")
        return out

    @classmethod
    def from_strings(cls, items: Iterable[str]) -> CoeffK:
        items = list(items)
        if len(items) != 8:
            raise ValueError("a CoeffK needs an 8-entry coordinate array")
        return cls(Fraction(str(s)) for s in items)

    def __repr__(self) -> str:
        return f"CoeffK({self})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for q, name in zip(self.coords, BASIS_NAMES):
            if not q:
                continue
            if name == "1":
                parts.append(str(q))
            elif q == 1:
                parts.append(name)
            elif q == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{q}*{name}")
        return " + ".join(parts).replace("+ -", "- ")


def _sign_q_sqrt2(a: int, b: int) -> int:
    """Sign of a + b√2 for integers a, b."""
    if a >= 0 and b >= 0:
        return 1 if (a or b) else 0
    if a <= 0 and b <= 0:
        return -1
    d = a * a - 2 * b * b
    if d == 0:
        return 0
    return (1 if d > 0 else -1) * (1 if a > 0 else -1)


def _sign_sqrt3(x: tuple[int, int], y: tuple[int, int]) -> int:
    """Sign of x + y√3 with x, y ∈ Z[√2] given as pairs."""
    sx = _sign_q_sqrt2(*x)
    sy = _sign_q_sqrt2(*y)
    if sy == 0:
        return sx
    if sx == 0:
        return sy
    if sx == sy:
        return sx
    # compare x² against 3y² in Z[√2]
    x2 = (x[0] * x[0] + 2 * x[1] * x[1], 2 * x[0] * x[1])
    y2 = (3 * (y[0] * y[0] + 2 * y[1] * y[1]), 3 * 2 * y[0] * y[1])
    d = _sign_q_sqrt2(x2[0] - y2[0], x2[1] - y2[1])
    return d * sx


@total_ordering
class _RealKey:
    __slots__ = ("v",)

    def __init__(self, v: CoeffK) -> None:
        self.v = v

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _RealKey) and self.v == other.v

    def __lt__(self, other: _RealKey) -> bool:
        return (self.v - other.v).sign() < 0


def as_coeff(x: Scalar) -> CoeffK:
    return CoeffK.coerce(x)


ZERO = CoeffK.from_int(0)
ONE = CoeffK.from_int(1)
I = CoeffK((0, 1, 0, 0, 0, 0, 0, 0))
SQRT2 = CoeffK((0, 0, 1, 0, 0, 0, 0, 0))
SQRT3 = CoeffK((0, 0, 0, 0, 1, 0, 0, 0))
SQRT6 = CoeffK((0, 0, 0, 0, 0, 0, 1, 0))
HALF = CoeffK.from_fraction(Fraction(1, 2))


# ------------------------------------------------------------- square roots
#
# Square roots are found by descending the tower Q ⊂ Q(√2) ⊂ Q(√2,√3) ⊂ K:
# if x = a + b·g with g² = d and a, b in the smaller field, a root p + q·g
# satisfies p² + d q² = a and 2pq = b, so p² = (a ± √(a² - d b²)) / 2.

_TOWER = ((2, 2), (4, 3), (1, -1))  # (basis bit, square of the generator)


def _split(x: CoeffK, bit: int) -> tuple[CoeffK, CoeffK]:
    a = [0] * 8
    b = [0] * 8
    for j, n in enumerate(x._nums):
        if j & bit:
            b[j ^ bit] = n
        else:
            a[j] = n
    return CoeffK._raw(a, x._den), CoeffK._raw(b, x._den)


def _gen(bit: int) -> CoeffK:
    nums = [0] * 8
    nums[bit] = 1
    return CoeffK._raw(nums, 1)


def _sqrt_rational(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    from math import isqrt

    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _sqrt_level(x: CoeffK, level: int) -> CoeffK | None:
    if x.is_zero():
        return ZERO
    if level == 0:
        r = _sqrt_rational(x.to_fraction())
        return None if r is None else CoeffK.from_fraction(r)
    bit, d = _TOWER[level - 1]
    g = _gen(bit)
    a, b = _split(x, bit)
    if b.is_zero():
        r = _sqrt_level(a, level - 1)
        if r is not None:
            return r
        # a root of the form q·g with q² = a / d
        r = _sqrt_level(a * Fraction(1, d), level - 1)
        return None if r is None else r * g
    n = _sqrt_level(a * a - b * b * d, level - 1)
    if n is None:
        return None
    for cand in (a + n, a - n):
        p = _sqrt_level(cand * HALF, level - 1)
        if p is None or p.is_zero():
            continue
        q = b / (p * 2)
        root = p + q * g
        if root * root == x:
            return root
    return None


def sqrt_in_field(x: Scalar) -> CoeffK | None:
    """A square root of x inside K, or None when x is not a square in K.

    For real non-negative x that have a real root, the returned root is real
    and non-negative.
    """
    x = as_coeff(x)
    r = _sqrt_level(x, len(_TOWER))
    if r is None:
        return None
    if r.is_real() and r.sign() < 0:
        r = -r
    elif not r.is_real():
        # prefer the root with positive real part (then positive imaginary part)
        re, im = r.real(), r.imag()
        if re.sign() < 0 or (re.is_zero() and im.sign() < 0):
            r = -r
    return r


def abs_in_field(x: Scalar) -> CoeffK | None:
    """|x| as an element of K, or None when it lies outside K."""
    x = as_coeff(x)
    return sqrt_in_field(x * x.conj())


def unit_part(x: Scalar) -> CoeffK | None:
    """x / |x| for nonzero x, or None when |x| lies outside K."""
    x = as_coeff(x)
    a = abs_in_field(x)
    if a is None or a.is_zero():
        return None
    return x / a


# small integers n = a² + b², used to solve α·σ(α) = r beyond real square roots
def _two_square_table(limit: int = 400) -> list[tuple[int, int, int]]:
    out = []
    for n in range(2, limit + 1):
        for a in range(1, int(n ** 0.5) + 1):
            b2 = n - a * a
            b = int(round(b2 ** 0.5))
            if b >= 1 and b * b == b2:
                out.append((n, a, b))
                break
    return out


_TWO_SQUARES = _two_square_table()


def norm_root(r: Scalar) -> CoeffK | None:
    """Some α in K with α·σ(α) = r for real positive r, or None if none is found.

    Real square roots are tried first, then α = (a + b i)·√(r / (a² + b²)) for
    small sums of two squares. The search is exhaustive for neither case; a
    None result means no root was found, not that none exists.
    """
    r = as_coeff(r)
    if not r.is_real() or r.sign() <= 0:
        return None
    s = sqrt_in_field(r)
    if s is not None:
        return s
    for n, a, b in _TWO_SQUARES:
        s = sqrt_in_field(r * Fraction(1, n))
        if s is not None:
            return CoeffK.gaussian(a, b) * s
    return None


# ------------------------------------------------------------------ k-th roots
#
# The roots of unity in K are exactly the 24th roots of unity.  Other k-th
# roots are located numerically in all embeddings of K at once and then
# confirmed exactly; a numerical candidate is never returned unverified.

_Z24 = CoeffK((0, 0, Fraction(1, 4), 0, 0, 0, Fraction(1, 4), 0)) + CoeffK(
    (0, 0, 0, Fraction(-1, 4), 0, 0, 0, Fraction(1, 4))
)


def _roots_of_unity() -> tuple[CoeffK, ...]:
    out = [ONE]
    for _ in range(23):
        out.append(out[-1] * _Z24)
    return tuple(out)


ROOTS_OF_UNITY = _roots_of_unity()

_SIGNS = tuple((s1, s2, s3) for s1 in (1, -1) for s2 in (1, -1) for s3 in (1, -1))


def _embedding_matrix():
    import numpy as np

    E = np.zeros((8, 8), dtype=complex)
    for r, (s1, s2, s3) in enumerate(_SIGNS):
        gens = (1j * s1, s2 * 2 ** 0.5, s3 * 3 ** 0.5)
        for j in range(8):
            v = 1 + 0j
            for bit, g in zip((1, 2, 4), gens):
                if j & bit:
                    v *= g
            E[r, j] = v
    return E


_EMB = None


def _embed(x: CoeffK) -> list[complex]:
    global _EMB
    if _EMB is None:
        import numpy as np

        _EMB = (_embedding_matrix(), np.linalg.inv(_embedding_matrix()))
    c = [float(q) for q in x.coords]
    return list(_EMB[0] @ c)


def _recognize(coords) -> CoeffK | None:
    out = []
    for v in coords:
        q = Fraction(float(v)).limit_denominator(10 ** 6)
        if abs(float(q) - float(v)) > 1e-7 * max(1.0, abs(float(v))):
            return None
        out.append(q)
    return CoeffK(out)


def _odd_root_numeric(v: CoeffK, k: int, limit: int = 9) -> CoeffK | None:
    """Some y in K with y^k = v, searched over all embedding-wise root choices."""
    import cmath
    import itertools

    import numpy as np

    if k > limit:
        return None
    vals = _embed(v)
    # embeddings 0..3 send i to i; 4..7 are their complex conjugates
    choices = []
    for r in range(4):
        z = vals[r]
        mod, arg = abs(z) ** (1.0 / k), cmath.phase(z)
        choices.append([mod * cmath.exp(1j * (arg + 2 * cmath.pi * j) / k) for j in range(k)])
    einv = _EMB[1]
    for combo in itertools.product(*choices):
        full = np.array(list(combo) + [c.conjugate() for c in combo])
        coords = (einv @ full).real
        y = _recognize(coords)
        if y is not None and y ** k == v:
            return y
    return None


def kth_roots_in_field(v: Scalar, k: int) -> list[CoeffK]:
    """All y in K with y^k = v (possibly empty), sorted canonically.

    Exhaustive when v is a root of unity; otherwise a root is searched for by
    repeated square roots and a bounded numerical search, so an empty result
    for large odd k means "not found".
    """
    v = as_coeff(v)
    if k <= 0:
        raise ValueError("k must be positive")
    if v.is_zero():
        return [ZERO]
    if k == 1:
        return [v]
    if v ** 24 == ONE:
        return sorted({z for z in ROOTS_OF_UNITY if z ** k == v}, key=lambda z: z.order_key())
    a, b = 0, k
    while b % 2 == 0:
        a += 1
        b //= 2
    level = [v]
    for _ in range(a):
        nxt = []
        for w in level:
            r = sqrt_in_field(w)
            if r is not None:
                nxt.extend([r, -r])
        level = nxt
    y0 = None
    for w in level:
        y0 = w if b == 1 else _odd_root_numeric(w, b)
        if y0 is not None:
            break
    if y0 is None:
        return []
    roots = {y0 * z for z in ROOTS_OF_UNITY if z ** k == ONE}
    return sorted(roots, key=lambda z: z.order_key())


def real_kth_root(x: Scalar, k: int) -> CoeffK | None:
    """The positive real k-th root of a positive real x, if it lies in K."""
    x = as_coeff(x)
    if not x.is_real() or x.sign() <= 0:
        return None
    for y in kth_roots_in_field(x, k):
        if y.is_real() and y.sign() > 0:
            return y
    return None
