"""Approximate bigraded-symbol classification with arbitrary-precision floats.

Used only when requested explicitly (the CLI's ``--backend float``): it
identifies the row and its parameters (ε, λ, e^{iθ}) for pairs whose
normalising transformation would leave Q(i,√2,√3).  No transformation is
returned and nothing downstream consumes these numbers.
"""

from __future__ import annotations

import mpmath

from .linalg import Mat2

__all__ = ["classify_float"]

_DPS = 60


def _m(A: Mat2) -> mpmath.matrix:
    return mpmath.matrix([[A[i, j].to_mpc() for j in range(2)] for i in range(2)])


def _herm(G, x, y):
    """x̄ᵀ G y."""
    return sum(mpmath.conj(x[i]) * G[i, j] * y[j] for i in range(2) for j in range(2))


def _bil(S, x, y):
    return sum(x[i] * S[i, j] * y[j] for i in range(2) for j in range(2))


def _kernel(A, tol):
    """A nonzero vector in the kernel of a (numerically) singular 2×2 matrix."""
    rows = [(A[0, 0], A[0, 1]), (A[1, 0], A[1, 1])]
    a, b = max(rows, key=lambda r: abs(r[0]) + abs(r[1]))
    if abs(a) + abs(b) < tol:
        return (mpmath.mpc(1), mpmath.mpc(0))
    return (-b, a)


def _sign(x, tol) -> int:
    if abs(x) < tol:
        raise ValueError("sign of a numerically vanishing quantity")
    return 1 if mpmath.re(x) > 0 else -1


def _fmt(x) -> str:
    return mpmath.nstr(x, 30)


def classify_float(H: Mat2, S02: Mat2, tol: float = 1e-30) -> dict:
    """Row and parameters of (H, S02), decided with tolerance `tol`."""
    with mpmath.workdps(_DPS):
        tol_text = repr(tol)
        tol = mpmath.mpf(tol_text)
        h, s = _m(H), _m(S02)
        G = h ** -1
        T = h * s.apply(mpmath.conj) * h.T * s
        definite = mpmath.re(mpmath.det(h)) > 0
        herm = lambda x, y: _herm(G, x, y)  # noqa: E731
        out: dict = {"backend": "float", "tolerance": tol_text}
        scale = max(abs(v) for v in s) or 1
        if abs(mpmath.det(s)) < tol * scale * scale:
            if mpmath.mnorm(T, 1) < tol * scale * scale:
                out["row"] = "R7"
                return out
            m2 = _kernel(s, tol)
            row_vec = [sum(mpmath.conj(m2[i]) * G[i, j] for i in range(2)) for j in range(2)]
            m1 = (-row_vec[1], row_vec[0])
            out["row"] = "R4"
            out["params"] = {"eps": _sign(herm(m1, m1), tol) * _sign(herm(m2, m2), tol)}
            return out
        tr = T[0, 0] + T[1, 1]
        det = mpmath.det(T)
        disc = tr * tr - 4 * det
        if abs(disc) < tol * max(abs(tr) ** 2, 1):
            mu = tr / 2
            off = T - mu * mpmath.eye(2)
            if mpmath.mnorm(off, 1) < tol * max(abs(mu), 1):
                if definite or mpmath.re(mu) < 0:
                    # isotropic lines of S02: (1, t) or (0, 1)
                    a, b, c = s[1, 1], 2 * s[0, 1], s[0, 0]
                    if abs(a) < tol:
                        lines = [(mpmath.mpc(0), mpmath.mpc(1)), (mpmath.mpc(1), -c / b)]
                    else:
                        r = mpmath.sqrt(b * b - 4 * a * c)
                        lines = [(mpmath.mpc(1), (-b + r) / (2 * a)), (mpmath.mpc(1), (-b - r) / (2 * a))]
                    m1, m2 = lines
                    out["row"] = "R3"
                    out["params"] = {"eps": _sign(herm(m1, m1), tol) * _sign(herm(m2, m2), tol)}
                else:
                    out["row"] = "R5"
            else:
                out["row"] = "R6"
            return out
        root = mpmath.sqrt(disc)
        mua, mub = (tr + root) / 2, (tr - root) / 2
        if abs(mpmath.im(mua)) < tol * abs(mua) and abs(mpmath.im(mub)) < tol * abs(mub):
            mua, mub = mpmath.re(mua), mpmath.re(mub)
            if mua < mub:
                mua, mub = mub, mua
            m1 = _kernel(T - mub * mpmath.eye(2), tol)
            m2 = _kernel(T - mua * mpmath.eye(2), tol)
            out["row"] = "R1"
            out["params"] = {
                "eps": _sign(herm(m1, m1), tol) * _sign(herm(m2, m2), tol),
                "lambda": _fmt(mpmath.sqrt(mua / mub)),
            }
            return out
        va = _kernel(T - mua * mpmath.eye(2), tol)
        vb = _kernel(T - mub * mpmath.eye(2), tol)
        for m1, m2 in ((va, vb), (vb, va)):
            s11, s22, h12 = _bil(s, m1, m1), _bil(s, m2, m2), herm(m1, m2)
            unit = s22 / (h12 * h12 * s11)
            unit = unit / abs(unit)
            if mpmath.im(unit) > 0:
                out["row"] = "R2"
                out["params"] = {"unit": [_fmt(mpmath.re(unit)), _fmt(mpmath.im(unit))],
                                 "theta_over_pi": _fmt(mpmath.arg(unit) / mpmath.pi)}
                return out
        raise ValueError("could not orient the unimodular invariant")
