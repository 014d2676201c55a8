from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st
from pytest import raises

from crmodels.field import ONE, ZERO, CoeffK
from crmodels.linalg import Mat2, in_span, nullspace, rank, rref, solve
from strategies import coeffs, matrices


@given(matrices(), matrices())
def test_determinant_is_multiplicative(a, b):
    assert (a * b).det() == a.det() * b.det()
    assert a.T.det() == a.det()


@given(matrices())
def test_inverse(a):
    if a.det().is_zero():
        with raises(ZeroDivisionError):
            a.inverse()
        assert a.rank() < 2
        return
    assert a * a.inverse() == Mat2.identity()
    assert a.rank() == 2


@given(matrices())
def test_adjoint_and_hermitian_parts(a):
    assert a.H == a.conj().T
    assert (a + a.H).is_hermitian()
    assert (a + a.T).is_symmetric()


@given(matrices())
def test_json_round_trip(a):
    assert Mat2.from_json(a.to_json()) == a


def test_from_json_rejects_bad_shape():
    with raises(ValueError):
        Mat2.from_json([[["1/1"] * 8]])


@given(st.lists(st.lists(coeffs(), min_size=4, max_size=4), min_size=1, max_size=4))
def test_nullspace_vectors_are_annihilated(rows):
    basis = nullspace(rows)
    assert len(basis) + rank(rows) == 4
    for v in basis:
        for r in rows:
            assert sum((x * y for x, y in zip(r, v)), ZERO) == ZERO


@given(st.lists(st.lists(coeffs(), min_size=3, max_size=3), min_size=1, max_size=4), st.lists(coeffs(), min_size=3, max_size=3))
def test_solve_reproduces_a_consistent_right_hand_side(rows, x):
    rhs = [sum((a * b for a, b in zip(r, x)), ZERO) for r in rows]
    y = solve(rows, rhs)
    assert y is not None
    assert [sum((a * b for a, b in zip(r, y)), ZERO) for r in rows] == rhs


@given(st.lists(st.lists(coeffs(), min_size=3, max_size=3), min_size=1, max_size=3), st.lists(coeffs(), min_size=3, max_size=3))
def test_span_membership_of_combinations(vectors, c):
    target = [sum((a * v[j] for a, v in zip(c, vectors)), ZERO) for j in range(3)]
    found = in_span(vectors, target)
    assert found is not None
    assert [sum((a * v[j] for a, v in zip(found, vectors)), ZERO) for j in range(3)] == target


def test_inconsistent_system():
    assert solve([[ONE, ONE], [ONE, ONE]], [ONE, ZERO]) is None
    assert in_span([], [ONE]) is None
    assert in_span([], [ZERO]) == []


def test_rref_pivots():
    red, piv = rref([[ZERO, ONE, CoeffK.from_int(2)], [ZERO, CoeffK.from_int(2), CoeffK.from_int(4)]])
    assert piv == [1]
    assert red == [[ZERO, ONE, CoeffK.from_int(2)]]
