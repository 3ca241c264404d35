from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from tnkit.exactlin import (
    FgAbPresentation, Lattice, condition_lattice, det, hnf, int_kernel, mat_mul,
    solve_int, snf, subquotient,
)

small_int = st.integers(-50, 50)


def int_matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=m, max_size=m)))


def _diag(D):
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


def test_snf_identity_matrix():
    U, D, V = snf([[1, 0], [0, 1]], 2, 2)
    assert D == [[1, 0], [0, 1]]


def test_snf_zero_matrix():
    U, D, V = snf([[0, 0, 0], [0, 0, 0]], 2, 3)
    assert D == [[0, 0, 0], [0, 0, 0]]


def test_snf_small_example():
    U, D, V = snf([[2, 4], [6, 8]], 2, 2)
    assert _diag(D) == [2, 4]
    assert mat_mul(mat_mul(U, [[2, 4], [6, 8]]), V) == D


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_snf_against_sympy(A):
    m, n = len(A), len(A[0])
    U, D, V = snf(A, m, n)
    assert mat_mul(mat_mul(U, A), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    ours = [d for d in _diag(D) if d]
    S = smith_normal_form(sympy.Matrix(A), domain=sympy.ZZ)
    theirs = [abs(int(S[i, i])) for i in range(min(m, n)) if S[i, i] != 0]
    assert ours == theirs


@settings(max_examples=40, deadline=None)
@given(int_matrices(5, 6))
def test_int_kernel_spans_integer_nullspace(A):
    n = len(A[0])
    K = int_kernel(A, n)
    for k in K:
        assert all(sum(a * x for a, x in zip(row, k)) == 0 for row in A)
    assert len(K) == n - sympy.Matrix(A).rank()


@settings(max_examples=40, deadline=None)
@given(int_matrices(4, 4), st.lists(small_int, min_size=4, max_size=4))
def test_solve_int_finds_integer_solutions(A, x):
    n = len(A[0])
    x = x[:n]
    b = [sum(a * v for a, v in zip(row, x)) for row in A]
    y = solve_int(A, b, n)
    assert y is not None
    assert [sum(a * v for a, v in zip(row, y)) for row in A] == b


@settings(max_examples=40, deadline=None)
@given(int_matrices(4, 4))
def test_hnf_is_canonical(rows):
    n = len(rows[0])
    assert hnf(rows, n) == hnf(list(reversed(rows)) + rows, n)


def test_condition_lattice_sum_zero():
    L = condition_lattice(2, 1, Aeq=[[1, 1]])
    assert L == Lattice.from_generators([[1, -1]], 2)


def test_condition_lattice_integral_sum_half_points():
    L = condition_lattice(2, 2, Bint=[[1, 1]])
    half = Lattice.standard(2, 2)
    assert subquotient(L, half).invariants == (2,)
    for a in range(-3, 4):
        for b in range(-3, 4):
            v = (Fraction(a, 2), Fraction(b, 2))
            assert (v in L) == ((a + b) % 2 == 0)


def test_condition_lattice_trivial_group_model():
    for N in (1, 2, 5):
        assert condition_lattice(1, N, Bint=[[1]]) == Lattice.standard(1)


def test_subquotient_examples():
    Z = Lattice.standard(1)
    two = Lattice.from_generators([[2]], 1)
    assert subquotient(two, Z).invariants == (2,)
    assert subquotient(Z, Z).is_trivial()


def test_subquotient_sign_half_has_order_four():
    IY = Lattice.from_generators([[2]], 1)
    for k in range(1, 9):
        amb = Lattice.from_generators([[Fraction(1, k)]], 1)
        q = subquotient(IY, amb)
        assert q.order == 2 * k
    amb = Lattice.from_generators([[Fraction(1, 2)]], 1)
    assert subquotient(IY, amb).element_order((Fraction(1, 2),)) == 4


def test_dimension_zero_is_legal():
    L = Lattice.zero(0)
    assert L.rank == 0
    assert FgAbPresentation(0, []).is_trivial()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_lattice_membership_and_reduction(gens, v):
    L = Lattice.from_generators(gens, 3)
    for g in gens:
        assert tuple(Fraction(x) for x in g) in L
    r = L.reduce(v)
    assert tuple(a - b for a, b in zip(v, r)) in L
    assert L.reduce(r) == r
