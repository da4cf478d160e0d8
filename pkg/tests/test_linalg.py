from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from tautilt.linalg import (
    QQ,
    Matrix,
    ModP,
    PrimeField,
    charpoly,
    cokernel_projection,
    complement_columns,
    field_from_spec,
    hstack,
    image_basis,
    inverse,
    kernel_basis,
    left_kernel_basis,
    poly_eval_matrix,
    rank,
    solve,
)

small = st.integers(-3, 3)


@st.composite
def matrices(draw, field=QQ, max_dim=6):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    rows = [[field(draw(small)) for _ in range(c)] for _ in range(r)]
    return Matrix(field, rows, c)


def as_sympy(A):
    return sympy.Matrix(A.nrows, A.ncols, lambda i, j: sympy.Rational(A[i, j].numerator, A[i, j].denominator))


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_rank_nullity_and_kernel(A):
    K = kernel_basis(A)
    assert rank(A) + K.ncols == A.ncols
    assert (A @ K).is_zero()
    assert rank(K) == K.ncols
    assert rank(A) == as_sympy(A).rank()


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_cokernel_and_image(A):
    Q = cokernel_projection(A)
    assert (Q @ A).is_zero()
    assert Q.nrows == A.nrows - rank(A)
    assert rank(Q) == Q.nrows
    I = image_basis(A)
    assert I.ncols == rank(A) == rank(hstack(QQ, [A, I], A.nrows))
    L = left_kernel_basis(A)
    assert (L @ A).is_zero()
    C = complement_columns(I, A.nrows)
    assert rank(hstack(QQ, [I, C], A.nrows)) == A.nrows


@settings(max_examples=300, deadline=None)
@given(matrices(), st.data())
def test_solve_round_trip(A, data):
    k = data.draw(st.integers(1, 3))
    X = Matrix(QQ, [[QQ(data.draw(small)) for _ in range(k)] for _ in range(A.ncols)], k)
    B = A @ X
    Y = solve(A, B)
    assert Y is not None and A @ Y == B


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_charpoly_against_sympy(rows):
    n = len(rows)
    A = Matrix(QQ, [[QQ(x) for x in r] for r in rows], n)
    ours = charpoly(A)
    theirs = sympy.Matrix(rows).charpoly().all_coeffs()[::-1]
    assert [Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in theirs] == ours
    assert poly_eval_matrix(ours, A).is_zero()  # Cayley-Hamilton


@settings(max_examples=150, deadline=None)
@given(matrices(field=PrimeField(5), max_dim=5))
def test_prime_field_identities(A):
    F = A.field
    K = kernel_basis(A)
    assert (A @ K).is_zero() and rank(A) + K.ncols == A.ncols
    # brute force: the row space has exactly p**rank elements
    if A.nrows <= 3:
        import itertools
        span = {tuple(sum((int(c) * int(x) for c, x in zip(cs, col)), 0) % 5 for col in zip(*A.rows))
                for cs in itertools.product(range(5), repeat=A.nrows)}
        assert len(span) == 5 ** rank(A)
    if A.nrows == A.ncols:
        inv = inverse(A)
        if inv is not None:
            assert A @ inv == Matrix.identity(F, A.nrows)


def test_modp_arithmetic():
    F = PrimeField(7)
    a, b = F(3), F(5)
    assert int(a * b) == 1 and int(a / b) == (3 * 3) % 7
    assert int(a - b) == 5 and -a == F(4)
    with pytest.raises(ZeroDivisionError):
        a / F(0)
    assert isinstance(a, ModP)


def test_field_specs():
    assert field_from_spec("Q") == QQ
    assert field_from_spec("Fp:3") == PrimeField(3)
    with pytest.raises(ValueError):
        field_from_spec("Fp:4")
    with pytest.raises(ValueError):
        field_from_spec("R")


def test_singular_has_no_inverse():
    A = Matrix(QQ, [[1, 2], [2, 4]])
    assert inverse(A) is None
    assert solve(A, Matrix(QQ, [[1], [0]])) is None
