import random

import pytest
from hypothesis import given, settings, strategies as st

from codimone.exactint import (
    IntMatrix,
    char_poly,
    determinant,
    eigenvalue_modulus_profile,
    integer_kernel,
    poly_str,
    smith_normal_form,
)
from codimone.generate import random_unimodular
from oracles import charpoly_by_interpolation, leibniz_det, numeric_profile

C3 = [[0, 1, 0], [0, 0, 1], [1, 1, 1]]


def square(max_n=4, lo=-10, hi=10):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                           min_size=n, max_size=n))


# examples ----------------------------------------------------------------

def test_determinant_examples():
    assert determinant([[2, 1], [1, 1]]) == 1
    assert determinant(IntMatrix.identity(3)) == 1
    assert determinant([[4, 3], [3, 1]]) == 4 * 1 - 3 * 3 == -5


def test_char_poly_examples():
    assert char_poly([[2, 1], [1, 1]]) == [1, -3, 1]
    assert char_poly(IntMatrix.identity(2)) == [1, -2, 1]
    assert char_poly(C3) == [1, -1, -1, -1]
    assert poly_str([1, -1, -1, -1]) == "x^3 - x^2 - x - 1"


def test_smith_examples():
    assert smith_normal_form([[1, 1], [1, 0]]).diagonal == (1, 1)
    assert smith_normal_form([[2, 0], [0, 2]]).diagonal == (2, 2)
    assert smith_normal_form([[4, 3], [3, 1]]).diagonal == (1, 5)
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == (0, 0)


def test_profile_examples():
    assert eigenvalue_modulus_profile([[2, 1], [1, 1]]) == (1, 0, 1)
    assert eigenvalue_modulus_profile(IntMatrix.identity(2)) == (0, 2, 0)
    assert eigenvalue_modulus_profile(C3) == (2, 0, 1)


def test_reciprocal_but_hyperbolic():
    # x^2 - 3x + 1 is its own reversal yet has no root on the circle;
    # a gcd-with-reversal test alone would call it non-hyperbolic
    assert eigenvalue_modulus_profile([[2, 1], [1, 1]])[1] == 0


def test_profile_on_circle_cases():
    rot = [[0, -1], [1, 0]]                       # eigenvalues +-i
    assert eigenvalue_modulus_profile(rot) == (0, 2, 0)
    assert eigenvalue_modulus_profile([[-1]]) == (0, 1, 0)
    # Salem-like block diag(A, rotation) has 2 roots on the circle
    m = [[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    assert eigenvalue_modulus_profile(m) == (1, 2, 1)
    # repeated hyperbolic factor
    a = IntMatrix([[2, 1], [1, 1]])
    block = [[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 2, 1], [0, 0, 1, 1]]
    assert eigenvalue_modulus_profile(block) == (2, 0, 2)
    assert eigenvalue_modulus_profile(a @ a) == (1, 0, 1)


def test_one_by_one():
    assert determinant([[7]]) == 7
    assert char_poly([[-1]]) == [1, 1]
    assert eigenvalue_modulus_profile([[3]]) == (0, 0, 1)


def test_inverse_and_power():
    a = IntMatrix([[2, 1], [1, 1]])
    assert a @ a.inverse() == IntMatrix.identity(2)
    assert a ** -2 == a.inverse() @ a.inverse()
    with pytest.raises(ValueError):
        IntMatrix([[2, 0], [0, 1]]).inverse()


def test_integer_kernel():
    ker = integer_kernel([[1, 2, 3]])
    assert len(ker) == 2
    for v in ker:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0


# properties ---------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(square())
def test_bareiss_matches_leibniz(rows):
    assert determinant(rows) == leibniz_det(rows)


@settings(max_examples=120, deadline=None)
@given(square())
def test_char_poly_matches_interpolation(rows):
    assert char_poly(rows) == charpoly_by_interpolation(rows)


@settings(max_examples=150, deadline=None)
@given(square())
def test_smith_form_invariants(rows):
    m = IntMatrix(rows)
    snf = smith_normal_form(m)
    d = snf.diagonal
    n = m.n
    assert abs(snf.left.det()) == 1 and abs(snf.right.det()) == 1
    diag = snf.left @ m @ snf.right
    assert diag == IntMatrix([[d[i] if i == j else 0 for j in range(n)] for i in range(n)])
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    prod = 1
    for x in d:
        prod *= x
    assert abs(determinant(snf.left) * determinant(m) * determinant(snf.right)) == prod


@settings(max_examples=80, deadline=None)
@given(square(max_n=4, lo=-6, hi=6), st.integers(0, 10_000))
def test_smith_diagonal_is_canonical(rows, seed):
    rng = random.Random(seed)
    n = len(rows)
    u = random_unimodular(rng, n, rng.choice((-1, 1)))
    v = random_unimodular(rng, n, rng.choice((-1, 1)))
    m = IntMatrix(rows)
    assert smith_normal_form(u @ m @ v).diagonal == smith_normal_form(m).diagonal


@settings(max_examples=80, deadline=None)
@given(square(max_n=4, lo=-6, hi=6), st.integers(0, 10_000))
def test_char_poly_conjugation_invariant(rows, seed):
    rng = random.Random(seed)
    z = random_unimodular(rng, len(rows), 1)
    m = IntMatrix(rows)
    assert char_poly(z @ m @ z.inverse()) == char_poly(m)


@settings(max_examples=200, deadline=None)
@given(square(max_n=5, lo=-5, hi=5))
def test_profile_sums_and_agrees_with_numeric(rows):
    prof = eigenvalue_modulus_profile(rows)
    assert sum(prof) == len(rows)
    num = numeric_profile(rows)
    if num is not None:
        assert prof == num
    p = char_poly(rows)
    at1 = sum(p)
    atm1 = sum(c * (-1) ** (len(p) - 1 - i) for i, c in enumerate(p))
    if at1 == 0 or atm1 == 0:
        assert prof[1] > 0
