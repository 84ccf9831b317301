import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from codimone.conjugacy import (
    ANY,
    NEGATIVE,
    POSITIVE,
    SignConstraint,
    Status,
    Triple,
    WitnessSearch,
    decide_conjugacy,
    decide_triple_equivalence,
    intertwiner_basis,
    verify_witness,
)
from codimone.exactint import IntMatrix
from codimone.generate import random_unimodular
from codimone.torus import (
    InvariantRejected,
    admissible_epsilons,
    apply,
    check_anosov,
    fixed_points,
    make_point_set,
)
from oracles import random_anosov_rows, unimodular_2x2

A = check_anosov([[2, 1], [1, 1]], "a")


def certified(rows):
    return check_anosov(rows, admissible_epsilons(rows)[0])


def test_intertwiner_examples():
    basis = intertwiner_basis(A.matrix, A.matrix)
    assert len(basis) == 2
    # identity lies in the span
    stacked = np.array([b.flat() for b in basis] + [IntMatrix.identity(2).flat()])
    assert np.linalg.matrix_rank(stacked) == 2
    for z in basis:
        assert z @ A.matrix == A.matrix @ z
    assert intertwiner_basis(A.matrix, [[3, 2], [1, 1]]) == []
    assert len(intertwiner_basis(IntMatrix.identity(2), IntMatrix.identity(2))) == 4
    with pytest.raises(ValueError):
        intertwiner_basis(A.matrix, IntMatrix.identity(3))


def test_decide_examples():
    b = check_anosov([[3, -1], [1, 0]], "a")
    v = decide_conjugacy(A, b, ANY, 5)
    assert v.status is Status.YES
    assert v.witness == IntMatrix([[1, 1], [0, 1]])
    assert verify_witness(v.witness, A.matrix, b.matrix)

    v = decide_conjugacy(A, check_anosov([[3, 2], [1, 1]], "a"), ANY, 10)
    assert v.status is Status.NO and v.certificate == "charpoly"

    v = decide_conjugacy(A, A, POSITIVE, 1)
    assert v.status is Status.YES and v.witness == IntMatrix.identity(2)


def test_epsilon_certificate():
    v = decide_conjugacy(A, check_anosov([[2, 1], [1, 1]], "r"))
    assert v.status is Status.NO and v.certificate == "epsilon"


def test_snf_certificate():
    # both have char poly x^2 - 18x + 1 but lie in different GL(2,Z) classes
    p = check_anosov([[9, 8], [10, 9]], "a")
    q = check_anosov([[17, 1], [16, 1]], "a")
    v = decide_conjugacy(p, q)
    assert v.status is Status.NO
    assert v.certificate in ("snf(A-I)", "snf(A+I)")


def test_uncertified_input_rejected():
    from codimone.torus import AnosovAutomorphism
    with pytest.raises(InvariantRejected):
        decide_conjugacy(A, AnosovAutomorphism(IntMatrix.identity(2), "a"))


def test_sign_constraints():
    v = decide_conjugacy(A, A, NEGATIVE, 5)
    # the centralizer of A contains [[0,1],[1,-1]] with det -1
    assert v.status is Status.YES and v.witness.det() == -1
    assert SignConstraint.same_as(None).allows(-1)
    assert not SignConstraint.same_as(1).allows(-1)
    with pytest.raises(ValueError):
        SignConstraint("sideways")


def test_triple_examples():
    fa = fixed_points(A)
    t = Triple(A, fa)
    v = decide_triple_equivalence(t, t)
    assert v.status is Status.YES and v.witness == IntMatrix.identity(2)

    r = Triple(check_anosov([[2, 1], [1, 1]], "r"), fa)
    assert decide_triple_equivalence(t, r).certificate == "epsilon"

    a5 = check_anosov([[5, 3], [3, 2]], "a")
    z = IntMatrix([[1, 1], [0, 1]])
    b5 = check_anosov(z @ a5.matrix @ z.inverse(), "a")
    p1 = fixed_points(a5)
    p2 = make_point_set(b5, [apply(z, p) for p in p1])
    v = decide_triple_equivalence(Triple(a5, p1), Triple(b5, p2))
    assert v.status is Status.YES
    assert {apply(v.witness, p) for p in p1} == set(p2.points)


def test_triple_point_subset_must_match():
    a5 = check_anosov([[5, 3], [3, 2]], "a")
    fp = fixed_points(a5).points
    origin_only = make_point_set(a5, [fp[0]])
    other = make_point_set(a5, [fp[1]])
    v = decide_triple_equivalence(Triple(a5, origin_only), Triple(a5, other), ANY, 4)
    # no linear map moves the origin
    assert v.status is Status.UNKNOWN
    assert v.search_bound == 4


def test_witness_search_shells_are_canonical():
    s = WitnessSearch(A.matrix, A.matrix, 3)
    first = s.next_shell()
    assert first[0].matrix == IntMatrix.identity(2)
    assert not s.exhausted


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 3), st.integers(0, 10**6))
def test_round_trip(n, seed):
    rng = random.Random(seed)
    rows, _ = random_anosov_rows(rng, n, 6 if n == 2 else 3)
    a = certified(rows)
    z = random_unimodular(rng, n, rng.choice((-1, 1)))
    b = check_anosov(z @ a.matrix @ z.inverse(), a.epsilon)
    v = decide_conjugacy(a, b, ANY, 3)
    assert v.status is Status.YES
    assert verify_witness(v.witness, a.matrix, b.matrix)
    if n % 2 == 1:
        # -Z is a witness of the other sign
        assert v.achievable_signs == {1, -1}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_no_is_sound_against_brute_force(seed):
    rng = random.Random(seed)
    rows1, _ = random_anosov_rows(rng, 2, 4)
    rows2, _ = random_anosov_rows(rng, 2, 4)
    a, b = certified(rows1), certified(rows2)
    v = decide_conjugacy(a, b, ANY, 3)
    if v.status is Status.NO and v.certificate != "epsilon":
        for z in unimodular_2x2(4):
            zm = IntMatrix(z)
            assert zm @ a.matrix != b.matrix @ zm
    elif v.status is Status.YES:
        assert verify_witness(v.witness, a.matrix, b.matrix)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_symmetry(seed):
    rng = random.Random(seed)
    rows, _ = random_anosov_rows(rng, 2, 5)
    a = certified(rows)
    z = random_unimodular(rng, 2, 1)
    b = check_anosov(z @ a.matrix @ z.inverse(), a.epsilon)
    assert decide_conjugacy(a, b, ANY, 5).status is decide_conjugacy(b, a, ANY, 5).status


def test_budget_truncates():
    a5 = check_anosov([[5, 3], [3, 2]], "a")
    fp = fixed_points(a5).points
    t1 = Triple(a5, make_point_set(a5, [fp[0]]))
    t2 = Triple(a5, make_point_set(a5, [fp[1]]))
    v = decide_triple_equivalence(t1, t2, ANY, 50, budget=30)
    assert v.status is Status.UNKNOWN and v.truncated
