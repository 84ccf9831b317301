import random

import pytest
from hypothesis import given, settings, strategies as st

from codimone.conjugacy import Status
from codimone.exactint import IntMatrix
from codimone.generate import copy_S, random_S, random_unimodular
from codimone.torus import InvariantRejected, check_anosov
from codimone.tube import (
    KTube,
    SInvariant,
    agrees,
    decide_tube_equivalence,
    is_admissible,
    manifold_of_S,
    t_u,
    validate_S,
)

C = check_anosov([[0, 1, 0], [0, 0, 1], [1, 1, 1]], "r")
CI = C.inverse()


def tube(*autos):
    return KTube(tuple(autos))


def test_t_u_examples():
    assert CI.epsilon == "a"
    assert t_u(tube(C, CI)) == 1
    assert t_u(tube(C, C, C)) == 3
    assert t_u(tube(CI, CI)) == 0


def test_admissible_examples():
    assert is_admissible(tube(CI, C))
    assert not is_admissible(tube(C, C, C))
    assert is_admissible(tube(C, C, CI))
    with pytest.raises(InvariantRejected):
        is_admissible(tube(C))


def test_agrees_examples():
    assert agrees(tube(CI, C), 1, 0, 1)
    assert agrees(tube(C, C, CI), 0, 1, 2)
    assert not agrees(tube(C, CI, CI), 0, 1, 2)
    with pytest.raises(InvariantRejected) as e:
        agrees(tube(CI, C), 1, 1, 1)
    assert e.value.reason == "euler"


def test_k_equals_two_accepts_either_branch():
    t = tube(CI, C)
    assert agrees(t, 1, 0, 1) and agrees(t, 0, 1, 1)


def test_saddle_index():
    assert SInvariant(tube(C, CI, CI), 1, 0, 2).saddle_index == 1
    assert SInvariant(tube(C, C, CI), 0, 1, 2).saddle_index == 2


def test_mixed_dimensions_rejected():
    a2 = check_anosov([[2, 1], [1, 1]], "a")
    with pytest.raises(InvariantRejected):
        tube(a2, C)


def test_validate_report():
    good = SInvariant(tube(CI, C), 1, 0, 1)
    assert validate_S(good).ok
    bad = SInvariant(tube(C, C, C), 1, 0, 2)
    rep = validate_S(bad)
    assert not rep.ok
    assert [c.name for c in rep.failures()] == ["admissible"]
    two = check_anosov([[2, 1], [1, 1]], "a")
    flat = SInvariant(tube(two, check_anosov([[2, 1], [1, 1]], "r")), 1, 0, 1)
    assert [c.name for c in validate_S(flat).failures()] == ["dimension"]


def test_equivalence_examples():
    s = SInvariant(tube(CI, C), 1, 0, 1)
    v = decide_tube_equivalence(s, s)
    assert v.status is Status.YES
    assert v.permutation == (0, 1)
    assert all(w.matrix == IntMatrix.identity(3) for w in v.witnesses)
    assert v.sign == 1

    z = IntMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    conj = lambda a: check_anosov(z @ a.matrix @ z.inverse(), a.epsilon)
    s2 = SInvariant(tube(conj(C), conj(CI)), 1, 0, 1)
    v = decide_tube_equivalence(s, s2, 5)
    assert v.status is Status.YES and v.permutation == (1, 0)

    s3 = SInvariant(tube(CI, C, C), 0, 1, 2)
    s4 = SInvariant(tube(CI, C, C), 0, 2, 3)
    assert decide_tube_equivalence(s3, s4).certificate == "c"


def test_no_when_char_polys_differ():
    other = check_anosov([[0, 1, 0], [0, 0, 1], [1, 0, 3]], "r")
    s1 = SInvariant(tube(CI, C), 1, 0, 1)
    s2 = SInvariant(tube(CI, other), 1, 0, 1)
    assert decide_tube_equivalence(s1, s2).certificate == "charpoly-multiset"


def test_manifold_examples():
    s = SInvariant(tube(CI, C), 1, 0, 1)
    assert str(manifold_of_S(s)) == "T^3 # T^3"
    s3 = SInvariant(tube(CI, C, C), 0, 1, 2)
    assert str(manifold_of_S(s3)) == "T^3 # T^3 # T^3"
    assert manifold_of_S(s).handle_count == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 4), st.integers(2, 5), st.integers(0, 10**6))
def test_generated_instances_are_valid_and_equivalent(n, k, seed):
    rng = random.Random(seed)
    s = random_S(rng, n, k)
    assert s.k + s.a + s.b == s.c + 2
    assert validate_S(s).ok
    c = copy_S(rng, s)
    assert validate_S(c).ok
    v = decide_tube_equivalence(s, c, 5)
    assert v.status is Status.YES
    back = decide_tube_equivalence(c, s, 5)
    assert back.status is Status.YES
    assert len({w.sign for w in v.witnesses}) == 1
    for i, (j, w) in enumerate(zip(v.permutation, v.witnesses)):
        a, b = s.tube.autos[i].matrix, c.tube.autos[j].matrix
        assert w.matrix @ a == b @ w.matrix


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_fixed_conjugation_keeps_equivalence(seed):
    rng = random.Random(seed)
    s = random_S(rng, 3, rng.randint(2, 4))
    z = random_unimodular(rng, 3, rng.choice((-1, 1)))
    order = list(range(s.k))
    rng.shuffle(order)
    autos = tuple(check_anosov(z @ s.tube.autos[i].matrix @ z.inverse(),
                               s.tube.autos[i].epsilon) for i in order)
    s2 = SInvariant(KTube(autos), s.a, s.b, s.c)
    assert validate_S(s2).ok
    assert decide_tube_equivalence(s, s2, 5).status is Status.YES
