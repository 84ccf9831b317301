import random

from hypothesis import given, settings, strategies as st

from codimone.exactint import IntMatrix, char_poly
from codimone.generate import companion, generate, random_codim_one, random_unimodular
from codimone.serialize import dumps
from codimone.torus import fixed_points


def test_companion():
    m = companion([1, -3, 1])
    assert m == IntMatrix([[0, 1], [-1, 3]])
    assert char_poly(m) == [1, -3, 1]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.sampled_from([-1, 1]), st.integers(0, 10**6))
def test_random_unimodular(n, sign, seed):
    z = random_unimodular(random.Random(seed), n, sign)
    assert z.det() == sign


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.sampled_from("ar"), st.sampled_from([-1, 1]), st.integers(1, 3),
       st.integers(0, 10**6))
def test_random_codim_one(n, eps, det_sign, min_fixed, seed):
    a = random_codim_one(random.Random(seed), n, eps, det_sign, min_fixed)
    assert a.epsilon == eps
    assert a.matrix.det() == det_sign
    assert len(fixed_points(a)) >= min_fixed


def test_generate_is_deterministic():
    for kind, n in (("S", 3), ("P", 8), ("M", 4)):
        for copy in (False, True):
            outs = {dumps(generate(kind, n, 3, 11, copy)) for _ in range(3)}
            assert len(outs) == 1
    assert dumps(generate("S", 3, 3, 1)) != dumps(generate("S", 3, 3, 2))
