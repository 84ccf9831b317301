import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from codimone.generate import random_graph, random_S
from codimone.realize import realize
from codimone.serialize import ParseError, TripleSpec, dumps, load, loads, parse_rational, to_dict
from codimone.torus import check_anosov, point

TRIPLE = {"v": 1, "class": "triple", "n": 2, "matrix": [[2, 1], [1, 1]], "epsilon": "a"}


def test_parse_rational():
    assert parse_rational(3, "x") == 3
    assert parse_rational("-6/4", "x") == Fraction(-3, 2)
    for bad in ("3/0", 0.5, "x", True, "1.5"):
        with pytest.raises(ParseError):
            parse_rational(bad, "x")


def test_triple_round_trip():
    t = loads(json.dumps(TRIPLE))
    assert isinstance(t, TripleSpec) and t.points is None
    assert loads(dumps(t)) == t
    a = check_anosov([[2, 1], [1, 1]], "a")
    t2 = TripleSpec(a, (point(0, 0),))
    assert loads(dumps(t2)) == t2


def test_errors_carry_location():
    doc = dict(TRIPLE, matrix=[[2, 1], [1]])
    with pytest.raises(ParseError) as e:
        loads(json.dumps(doc))
    assert "matrix[1]" in e.value.location
    with pytest.raises(ParseError, match="version"):
        loads(json.dumps(dict(TRIPLE, v=2)))
    with pytest.raises(ParseError, match="class"):
        loads(json.dumps(dict(TRIPLE, **{"class": "Q"})))
    with pytest.raises(ParseError, match="floating"):
        loads('{"v": 1, "class": "triple", "n": 2, "matrix": [[2.0, 1], [1, 1]], "epsilon": "a"}')
    with pytest.raises(ParseError) as e:
        loads('{"v": 1,\n "class": }')
    assert e.value.location.startswith("line 2")
    with pytest.raises(ParseError, match="epsilon"):
        loads(json.dumps(dict(TRIPLE, epsilon="x")))


def test_load_prefixes_path(tmp_path):
    p = tmp_path / "t.json"
    p.write_text(json.dumps(dict(TRIPLE, matrix="no")))
    with pytest.raises(ParseError) as e:
        load(p)
    assert str(p) in e.value.location
    with pytest.raises(ParseError, match="cannot read"):
        load(tmp_path / "missing.json")


def test_to_dict_rejects_unknown():
    with pytest.raises(TypeError):
        to_dict(object())


def test_output_is_stable_and_compact():
    s = random_S(random.Random(1), 3, 2)
    text = dumps(s)
    assert text == dumps(loads(text))
    assert '"matrix": [[' in text
    assert json.loads(text)["class"] == "S"


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["S", "P", "M", "realized"]), st.integers(2, 4), st.integers(0, 10**6))
def test_round_trip(kind, k, seed):
    rng = random.Random(seed)
    if kind == "S":
        obj = random_S(rng, 3, k)
    elif kind == "realized":
        obj = realize(random_graph(rng, rng.choice("PM"), 8, k))
    else:
        obj = random_graph(rng, kind, 8 if kind == "P" else 3, k)
    assert loads(dumps(obj)) == obj
