"""Exact JSON file format for invariants, triples and realized systems.

Every file is an object with ``"v": 1``, a ``"class"`` and ``"n"``.  Numbers
are integers; rationals are strings ``"p/q"`` (or ``"p"``), never floats.
Parsing only checks shape; the mathematical conditions belong to the
validators, so a file can parse fine and still fail ``validate``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .exactint import IntMatrix
from .graph import ClassGraph, Edge, VertexGroup
from .realize import Block, Connector, RealizedSystem
from .torus import EPSILONS, AnosovAutomorphism, InvariantRejected, TorusPoint
from .tube import KTube, SInvariant

VERSION = 1
CLASSES = ("S", "P", "M", "triple", "realized")
_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(-?\d+)\s*)?$")


class ParseError(ValueError):
    def __init__(self, message: str, location: str = ""):
        self.location = location
        self.message = message
        super().__init__(f"{location}: {message}" if location else message)


@dataclass(frozen=True)
class TripleSpec:
    """An automorphism with optional ordered points, as stored in a triple file."""

    automorphism: AnosovAutomorphism
    points: tuple[TorusPoint, ...] | None = None

    @property
    def n(self) -> int:
        return self.automorphism.n


# --------------------------------------------------------------------------
# reading


def parse_rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"expected an exact rational, got {x!r}", where)
    if isinstance(x, int):
        return Fraction(x)
    if not isinstance(x, str):
        raise ParseError(f"expected a rational string, got {type(x).__name__}", where)
    m = _RATIONAL.match(x)
    if not m:
        raise ParseError(f"malformed rational {x!r}", where)
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ParseError(f"zero denominator in {x!r}", where)
    return Fraction(num, den)


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"expected an integer, got {x!r}", where)
    return x


def _list(x, where: str) -> list:
    if not isinstance(x, list):
        raise ParseError(f"expected a list, got {type(x).__name__}", where)
    return x


def _get(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise ParseError(f"expected an object, got {type(obj).__name__}", where)
    if key not in obj:
        raise ParseError(f"missing field {key!r}", where)
    return obj[key]


def parse_matrix(x, where: str) -> IntMatrix:
    rows = _list(x, where)
    if not rows:
        raise ParseError("empty matrix", where)
    width = len(_list(rows[0], f"{where}[0]"))
    out = []
    for i, row in enumerate(rows):
        row = _list(row, f"{where}[{i}]")
        if len(row) != width:
            raise ParseError(f"row {i} has {len(row)} entries, row 0 has {width}", f"{where}[{i}]")
        out.append([_int(v, f"{where}[{i}][{j}]") for j, v in enumerate(row)])
    if len(out) != width:
        raise ParseError(f"matrix is {len(out)}x{width}, not square", where)
    return IntMatrix(out)


def _epsilon(x, where: str) -> str:
    if x not in EPSILONS:
        raise ParseError(f"epsilon must be 'a' or 'r', got {x!r}", where)
    return x


def parse_point(x, where: str) -> TorusPoint:
    coords = _list(x, where)
    return TorusPoint(tuple(parse_rational(c, f"{where}[{i}]") for i, c in enumerate(coords)))


def _points(x, where: str) -> tuple[TorusPoint, ...]:
    return tuple(parse_point(p, f"{where}[{i}]") for i, p in enumerate(_list(x, where)))


def _auto(obj, where: str) -> AnosovAutomorphism:
    pre = f"{where}." if where else ""
    m = parse_matrix(_get(obj, "matrix", where), f"{pre}matrix")
    e = _epsilon(_get(obj, "epsilon", where), f"{pre}epsilon")
    return AnosovAutomorphism(m, e)


def _vertex(x, where: str) -> tuple[int, int]:
    v = _list(x, where)
    if len(v) != 2:
        raise ParseError("a vertex is [group, index]", where)
    return (_int(v[0], f"{where}[0]"), _int(v[1], f"{where}[1]"))


def _bool(x, where: str) -> bool:
    if not isinstance(x, bool):
        raise ParseError(f"expected true/false, got {x!r}", where)
    return x


def from_dict(doc) -> SInvariant | ClassGraph | TripleSpec | RealizedSystem:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    v = _get(doc, "v", "")
    if v != VERSION:
        raise ParseError(f"unsupported schema version {v!r}, expected {VERSION}", "v")
    cls = _get(doc, "class", "")
    if cls not in CLASSES:
        raise ParseError(f"unknown class {cls!r}", "class")
    n = _int(_get(doc, "n", ""), "n")
    if cls == "S":
        tube = tuple(_auto(t, f"tube[{i}]") for i, t in enumerate(_list(_get(doc, "tube", ""), "tube")))
        counts = {key: _int(_get(doc, key, ""), key) for key in "abc"}
        try:
            kt = KTube(tube)
        except InvariantRejected as exc:
            raise ParseError(str(exc), "tube") from None
        return SInvariant(kt, counts["a"], counts["b"], counts["c"])
    if cls in ("P", "M"):
        groups = []
        for i, g in enumerate(_list(_get(doc, "groups", ""), "groups")):
            where = f"groups[{i}]"
            groups.append(VertexGroup(_auto(g, where),
                                      _points(_get(g, "points", where), f"{where}.points")))
        edges = []
        for i, e in enumerate(_list(_get(doc, "edges", ""), "edges")):
            where = f"edges[{i}]"
            marked = _bool(e.get("marked", False), f"{where}.marked") if isinstance(e, dict) else False
            p = None
            if isinstance(e, dict) and e.get("pontryagin") is not None:
                p = parse_rational(e["pontryagin"], f"{where}.pontryagin")
            edges.append(Edge(_vertex(_get(e, "from", where), f"{where}.from"),
                              _vertex(_get(e, "to", where), f"{where}.to"), marked, p))
        return ClassGraph(cls, n, tuple(groups), tuple(edges))
    if cls == "triple":
        a = _auto(doc, "")
        pts = _points(doc["points"], "points") if doc.get("points") is not None else None
        return TripleSpec(a, pts)
    source = _get(doc, "source", "")
    if source not in ("S", "P", "M"):
        raise ParseError(f"unknown source class {source!r}", "source")
    blocks = []
    for i, b in enumerate(_list(_get(doc, "blocks", ""), "blocks")):
        where = f"blocks[{i}]"
        blocks.append(Block(_auto(b, where), _points(_get(b, "points", where), f"{where}.points")))
    connectors = []
    for i, c in enumerate(_list(_get(doc, "connectors", ""), "connectors")):
        where = f"connectors[{i}]"
        kind = _get(c, "kind", where)
        if not isinstance(kind, str):
            raise ParseError("kind must be a string", f"{where}.kind")
        ends = tuple(_vertex(x, f"{where}.ends[{j}]")
                     for j, x in enumerate(_list(_get(c, "ends", where), f"{where}.ends")))
        p = parse_rational(c["pontryagin"], f"{where}.pontryagin") if c.get("pontryagin") is not None else None
        counts = None
        if "counts" in c:
            cs = _list(c["counts"], f"{where}.counts")
            if len(cs) != 3:
                raise ParseError("counts are [a, b, c]", f"{where}.counts")
            counts = tuple(_int(x, f"{where}.counts[{j}]") for j, x in enumerate(cs))
        connectors.append(Connector(kind, ends, p, counts))
    return RealizedSystem(source, n, tuple(blocks), tuple(connectors))


def loads(text: str):
    try:
        doc = json.loads(text, parse_float=_no_float, parse_constant=_no_float)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return from_dict(doc)


def _no_float(s):
    raise ParseError(f"floating-point literal {s} is not allowed; write rationals as \"p/q\"")


def load(path) -> SInvariant | ClassGraph | TripleSpec | RealizedSystem:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from None
    try:
        return loads(text)
    except ParseError as exc:
        loc = f"{path}: {exc.location}" if exc.location else str(path)
        raise ParseError(exc.message, loc) from None


# --------------------------------------------------------------------------
# writing


def _rat(x: Fraction) -> str:
    return str(Fraction(x))


def _auto_dict(a: AnosovAutomorphism) -> dict:
    return {"matrix": a.matrix.tolist(), "epsilon": a.epsilon}


def _points_list(pts) -> list:
    return [[_rat(c) for c in p.coords] for p in pts]


def to_dict(obj) -> dict:
    if isinstance(obj, SInvariant):
        return {"v": VERSION, "class": "S", "n": obj.n,
                "tube": [_auto_dict(a) for a in obj.tube],
                "a": obj.a, "b": obj.b, "c": obj.c}
    if isinstance(obj, ClassGraph):
        edges = []
        for e in obj.edges:
            d = {"from": list(e.u), "to": list(e.v), "marked": e.marked}
            if e.pontryagin is not None:
                d["pontryagin"] = _rat(e.pontryagin)
            edges.append(d)
        return {"v": VERSION, "class": obj.variant, "n": obj.n,
                "groups": [dict(_auto_dict(g.automorphism), points=_points_list(g.points))
                           for g in obj.groups],
                "edges": edges}
    if isinstance(obj, TripleSpec):
        d = {"v": VERSION, "class": "triple", "n": obj.n, **_auto_dict(obj.automorphism)}
        if obj.points is not None:
            d["points"] = _points_list(obj.points)
        return d
    if isinstance(obj, RealizedSystem):
        conns = []
        for c in obj.connectors:
            d = {"kind": c.kind, "ends": [list(x) for x in c.ends]}
            if c.pontryagin is not None:
                d["pontryagin"] = _rat(c.pontryagin)
            if c.counts is not None:
                d["counts"] = list(c.counts)
            conns.append(d)
        return {"v": VERSION, "class": "realized", "source": obj.source, "n": obj.n,
                "blocks": [dict(_auto_dict(b.automorphism), points=_points_list(b.points))
                           for b in obj.blocks],
                "connectors": conns}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _flat(x) -> bool:
    """Scalars, and lists nested at most two deep, go on one line."""
    if not isinstance(x, list):
        return not isinstance(x, dict)
    return all(not isinstance(y, (list, dict)) or
               (isinstance(y, list) and all(not isinstance(z, (list, dict)) for z in y))
               for y in x)


def _dump(x, indent: int) -> str:
    pad = "  " * indent
    if _flat(x):
        return json.dumps(x, separators=(", ", ": "))
    if isinstance(x, dict):
        items = [f'{pad}  {json.dumps(k)}: {_dump(v, indent + 1)}' for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    items = [pad + "  " + _dump(v, indent + 1) for v in x]
    return "[\n" + ",\n".join(items) + "\n" + pad + "]"


def dumps(obj) -> str:
    return _dump(to_dict(obj), 0) + "\n"


def dump(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


__all__ = ["ParseError", "TripleSpec", "dump", "dumps", "from_dict", "load", "loads",
           "parse_rational", "to_dict"]
