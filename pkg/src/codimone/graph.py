"""Decorated graphs for classes P and M: data model, membership checks, commensurability."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import networkx as nx
from networkx.algorithms import isomorphism

from .conjugacy import (
    DEFAULT_BOUND,
    DEFAULT_BUDGET,
    Status,
    Triple,
    Witness,
    matrix_fingerprint,
)
from .exactint import IntMatrix, as_matrix, determinant
from .manifold import ManifoldDescription
from .matching import Member, match_families
from .torus import (
    AnosovAutomorphism,
    InvariantRejected,
    TorusPoint,
    apply,
    certify,
    make_point_set,
)
from .tube import ValidationReport

VARIANTS = ("P", "M")


def _exact_sqrt(q: Fraction) -> int | None:
    """Non-negative integer square root of ``q`` if it is one, else None."""
    if q < 0 or q.denominator != 1:
        return None
    s = isqrt(q.numerator)
    return s if s * s == q.numerator else None


def pontryagin_admissible(value, n: int) -> tuple[bool, int | None]:
    """Is ``value`` of the form 2(1+2t)^2 (n = 8) or (36/49)(1+2t)^2 (n = 16)?

    On success also returns the canonical t >= 0.
    """
    value = Fraction(value)
    if n == 8:
        sq = value / 2
    elif n == 16:
        sq = value * 49 / 36
    else:
        raise ValueError(f"Pontryagin data only exists for n in (8, 16), got {n}")
    s = _exact_sqrt(sq)
    if s is None or s % 2 == 0:
        return False, None
    return True, (s - 1) // 2


def pontryagin_value(t: int, n: int) -> Fraction:
    base = Fraction((1 + 2 * t) ** 2)
    if n == 8:
        return 2 * base
    if n == 16:
        return Fraction(36, 49) * base
    raise ValueError(f"Pontryagin data only exists for n in (8, 16), got {n}")


# --------------------------------------------------------------------------
# data model

Vertex = tuple[int, int]   # (group index, vertex index inside the group)


@dataclass(frozen=True)
class VertexGroup:
    """A triple (A_i, P_i, eps_i); vertex s of the group is the point ``points[s]``."""

    automorphism: AnosovAutomorphism
    points: tuple[TorusPoint, ...]

    @property
    def epsilon(self) -> str:
        return self.automorphism.epsilon

    @property
    def matrix(self) -> IntMatrix:
        return self.automorphism.matrix

    def __len__(self):
        return len(self.points)

    def triple(self) -> Triple:
        a = certify(self.automorphism)
        return Triple(a, make_point_set(a, self.points))


@dataclass(frozen=True, order=True)
class Edge:
    u: Vertex
    v: Vertex
    marked: bool = False
    pontryagin: Fraction | None = None

    def __post_init__(self):
        u, v = tuple(self.u), tuple(self.v)
        if v < u:
            u, v = v, u
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        if self.pontryagin is not None:
            object.__setattr__(self, "pontryagin", Fraction(self.pontryagin))

    @property
    def key(self) -> tuple[Vertex, Vertex]:
        return (self.u, self.v)

    @property
    def label(self) -> tuple:
        return (self.marked, self.pontryagin)


def _edge_sort_key(e: Edge):
    return (e.u, e.v, e.marked, e.pontryagin or Fraction(0))


@dataclass(frozen=True)
class ClassGraph:
    variant: str
    n: int
    groups: tuple[VertexGroup, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=_edge_sort_key)))

    @property
    def k(self) -> int:
        return len(self.groups)

    @property
    def E(self) -> int:
        return len(self.edges)

    def marked_edges(self) -> list[Edge]:
        return [e for e in self.edges if e.marked]

    def pontryagin(self) -> Fraction | None:
        vals = [e.pontryagin for e in self.marked_edges() if e.pontryagin is not None]
        return vals[0] if len(vals) == 1 else None

    def vertices(self) -> list[Vertex]:
        return [(i, s) for i, g in enumerate(self.groups) for s in range(len(g))]

    def degrees(self) -> Counter:
        deg = Counter({v: 0 for v in self.vertices()})
        for e in self.edges:
            deg[e.u] += 1
            deg[e.v] += 1
        return deg

    def edge_map(self) -> dict:
        return {e.key: e.label for e in self.edges}


# --------------------------------------------------------------------------
# validation


def _connected(k: int, links) -> bool:
    g = nx.Graph()
    g.add_nodes_from(range(k))
    g.add_edges_from(links)
    return k > 0 and nx.is_connected(g)


def validate(graph: ClassGraph) -> ValidationReport:
    """Check membership of ``graph`` in its class, condition by condition."""
    rep = ValidationReport()
    if not rep.add("variant", graph.variant in VARIANTS, f"unknown variant {graph.variant!r}"):
        return rep
    n = graph.n
    if graph.variant == "P":
        rep.add("dimension", n in (8, 16), f"class P needs n in {{8, 16}}, got n = {n}")
    else:
        rep.add("dimension", n >= 3, f"class M needs n >= 3, got n = {n}")
    rep.add("k>=2", graph.k >= 2, f"k = {graph.k}")

    # condition (1): certified triples whose points are fixed
    certified = True
    for i, g in enumerate(graph.groups):
        if g.matrix.n != n:
            certified = False
            rep.add("group-dimension", False, f"group {i}: matrix is {g.matrix.n}x{g.matrix.n}")
            continue
        try:
            certify(g.automorphism)
        except InvariantRejected as exc:
            certified = False
            rep.add("anosov", False, f"group {i}: {exc}")
    if certified:
        rep.add("anosov", True)

    pts_ok = True
    for i, g in enumerate(graph.groups):
        if not g.points:
            pts_ok = False
            rep.add("points", False, f"group {i}: no vertices (l_i = 0)")
            continue
        if len(set(g.points)) != len(g.points):
            pts_ok = False
            rep.add("points", False, f"group {i}: repeated point")
        for s, p in enumerate(g.points):
            if p.n != n:
                pts_ok = False
                rep.add("points", False, f"vertex ({i},{s}): point has {p.n} coordinates")
            elif g.matrix.n == n and apply(g.matrix, p) != p:
                pts_ok = False
                rep.add("points", False, f"vertex ({i},{s}): {p} is not fixed by A_{i}")
    if pts_ok:
        rep.add("points", True)

    eps = [g.epsilon for g in graph.groups]
    rep.add("cond1-labels", "a" in eps and "r" in eps,
            f"labels {''.join(eps)} need both a and r")

    verts = set(graph.vertices())
    bad = [e for e in graph.edges if e.u not in verts or e.v not in verts or e.u[0] == e.v[0]]
    if not rep.add("edges", not bad and len({e.key for e in graph.edges}) == graph.E,
                   f"bad or repeated edge {bad[0].key if bad else ''}".strip()):
        return rep

    deg = graph.degrees()
    marked = graph.marked_edges()
    if graph.variant == "P":
        wrong = sorted(v for v, d in deg.items() if d != 1)
        rep.add("cond2-degree", not wrong,
                f"vertex {wrong[0] if wrong else ''} has degree {deg[wrong[0]] if wrong else ''}")
        ok = len(marked) == 1
        rep.add("marked", ok, f"class P needs exactly one marked edge, found {len(marked)}")
        if ok:
            val = marked[0].pontryagin
            if val is None:
                rep.add("cond2-pontryagin", False, "marked edge carries no Pontryagin number")
            elif n in (8, 16):
                adm, _ = pontryagin_admissible(val, n)
                rep.add("cond2-pontryagin", adm, f"value {val} not admissible for n = {n}")
        stray = [e for e in graph.edges if not e.marked and e.pontryagin is not None]
        if stray:
            rep.add("pontryagin-placement", False, f"unmarked edge {stray[0].key} has a value")
    else:
        twos = sorted(v for v, d in deg.items() if d == 2)
        wrong = sorted(v for v, d in deg.items() if d not in (1, 2))
        rep.add("cond2-degree", not wrong and len(twos) == 1,
                (f"vertex {wrong[0]} has degree {deg[wrong[0]]}" if wrong
                 else f"need exactly one middle vertex of degree 2, found {len(twos)}"))
        ok = (len(marked) == 2 and len(twos) == 1
              and all(twos[0] in (e.u, e.v) for e in marked))
        rep.add("marked", ok, "class M needs two marked edges meeting at the middle vertex")
        vals = [e for e in graph.edges if e.pontryagin is not None]
        rep.add("no-pontryagin", not vals, "class M carries no Pontryagin number")

    clash = [e for e in graph.edges if eps[e.u[0]] == eps[e.v[0]]]
    rep.add("cond3-labels", not clash,
            f"edge {clash[0].key if clash else ''} joins two groups labelled "
            f"{eps[clash[0].u[0]] if clash else ''}")
    rep.add("cond4-connected", _connected(graph.k, [(e.u[0], e.v[0]) for e in graph.edges]),
            "group graph is disconnected")

    if certified:
        signs = [determinant(g.matrix) for g in graph.groups]
        if graph.variant == "P":
            neg = [i for i, d in enumerate(signs) if d < 0]
            rep.add("cond5-determinants", not neg, f"det A_{neg[0] if neg else ''} < 0")
        else:
            rep.add("cond5-determinants", len(set(signs)) <= 1,
                    f"determinant signs {signs} differ")
    return rep


def degree_balance(graph: ClassGraph) -> bool:
    total = sum(len(g) for g in graph.groups)
    extra = 1 if graph.variant == "M" else 0
    return total + extra == 2 * graph.E


# --------------------------------------------------------------------------
# commensurability


@dataclass(frozen=True)
class GraphVerdict:
    status: Status
    certificate: str | None = None
    permutation: tuple[int, ...] | None = None
    witnesses: tuple[Witness, ...] | None = None
    sign: int | None = None
    search_bound: int | None = None
    truncated: bool = False

    def __bool__(self):
        return self.status is Status.YES

    def vertex_map(self) -> dict[Vertex, Vertex]:
        out = {}
        if self.permutation is None:
            return out
        for i, (j, w) in enumerate(zip(self.permutation, self.witnesses)):
            for s, t in enumerate(w.point_map or ()):
                out[(i, s)] = (j, t)
        return out


def group_fingerprint(g: VertexGroup) -> tuple:
    ps = g.triple().points
    return matrix_fingerprint(g.matrix) + (g.epsilon, len(g), ps.period_multiset())


def _labelled(graph: ClassGraph, fps) -> nx.Graph:
    h = nx.Graph()
    for i, fp in enumerate(fps):
        h.add_node(("g", i), label=("group", fp))
    for i, s in graph.vertices():
        h.add_node(("v", i, s), label=("vertex",))
        h.add_edge(("g", i), ("v", i, s), label=("member",))
    for e in graph.edges:
        h.add_edge(("v",) + e.u, ("v",) + e.v, label=("edge",) + e.label)
    return h


def _same_label(x, y):
    return x["label"] == y["label"]


def commensurability_certificate(g1: ClassGraph, g2: ClassGraph, fp1=None, fp2=None) -> str | None:
    if g1.k != g2.k:
        return "k"
    if g1.E != g2.E:
        return "edge-count"
    if g1.variant == "P" and g1.pontryagin() != g2.pontryagin():
        return "pontryagin"
    fp1 = fp1 or [group_fingerprint(g) for g in g1.groups]
    fp2 = fp2 or [group_fingerprint(g) for g in g2.groups]
    if Counter(fp[3] for fp in fp1) != Counter(fp[3] for fp in fp2):
        return "epsilon"
    if Counter(fp[0] for fp in fp1) != Counter(fp[0] for fp in fp2):
        return "charpoly-multiset"
    if Counter(fp1) != Counter(fp2):
        return "group-fingerprints"
    gm = isomorphism.GraphMatcher(_labelled(g1, fp1), _labelled(g2, fp2),
                                  node_match=_same_label, edge_match=_same_label)
    if not gm.is_isomorphic():
        return "edge-structure"
    return None


def _first_failure(g: ClassGraph):
    rep = validate(g)
    return None if rep.ok else rep.failures()[0]


def decide_commensurable(g1: ClassGraph, g2: ClassGraph, bound: int = DEFAULT_BOUND,
                         budget: int | None = DEFAULT_BUDGET) -> GraphVerdict:
    """Commensurability of two graphs of the same variant, up to relabeling.

    If exactly one graph passes :func:`validate` the answer is NO (membership
    is preserved by commensurability); if neither does, InvariantRejected.

    A YES verdict carries the group bijection and one witness per group; each
    witness's point map gives the induced vertex bijection inside its group.
    """
    if g1.variant != g2.variant:
        raise ValueError(f"variant mismatch: {g1.variant} vs {g2.variant}")
    if g1.n != g2.n:
        raise ValueError(f"dimension mismatch: {g1.n} vs {g2.n}")
    bad1, bad2 = _first_failure(g1), _first_failure(g2)
    if bad1 and bad2:
        raise InvariantRejected("invalid-graph",
                                f"neither graph is valid ({bad1.name}; {bad2.name})")
    if bad1 or bad2:
        # every membership condition survives commensurability
        bad = bad1 or bad2
        return GraphVerdict(Status.NO, certificate=f"validity:{bad.name}")
    fp1 = [group_fingerprint(g) for g in g1.groups]
    fp2 = [group_fingerprint(g) for g in g2.groups]
    cert = commensurability_certificate(g1, g2, fp1, fp2)
    if cert:
        return GraphVerdict(Status.NO, certificate=cert)
    fam1 = [Member(certify(g.automorphism), g.points, fp) for g, fp in zip(g1.groups, fp1)]
    fam2 = [Member(certify(g.automorphism), g.points, fp) for g, fp in zip(g2.groups, fp2)]
    rule = "positive" if g1.variant == "P" else "same"
    m = match_families(fam1, fam2, bound, rule, g1.edge_map(), g2.edge_map(), budget)
    if m.status is Status.YES:
        return GraphVerdict(Status.YES, permutation=m.permutation, witnesses=m.witnesses,
                            sign=m.sign)
    return GraphVerdict(Status.UNKNOWN, search_bound=bound, truncated=m.truncated)


def genus(graph: ClassGraph) -> int:
    return graph.E - graph.k + 1


def manifold_of_graph(graph: ClassGraph) -> ManifoldDescription:
    p = graph.pontryagin() if graph.variant == "P" else None
    return ManifoldDescription(graph.n, graph.k, genus(graph), p)


def make_group(matrix, epsilon: str, points) -> VertexGroup:
    return VertexGroup(AnosovAutomorphism(as_matrix(matrix), epsilon), tuple(points))
