"""Symbolic realization: blocks (DA-modified tori) glued along connector regions.

A block is a torus with one deleted disk per surgery point, so its boundary
spheres are indexed by its point list.  Connectors glue those spheres:

* ``annulus``      two ends, an unmarked edge
* ``projective``   two ends, the marked edge of class P (carries the Pontryagin number)
* ``saddle``       three ends ``(x, middle, y)``, the marked Y of class M
* ``morse-smale``  one end per block, the class-S region with counts (a, b, c)

Nothing here is smooth; the data is exactly what the invariants determine.
The class M recipe is an extrapolation of the class P one (a saddle region
with three boundary spheres in place of the projective piece) rather than a
worked-out construction.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .graph import ClassGraph, Edge, VertexGroup, validate
from .torus import AnosovAutomorphism, InvariantRejected, TorusPoint
from .tube import KTube, SInvariant, validate_S

ARITY = {"annulus": 2, "projective": 2, "saddle": 3}


class MalformedSystem(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    automorphism: AnosovAutomorphism
    points: tuple[TorusPoint, ...]

    @property
    def spheres(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Connector:
    kind: str
    ends: tuple[tuple[int, int], ...]
    pontryagin: Fraction | None = None
    counts: tuple[int, int, int] | None = None  # (a, b, c) for morse-smale


@dataclass(frozen=True)
class RealizedSystem:
    source: str  # "S", "P" or "M"
    n: int
    blocks: tuple[Block, ...]
    connectors: tuple[Connector, ...]

    def report(self) -> list[str]:
        lines = [f"source: {self.source}", f"n: {self.n}", f"blocks: {len(self.blocks)}"]
        for i, b in enumerate(self.blocks):
            lines.append(f"block {i}: epsilon={b.automorphism.epsilon} spheres={b.spheres} "
                         f"matrix={b.automorphism.matrix}")
        lines.append(f"connectors: {len(self.connectors)}")
        for c in self.connectors:
            ends = " ".join(f"{b}.{s}" for b, s in c.ends)
            extra = ""
            if c.pontryagin is not None:
                extra = f" pontryagin={c.pontryagin}"
            if c.counts is not None:
                extra = " a={} b={} c={}".format(*c.counts)
            lines.append(f"connector {c.kind}: {ends}{extra}")
        return lines


def _reject(report, what):
    bad = report.failures()[0]
    raise InvariantRejected(bad.name, f"{what} is not realizable: {bad.detail}".strip())


def realize(invariant: SInvariant | ClassGraph) -> RealizedSystem:
    """Materialize the gluing data of a system realizing ``invariant``."""
    if isinstance(invariant, SInvariant):
        rep = validate_S(invariant)
        if not rep.ok:
            _reject(rep, "S invariant")
        s = invariant
        origin = TorusPoint((Fraction(0),) * s.n)
        blocks = tuple(Block(a, (origin,)) for a in s.tube)
        region = Connector("morse-smale", tuple((i, 0) for i in range(s.k)),
                           counts=(s.a, s.b, s.c))
        return RealizedSystem("S", s.n, blocks, (region,))

    g = invariant
    rep = validate(g)
    if not rep.ok:
        _reject(rep, f"class {g.variant} graph")
    blocks = tuple(Block(grp.automorphism, grp.points) for grp in g.groups)
    connectors = [Connector("annulus", (e.u, e.v)) for e in g.edges if not e.marked]
    marked = g.marked_edges()
    if g.variant == "P":
        e = marked[0]
        connectors.append(Connector("projective", (e.u, e.v), pontryagin=e.pontryagin))
    else:
        e1, e2 = marked
        middle = ({e1.u, e1.v} & {e2.u, e2.v}).pop()
        x = e1.v if e1.u == middle else e1.u
        y = e2.v if e2.u == middle else e2.u
        connectors.append(Connector("saddle", (x, middle, y)))
    return RealizedSystem(g.variant, g.n, blocks, tuple(connectors))


def check_gluing(sys: RealizedSystem):
    """Every boundary sphere is used by exactly one connector end."""
    if not sys.blocks:
        raise MalformedSystem("system has no blocks")
    uses = Counter()
    for ci, c in enumerate(sys.connectors):
        want = ARITY.get(c.kind)
        if c.kind == "morse-smale":
            want = len(sys.blocks)
        if want is None:
            raise MalformedSystem(f"connector {ci}: unknown kind {c.kind!r}")
        if len(c.ends) != want:
            raise MalformedSystem(f"connector {ci} ({c.kind}): {len(c.ends)} ends, expected {want}")
        for b, s in c.ends:
            if not (0 <= b < len(sys.blocks)) or not (0 <= s < sys.blocks[b].spheres):
                raise MalformedSystem(f"connector {ci}: end {b}.{s} does not exist")
            uses[(b, s)] += 1
    for b, blk in enumerate(sys.blocks):
        for s in range(blk.spheres):
            if uses[(b, s)] != 1:
                state = "unused" if uses[(b, s)] == 0 else f"used {uses[(b, s)]} times"
                raise MalformedSystem(f"boundary sphere {b}.{s} is {state}")
    kinds = Counter(c.kind for c in sys.connectors)
    special = {"S": "morse-smale", "P": "projective", "M": "saddle"}.get(sys.source)
    if special is None:
        raise MalformedSystem(f"unknown source class {sys.source!r}")
    allowed = {special} if sys.source == "S" else {special, "annulus"}
    if kinds[special] != 1 or set(kinds) - allowed:
        raise MalformedSystem(f"class {sys.source} needs exactly one {special} region"
                              f"{'' if sys.source == 'S' else ' plus annuli'}, got {dict(kinds)}")


def extract_invariant(sys: RealizedSystem) -> SInvariant | ClassGraph:
    """Read the invariant back off a realized system."""
    check_gluing(sys)
    if sys.source == "S":
        region = sys.connectors[0]
        if region.counts is None:
            raise MalformedSystem("morse-smale region carries no counts")
        a, b, c = region.counts
        return SInvariant(KTube(tuple(blk.automorphism for blk in sys.blocks)), a, b, c)
    groups = tuple(VertexGroup(blk.automorphism, blk.points) for blk in sys.blocks)
    edges = []
    for c in sys.connectors:
        if c.kind == "annulus":
            edges.append(Edge(c.ends[0], c.ends[1]))
        elif c.kind == "projective":
            edges.append(Edge(c.ends[0], c.ends[1], True, c.pontryagin))
        else:
            x, middle, y = c.ends
            edges += [Edge(x, middle, True), Edge(middle, y, True)]
    return ClassGraph(sys.source, sys.n, groups, tuple(edges))
