"""Deterministic random instances: automorphisms, tubes, graphs and relabelled copies.

Codimension-one automorphisms come from companion matrices of polynomials
x^n + a x^m + (small terms) with constant term +-1.  When |a| beats the sum
of the other coefficients' absolute values plus one, Rouche puts exactly m roots inside the unit
disk, so m = 1 gives label a and m = n - 1 gives label r.  Companions are
then conjugated by a random unimodular matrix to hide their shape.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exactint import IntMatrix
from .graph import ClassGraph, Edge, VertexGroup, pontryagin_value
from .torus import AnosovAutomorphism, apply, check_anosov, fixed_points
from .tube import KTube, SInvariant


def companion(coeffs) -> IntMatrix:
    """Companion matrix of the monic polynomial with descending ``coeffs``."""
    c = list(coeffs)
    n = len(c) - 1
    if n < 1 or c[0] != 1:
        raise ValueError("need a monic polynomial of degree >= 1")
    rows = [[int(j == i + 1) for j in range(n)] for i in range(n - 1)]
    rows.append([-c[n - j] for j in range(n)])
    return IntMatrix(rows)


def random_unimodular(rng: random.Random, n: int, sign: int = 1, steps: int | None = None,
                      max_entry: int = 3) -> IntMatrix:
    """Product of random transvections (and a permutation) with entries bounded by ``max_entry``."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [rows[p] for p in perm]
    steps = steps if steps is not None else 2 * n
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        e = rng.choice((-1, 1))
        new = [x + e * y for x, y in zip(rows[i], rows[j])]
        if max(abs(x) for x in new) <= max_entry:
            rows[i] = new
    z = IntMatrix(rows)
    if z.det() != sign:
        rows[0] = [-x for x in rows[0]]
        z = IntMatrix(rows)
    return z


def random_codim_one(rng: random.Random, n: int, epsilon: str, det_sign: int = 1,
                     min_fixed: int = 1, conjugate: bool = True) -> AnosovAutomorphism:
    """A certified codimension-one automorphism with at least ``min_fixed`` fixed points."""
    m = n - 1 if epsilon == "r" else 1
    while True:
        c = [0] * (n + 1)            # ascending, c[n] = 1
        c[n] = 1
        c[0] = det_sign * (-1) ** n  # det(companion) = (-1)^n p(0)
        for j in range(1, n):
            if j != m and rng.random() < 0.4:
                c[j] = rng.choice((-1, 1))
        rest = sum(abs(x) for j, x in enumerate(c[:n]) if j != m)
        a = 1 + rest + rng.randint(1, 2) + max(0, min_fixed - 1)
        c[m] = a * rng.choice((-1, 1))
        if abs(sum(c)) < min_fixed:
            continue
        mat = companion(c[::-1])
        if conjugate:
            z = random_unimodular(rng, n, steps=min(2 * n, 6), max_entry=2)
            mat = z @ mat @ z.inverse()
        return check_anosov(mat, epsilon)


def conjugate_by(a: AnosovAutomorphism, z: IntMatrix) -> AnosovAutomorphism:
    return check_anosov(z @ a.matrix @ z.inverse(), a.epsilon)


# --------------------------------------------------------------------------
# class S


def random_S(rng: random.Random, n: int, k: int) -> SInvariant:
    if k < 2:
        raise ValueError("class S needs k >= 2")
    tu = rng.choice(sorted({1, k - 1}))
    labels = ["r"] * tu + ["a"] * (k - tu)
    rng.shuffle(labels)
    if k == 2:
        branch = rng.choice(("sink", "source"))
    else:
        branch = "sink" if tu == 1 else "source"
    extra = max(0, 3 - k) + rng.randint(0, 2)
    a, b = (extra, 0) if branch == "sink" else (0, extra)
    c = k + a + b - 2
    sign = rng.choice((-1, 1))
    autos = tuple(random_codim_one(rng, n, e, sign) for e in labels)
    return SInvariant(KTube(autos), a, b, c)


def copy_S(rng: random.Random, s: SInvariant) -> SInvariant:
    """Shuffle the tube and conjugate every member by matrices of one common sign."""
    sign = rng.choice((-1, 1))
    order = list(range(s.k))
    rng.shuffle(order)
    autos = tuple(conjugate_by(s.tube.autos[i], random_unimodular(rng, s.n, sign))
                  for i in order)
    a, b = s.a, s.b
    if s.k == 2 and rng.random() < 0.5:
        a, b = b, a
    return SInvariant(KTube(autos), a, b, s.c)


# --------------------------------------------------------------------------
# classes P and M


def _split(rng: random.Random, total: int, parts: int) -> list[int]:
    """Random composition of ``total`` into ``parts`` positive integers."""
    cuts = sorted(rng.sample(range(1, total), parts - 1)) if parts > 1 else []
    bounds = [0] + cuts + [total]
    return [bounds[i + 1] - bounds[i] for i in range(parts)]


def random_graph(rng: random.Random, variant: str, n: int, k: int,
                 max_vertices: int = 12) -> ClassGraph:
    """A member of the class-P or class-M graph set with ``sum l_i <= max_vertices``."""
    if variant not in ("P", "M"):
        raise ValueError(f"unknown variant {variant!r}")
    if k < 2:
        raise ValueError("graphs need k >= 2")
    labels = ["a", "r"] + [rng.choice("ar") for _ in range(k - 2)]
    rng.shuffle(labels)
    side = {e: [i for i, x in enumerate(labels) if x == e] for e in "ar"}
    extra = 1 if variant == "M" else 0
    # side X holds the middle vertex (M only); |Y| = |X| + extra vertices
    x_lab = rng.choice("ar")
    y_lab = "r" if x_lab == "a" else "a"
    nx_, ny_ = len(side[x_lab]), len(side[y_lab])
    lo = max(nx_, ny_ - extra, k - 1 - extra, 1)
    hi = (max_vertices - extra) // 2
    if lo > hi:
        raise ValueError(f"k = {k} does not fit into {max_vertices} vertices")
    sizes = [0] * k
    for _ in range(1000):
        mx = rng.randint(lo, hi)
        for lab, total in ((x_lab, mx), (y_lab, mx + extra)):
            for g, l in zip(side[lab], _split(rng, total, len(side[lab]))):
                sizes[g] = l
        x_verts = [(g, s) for g in side[x_lab] for s in range(sizes[g])]
        y_verts = [(g, s) for g in side[y_lab] for s in range(sizes[g])]
        middle = rng.choice(x_verts) if variant == "M" else None
        stubs = x_verts + ([middle] if middle else [])
        rng.shuffle(y_verts)
        pairs = list(zip(stubs, y_verts))
        groups_linked = {(u[0], v[0]) for u, v in pairs}
        if _is_connected(k, groups_linked):
            break
    else:  # pragma: no cover - the retry loop practically always succeeds
        raise RuntimeError("could not build a connected graph")
    sign = 1 if variant == "P" else rng.choice((-1, 1))
    groups = []
    for g in range(k):
        a = random_codim_one(rng, n, labels[g], sign, min_fixed=sizes[g])
        fps = list(fixed_points(a))
        pts = rng.sample(fps, sizes[g])
        groups.append(VertexGroup(a, tuple(pts)))
    edges = []
    if variant == "P":
        mark = rng.randrange(len(pairs))
        value = pontryagin_value(rng.randint(0, 5), n)
        for i, (u, v) in enumerate(pairs):
            edges.append(Edge(u, v, i == mark, value if i == mark else None))
    else:
        for u, v in pairs:
            edges.append(Edge(u, v, u == middle))
    return ClassGraph(variant, n, tuple(groups), tuple(edges))


def _is_connected(k: int, links) -> bool:
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in links:
        parent[find(u)] = find(v)
    return len({find(x) for x in range(k)}) == 1


def copy_graph(rng: random.Random, g: ClassGraph) -> ClassGraph:
    """Relabel groups and vertices and conjugate every triple.

    Determinants of the conjugating matrices are positive for P and share one
    random sign for M, so the copy is commensurable with ``g`` by construction.
    """
    sign = 1 if g.variant == "P" else rng.choice((-1, 1))
    order = list(range(g.k))
    rng.shuffle(order)
    groups, vmap = [], {}
    for new, old in enumerate(order):
        grp = g.groups[old]
        z = random_unimodular(rng, g.n, sign)
        a = conjugate_by(grp.automorphism, z)
        perm = list(range(len(grp)))
        rng.shuffle(perm)
        pts = tuple(apply(z, grp.points[s]) for s in perm)
        for t, s in enumerate(perm):
            vmap[(old, s)] = (new, t)
        groups.append(VertexGroup(a, pts))
    edges = [Edge(vmap[e.u], vmap[e.v], e.marked, e.pontryagin) for e in g.edges]
    return ClassGraph(g.variant, g.n, tuple(groups), tuple(edges))


def with_pontryagin(g: ClassGraph, value) -> ClassGraph:
    edges = [Edge(e.u, e.v, e.marked, Fraction(value) if e.marked else None) for e in g.edges]
    return ClassGraph(g.variant, g.n, g.groups, tuple(edges))


def generate(kind: str, n: int, k: int, seed: int, copy: bool = False):
    """Entry point used by the command line: one instance, or its relabelled copy."""
    rng = random.Random(seed)
    if kind == "S":
        obj = random_S(rng, n, k)
        return copy_S(rng, obj) if copy else obj
    if kind == "P" and n not in (8, 16):
        raise ValueError("class P instances only exist for n in {8, 16}")
    obj = random_graph(rng, kind, n, k)
    return copy_graph(rng, obj) if copy else obj
