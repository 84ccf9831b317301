"""Independent reference computations used only by the tests.

Nothing here shares code with the library: determinants by Leibniz
expansion, eigenvalue moduli from numpy roots with a safety margin, fixed
points by grid enumeration, and first Betti numbers from a gluing multigraph.
"""

from fractions import Fraction
from itertools import permutations, product

import numpy as np


def leibniz_det(rows):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term *= rows[i][perm[i]]
        total += -term if inv % 2 else term
    return total


def charpoly_by_interpolation(rows):
    """det(xI - A) evaluated at n+1 integers, then exact Lagrange interpolation."""
    n = len(rows)
    xs = list(range(n + 1))
    ys = [leibniz_det([[(x if i == j else 0) - rows[i][j] for j in range(n)] for i in range(n)])
          for x in xs]
    coeffs = [Fraction(0)] * (n + 1)  # ascending
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            den *= xi - xj
        for t in range(n + 1):
            coeffs[t] += ys[i] * basis[t] / den
    assert all(c.denominator == 1 for c in coeffs)
    return [int(c) for c in reversed(coeffs)]


def numeric_profile(rows, margin=1e-3):
    """(inside, on, outside) from floating roots, or None when too close to call.

    Repeated roots move by about eps**(1/n) under rounding, hence the wide margin.
    """
    roots = np.linalg.eigvals(np.array(rows, dtype=float))
    mods = np.abs(roots)
    if np.any(np.abs(mods - 1) < margin):
        return None
    return int((mods < 1).sum()), 0, int((mods > 1).sum())


def grid_fixed_points(rows, q):
    """Fixed points of x -> A x mod 1 on the grid (1/q) Z^n, brute force."""
    n = len(rows)
    out = set()
    for ks in product(range(q), repeat=n):
        img = [sum(rows[i][j] * ks[j] for j in range(n)) % q for i in range(n)]
        if tuple(img) == ks:
            out.add(tuple(Fraction(k, q) for k in ks))
    return out


def unimodular_2x2(limit):
    for a, b, c, d in product(range(-limit, limit + 1), repeat=4):
        if abs(a * d - b * c) == 1:
            yield ((a, b), (c, d))


def gluing_betti(graph_groups, edges, variant):
    """First Betti number of the piece-gluing multigraph.

    Nodes: one per torus plus one saddle node.  Unmarked edges join two torus
    nodes; the marked region becomes legs from the saddle node (two for P,
    three for M).  b1 = #edges - rank of the incidence matrix.
    """
    k = len(graph_groups)
    saddle = k
    links = []
    marked_vertices = set()
    for (u, v, marked) in edges:
        if marked:
            marked_vertices.update([u, v])
        else:
            links.append((u[0], v[0]))
    legs = [(saddle, g) for g, _ in sorted(marked_vertices)]
    if variant == "P":
        assert len(legs) == 2
    else:
        assert len(legs) == 3
    links += legs
    inc = np.zeros((k + 1, len(links)))
    for j, (a, b) in enumerate(links):
        if a == b:
            continue  # a loop adds a cycle and leaves the rank alone
        inc[a, j] += 1
        inc[b, j] -= 1
    rank = np.linalg.matrix_rank(inc) if links else 0
    return len(links) - rank


def random_anosov_rows(rng, n, entry):
    """Rejection-sample an integer matrix whose numeric profile is hyperbolic and codim one.

    The sampler itself uses floating point; callers certify exactly.
    """
    while True:
        rows = [[rng.randint(-entry, entry) for _ in range(n)] for _ in range(n)]
        if abs(round(np.linalg.det(np.array(rows, dtype=float)))) != 1:
            continue
        if abs(leibniz_det(rows)) != 1:
            continue
        prof = numeric_profile(rows)
        if prof is None or prof[1]:
            continue
        if prof[0] == 1 or prof[2] == 1:
            return rows, prof
