"""Exact LLL reduction of integer lattice bases."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """LLL-reduce linearly independent integer row vectors.

    Works on the Gram matrix with exact rationals, so the cost depends on the
    rank rather than the ambient dimension. The output spans the same lattice
    and is size-reduced (``|mu_ij| <= 1/2``).
    """
    b = [list(map(int, v)) for v in basis]
    k = len(b)
    if k <= 1:
        return b
    gram = [[_dot(b[i], b[j]) for j in range(k)] for i in range(k)]
    mu = [[Fraction(0)] * k for _ in range(k)]
    bstar = [Fraction(0)] * k

    def gso(i):
        for j in range(i):
            s = Fraction(gram[i][j])
            for t in range(j):
                s -= mu[j][t] * mu[i][t] * bstar[t]
            mu[i][j] = s / bstar[j]
        s = Fraction(gram[i][i])
        for t in range(i):
            s -= mu[i][t] ** 2 * bstar[t]
        bstar[i] = s

    def sub(i, j, q):  # b_i -= q b_j
        b[i] = [x - q * y for x, y in zip(b[i], b[j])]
        for t in range(k):
            gram[i][t] = gram[t][i] = _dot(b[i], b[t])

    def swap(i, j):
        b[i], b[j] = b[j], b[i]
        gram[i], gram[j] = gram[j], gram[i]
        for row in gram:
            row[i], row[j] = row[j], row[i]

    gso(0)
    i = 1
    gso(1)
    while i < k:
        for j in range(i - 1, -1, -1):
            q = round(mu[i][j])
            if q:
                sub(i, j, q)
                gso(i)
        if bstar[i] >= (delta - mu[i][i - 1] ** 2) * bstar[i - 1]:
            i += 1
            if i < k:
                gso(i)
        else:
            swap(i, i - 1)
            i = max(i - 1, 1)
            gso(i - 1)
            gso(i)
    return b
