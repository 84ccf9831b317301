"""Codimension-one Anosov automorphisms and their periodic points on T^n."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .exactint import (
    IntMatrix,
    as_matrix,
    determinant,
    eigenvalue_modulus_profile,
    smith_normal_form,
)

EPSILONS = ("a", "r")


class InvariantRejected(ValueError):
    """A value failed certification; ``reason`` names the broken invariant."""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


@dataclass(frozen=True, order=True)
class TorusPoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_mod1(Fraction(c)) for c in self.coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def point(*coords) -> TorusPoint:
    if len(coords) == 1 and not isinstance(coords[0], (int, Fraction, str)):
        coords = tuple(coords[0])
    return TorusPoint(tuple(Fraction(c) for c in coords))


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class AnosovAutomorphism:
    """Matrix plus its label; build certified values with :func:`check_anosov`."""

    matrix: IntMatrix
    epsilon: str

    @property
    def n(self) -> int:
        return self.matrix.n

    def inverse(self) -> "AnosovAutomorphism":
        return check_anosov(self.matrix.inverse(), "r" if self.epsilon == "a" else "a")


def admissible_epsilons(matrix) -> tuple[str, ...]:
    """Labels a hyperbolic unimodular matrix can carry (empty if none)."""
    m = as_matrix(matrix)
    if m.n < 2 or abs(determinant(m)) != 1:
        return ()
    inside, on, outside = eigenvalue_modulus_profile(m)
    if on:
        return ()
    labels = []
    if inside == 1:
        labels.append("a")
    if outside == 1:
        labels.append("r")
    return tuple(labels)


@lru_cache(maxsize=4096)
def _certify(m: IntMatrix, epsilon: str) -> AnosovAutomorphism:
    if epsilon not in EPSILONS:
        raise InvariantRejected("bad-epsilon", f"epsilon must be 'a' or 'r', got {epsilon!r}")
    if m.n < 2:
        raise InvariantRejected("dimension", "Anosov automorphisms need n >= 2")
    d = determinant(m)
    if abs(d) != 1:
        raise InvariantRejected("not-unimodular", f"det = {d}")
    inside, on, outside = eigenvalue_modulus_profile(m)
    if on:
        raise InvariantRejected("not-hyperbolic", f"{on} eigenvalue(s) on the unit circle")
    if inside != 1 and outside != 1:
        raise InvariantRejected(
            "wrong-codimension", f"profile ({inside}, {on}, {outside}) is not codimension one")
    if epsilon == "a" and inside != 1:
        raise InvariantRejected(
            "epsilon-mismatch", f"stable dimension is {inside}, label 'a' needs 1")
    if epsilon == "r" and outside != 1:
        raise InvariantRejected(
            "epsilon-mismatch", f"unstable dimension is {outside}, label 'r' needs 1")
    return AnosovAutomorphism(m, epsilon)


def check_anosov(matrix, epsilon: str) -> AnosovAutomorphism:
    """Certify ``matrix`` as a codimension-one Anosov automorphism labelled ``epsilon``.

    Raises :class:`InvariantRejected` with reason one of ``dimension``,
    ``not-unimodular``, ``not-hyperbolic``, ``wrong-codimension``,
    ``epsilon-mismatch`` or ``bad-epsilon``.
    """
    return _certify(as_matrix(matrix), epsilon)


def certify(a: AnosovAutomorphism) -> AnosovAutomorphism:
    return _certify(a.matrix, a.epsilon)


def apply(z, p: TorusPoint) -> TorusPoint:
    """Image of a torus point under the integer matrix ``z`` (reduced mod 1)."""
    z = as_matrix(z)
    if z.n != p.n:
        raise ValueError(f"dimension mismatch: matrix {z.n}, point {p.n}")
    return TorusPoint(z.matvec(p.coords))


@dataclass(frozen=True)
class PointSet:
    """Finite invariant set of torus points with the least period of each."""

    points: tuple[TorusPoint, ...]
    periods: tuple[int, ...] = field(default=())

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return p in self.points

    def as_set(self) -> frozenset:
        return frozenset(self.points)

    def period_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.periods))


def least_period(matrix: IntMatrix, p: TorusPoint, limit: int | None = None) -> int:
    q = apply(matrix, p)
    k = 1
    while q != p:
        q = apply(matrix, q)
        k += 1
        if limit is not None and k > limit:
            raise ValueError(f"point {p} is not periodic with period <= {limit}")
    return k


def make_point_set(a: AnosovAutomorphism, points: Iterable[TorusPoint],
                   max_period: int | None = None) -> PointSet:
    """Attach least periods; raises if a point repeats or is not periodic."""
    pts = tuple(points)
    if len(set(pts)) != len(pts):
        raise InvariantRejected("duplicate-point", "point list has duplicates")
    periods = tuple(least_period(a.matrix, p, max_period or 10_000) for p in pts)
    image = {apply(a.matrix, p) for p in pts}
    if image != set(pts):
        raise InvariantRejected("not-invariant", "point set is not invariant")
    return PointSet(pts, periods)


def _quotient_points(m: IntMatrix) -> list[TorusPoint]:
    """All x in [0,1)^n with m x integral, through the Smith form of m."""
    snf = smith_normal_form(m)
    d = snf.diagonal
    if any(v == 0 for v in d):
        raise ValueError("matrix is singular; solution set is infinite")
    right = snf.right
    out = []
    for ks in product(*(range(v) for v in d)):
        y = [Fraction(k, v) for k, v in zip(ks, d)]
        out.append(TorusPoint(right.matvec(y)))
    return sorted(out)


def fixed_points(a: AnosovAutomorphism) -> PointSet:
    """Every fixed point of ``a``; there are exactly ``|det(A - I)|`` of them."""
    a = certify(a)
    pts = _quotient_points(a.matrix - IntMatrix.identity(a.n))
    return PointSet(tuple(pts), tuple(1 for _ in pts))


def periodic_points(a: AnosovAutomorphism, m: int) -> PointSet:
    """Fixed points of ``a**m``, each annotated with its least period."""
    if m < 1:
        raise ValueError("period must be positive")
    a = certify(a)
    power = a.matrix ** m
    pts = _quotient_points(power - IntMatrix.identity(a.n))
    return PointSet(tuple(pts), tuple(least_period(a.matrix, p) for p in pts))


def brute_force_fixed_points(matrix, denominator: int) -> list[TorusPoint]:
    """Reference enumeration over the grid (1/denominator) Z^n; test oracle only."""
    m = as_matrix(matrix)
    out = []
    for ks in product(range(denominator), repeat=m.n):
        p = TorusPoint(tuple(Fraction(k, denominator) for k in ks))
        if apply(m, p) == p:
            out.append(p)
    return sorted(out)


def points_from_strings(rows: Sequence[Sequence]) -> list[TorusPoint]:
    return [TorusPoint(tuple(Fraction(c) for c in r)) for r in rows]
