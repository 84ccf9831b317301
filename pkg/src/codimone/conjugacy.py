"""GL(n, Z) conjugacy of Anosov automorphisms and Plykin-Grines triples.

Decisions are three-valued.  ``NO`` always carries an exactly checkable
GL(n, Z) invariant that differs; ``YES`` carries a witness that is
re-verified after the search; ``UNKNOWN`` means the coefficient box of the
requested bound (or the work budget, whichever ran out first) was exhausted
without a witness.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterator, Sequence

import numpy as np

from .exactint import (
    IntMatrix,
    _bareiss,
    _smith,
    as_matrix,
    char_poly,
    determinant,
    integer_kernel,
    rational_inverse,
    smith_normal_form,
)
from .lattice import lll_reduce
from .torus import AnosovAutomorphism, PointSet, TorusPoint, apply, certify

DEFAULT_BOUND = 10
# coefficient vectors visited per pair before giving up; None means the full box
DEFAULT_BUDGET = 400_000


class Status(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SignConstraint:
    """Admissible determinant signs for a conjugating matrix.

    ``mode`` is one of ``any``, ``positive``, ``negative`` or ``same``; for
    ``same`` the partner sign (if already fixed) is stored in ``partner``.
    """

    mode: str = "any"
    partner: int | None = None

    def __post_init__(self):
        if self.mode not in ("any", "positive", "negative", "same"):
            raise ValueError(f"unknown sign mode {self.mode!r}")

    @classmethod
    def same_as(cls, partner: int | None) -> "SignConstraint":
        return cls("same", partner)

    def allows(self, sign: int) -> bool:
        if self.mode == "positive":
            return sign > 0
        if self.mode == "negative":
            return sign < 0
        if self.mode == "same":
            return self.partner is None or sign == self.partner
        return True


ANY = SignConstraint("any")
POSITIVE = SignConstraint("positive")
NEGATIVE = SignConstraint("negative")


@dataclass(frozen=True)
class Triple:
    """Plykin-Grines invariant ``(A, P, epsilon)`` of one basic set."""

    automorphism: AnosovAutomorphism
    points: PointSet

    @property
    def epsilon(self) -> str:
        return self.automorphism.epsilon

    @property
    def matrix(self) -> IntMatrix:
        return self.automorphism.matrix


@dataclass(frozen=True)
class Witness:
    matrix: IntMatrix
    sign: int
    point_map: tuple[int, ...] | None = None


@dataclass(frozen=True)
class ConjugacyVerdict:
    status: Status
    witness: IntMatrix | None = None
    certificate: str | None = None
    achievable_signs: frozenset = field(default_factory=frozenset)
    search_bound: int | None = None
    point_map: tuple[int, ...] | None = None
    truncated: bool = False  # UNKNOWN because the budget ran out before the box did

    def __bool__(self):
        return self.status is Status.YES


# --------------------------------------------------------------------------
# certificates


@lru_cache(maxsize=4096)
def matrix_fingerprint(m: IntMatrix) -> tuple:
    """Cheap GL(n, Z) conjugacy invariants of a matrix."""
    ident = IntMatrix.identity(m.n)
    return (
        tuple(char_poly(m)),
        smith_normal_form(m - ident).diagonal,
        smith_normal_form(m + ident).diagonal,
    )


def conjugacy_certificate(a: AnosovAutomorphism, b: AnosovAutomorphism) -> str | None:
    """Name of an invariant separating ``a`` from ``b``, or ``None``."""
    if a.n != b.n:
        return "dimension"
    fa, fb = matrix_fingerprint(a.matrix), matrix_fingerprint(b.matrix)
    if fa[0] != fb[0]:
        return "charpoly"
    if fa[1] != fb[1]:
        return "snf(A-I)"
    if fa[2] != fb[2]:
        return "snf(A+I)"
    if a.epsilon != b.epsilon:
        return "epsilon"
    return None


def triple_certificate(t1: Triple, t2: Triple) -> str | None:
    if t1.epsilon != t2.epsilon:
        return "epsilon"
    if len(t1.points) != len(t2.points):
        return "point-count"
    if t1.points.period_multiset() != t2.points.period_multiset():
        return "periods"
    return conjugacy_certificate(t1.automorphism, t2.automorphism)


# --------------------------------------------------------------------------
# intertwiners


def _krylov(m: IntMatrix, v: Sequence) -> list[list]:
    cols = [tuple(v)]
    for _ in range(m.n - 1):
        cols.append(m.matvec(cols[-1]))
    return [list(r) for r in zip(*cols)]


def _cyclic_intertwiners(a: IntMatrix, b: IntMatrix) -> list[IntMatrix] | None:
    """Intertwiner lattice through a cyclic vector of ``a`` (equal char polys)."""
    n = a.n
    candidates = [[int(i == j) for i in range(n)] for j in range(n)]
    candidates.append([1] * n)
    candidates.append(list(range(1, n + 1)))
    for v in candidates:
        ka = _krylov(a, v)
        if _bareiss(ka) != 0:
            break
    else:
        return None
    ka_inv = rational_inverse(ka)
    # only the saturation of the column lattice matters, so clear denominators once
    den = lcm(*(Fraction(x).denominator for row in ka_inv for x in row))
    ka_int = [[int(x * den) for x in row] for row in ka_inv]
    # Z_w = K_b(w) K_a(v)^{-1}; column j of ``cols`` is den * vec(Z_{e_j})
    cols = []
    for j in range(n):
        kb = _krylov(b, [int(i == j) for i in range(n)])
        z = [[sum(kb[r][t] * ka_int[t][c] for t in range(n)) for c in range(n)] for r in range(n)]
        cols.append([x for row in z for x in row])
    g = gcd(*(x for col in cols for x in col)) or 1
    mat = [[cols[j][i] // g for j in range(n)] for i in range(n * n)]
    diag, _, right = _smith(mat)
    basis = []
    for i, d in enumerate(diag):
        vec = [sum(mat[r][t] * right[t][i] for t in range(n)) // d for r in range(n * n)]
        basis.append(vec)
    return basis


def _general_intertwiners(a: IntMatrix, b: IntMatrix) -> list[list[int]]:
    n = a.n
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for c in range(n):
                row[i * n + c] += a[c, j]
                row[c * n + j] -= b[i, c]
            rows.append(row)
    return integer_kernel(rows)


@lru_cache(maxsize=1024)
def _intertwiner_vectors(a: IntMatrix, b: IntMatrix) -> tuple[tuple[int, ...], ...]:
    basis = None
    if char_poly(a) == char_poly(b):
        basis = _cyclic_intertwiners(a, b)
    if basis is None:
        basis = _general_intertwiners(a, b)
    if not basis:
        return ()
    return tuple(tuple(v) for v in lll_reduce(basis))


def intertwiner_basis(a, b) -> list[IntMatrix]:
    """LLL-reduced basis of the integer matrices ``Z`` with ``Z a = b Z``."""
    a, b = as_matrix(a), as_matrix(b)
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    n = a.n
    return [IntMatrix([v[i * n:(i + 1) * n] for i in range(n)])
            for v in _intertwiner_vectors(a, b)]


# --------------------------------------------------------------------------
# witness enumeration


def _shell(r: int, s: int, bound: int) -> list[tuple[int, ...]]:
    """Coefficient vectors with l1-norm ``s`` and entries in [-bound, bound], lex order."""
    if r == 0:
        return [()] if s == 0 else []
    out = []
    top = min(bound, s)
    for c in range(-top, top + 1):
        rest = s - abs(c)
        if rest > (r - 1) * bound:
            continue
        for tail in _shell(r - 1, rest, bound):
            out.append((c,) + tail)
    return out


def _witness_key(w: Witness):
    flat = w.matrix.flat()
    return (sum(x * x for x in flat), tuple(-x for x in flat))


class WitnessSearch:
    """Lazy enumeration of unimodular intertwiners, one l1 shell at a time.

    Coefficient vectors over the LLL-reduced intertwiner basis are visited
    by increasing l1-norm inside the box ``[-bound, bound]^r``.  Each call of
    :meth:`next_shell` returns the witnesses of one shell sorted canonically
    (smaller Frobenius norm first, then lexicographically larger entries).
    When ``source``/``target`` point lists are given, only witnesses mapping
    one onto the other are kept and each carries the induced index map.
    """

    def __init__(self, a: IntMatrix, b: IntMatrix, bound: int,
                 source: Sequence[TorusPoint] | None = None,
                 target: Sequence[TorusPoint] | None = None,
                 budget: int | None = None):
        self.a, self.b, self.bound = a, b, bound
        self.budget = budget
        self.visited = 0
        self.truncated = False
        self.n = a.n
        self._vectors = None
        self.source = list(source) if source is not None else None
        self.target = list(target) if target is not None else None
        self._target_index = ({p: i for i, p in enumerate(self.target)}
                              if self.target is not None else None)
        self.level = 0

    @property
    def vectors(self) -> tuple[tuple[int, ...], ...]:
        # built on first use: the identity shortcut at level 0 does not need it
        if self._vectors is None:
            self._vectors = _intertwiner_vectors(self.a, self.b)
            self._maxabs = max((abs(x) for v in self._vectors for x in v), default=0)
        return self._vectors

    @property
    def r(self) -> int:
        return len(self.vectors)

    @property
    def exhausted(self) -> bool:
        if self.truncated:
            return True
        if self.level == 0:
            return False
        return self.r == 0 or self.level > self.r * self.bound

    def _point_map(self, z: IntMatrix):
        if self.source is None:
            return None
        out = []
        for p in self.source:
            idx = self._target_index.get(apply(z, p))
            if idx is None:
                return False
            out.append(idx)
        if len(set(out)) != len(out):
            return False
        return tuple(out)

    def next_shell(self) -> list[Witness]:
        if self.exhausted:
            return []
        if self.level == 0:
            # the zero vector is never a witness; try the identity instead
            self.level = 1
            if self.a == self.b:
                z = IntMatrix.identity(self.n)
                pm = self._point_map(z)
                if pm is not False:
                    return [Witness(z, 1, pm)]
            return []
        if self.budget is not None and self.visited >= self.budget:
            self.truncated = True
            return []
        coeffs = _shell(self.r, self.level, self.bound)
        self.visited += len(coeffs)
        self.level += 1
        if not coeffs:
            return []
        found = [w for w in self._check(coeffs)]
        found.sort(key=_witness_key)
        return found

    def _check(self, coeffs):
        n = self.n
        big = self.level * self._maxabs * self.r
        if big < 2 ** 50:
            c = np.array(coeffs, dtype=np.int64)
            basis = np.array(self.vectors, dtype=np.int64)
            zs = c @ basis
            mats = zs.reshape(-1, n, n).astype(np.float64)
            dets = np.linalg.det(mats)
            norms = np.sqrt((mats ** 2).sum(axis=2)).prod(axis=1)
            slack = 8 * n * np.finfo(float).eps * norms
            mask = (np.abs(np.abs(dets) - 1) < 0.5) | (slack > 0.25) | ~np.isfinite(dets)
            idx = np.nonzero(mask)[0]
            rows = [tuple(int(x) for x in zs[i]) for i in idx]
        else:
            rows = []
            for cv in coeffs:
                rows.append(tuple(sum(ci * v[t] for ci, v in zip(cv, self.vectors))
                                  for t in range(n * n)))
        for flat in rows:
            m = [flat[i * n:(i + 1) * n] for i in range(n)]
            d = _bareiss(m)
            if abs(d) != 1:
                continue
            z = IntMatrix(m)
            pm = self._point_map(z)
            if pm is False:
                continue
            yield Witness(z, d, pm)

    def __iter__(self) -> Iterator[list[Witness]]:
        while not self.exhausted:
            yield self.next_shell()


def verify_witness(z: IntMatrix, a: IntMatrix, b: IntMatrix,
                   sign: SignConstraint = ANY) -> bool:
    d = determinant(z)
    return abs(d) == 1 and z @ a == b @ z and sign.allows(d)


def _search(a: AnosovAutomorphism, b: AnosovAutomorphism, sign: SignConstraint, bound: int,
            source=None, target=None, budget=DEFAULT_BUDGET) -> ConjugacyVerdict:
    search = WitnessSearch(a.matrix, b.matrix, bound, source, target, budget)
    seen = set()
    for shell in search:
        seen.update(w.sign for w in shell)
        ok = [w for w in shell if sign.allows(w.sign)]
        if ok:
            w = ok[0]
            if not verify_witness(w.matrix, a.matrix, b.matrix, sign):
                raise AssertionError("search produced an invalid witness")
            return ConjugacyVerdict(Status.YES, witness=w.matrix,
                                    achievable_signs=frozenset(seen), point_map=w.point_map)
    return ConjugacyVerdict(Status.UNKNOWN, achievable_signs=frozenset(seen), search_bound=bound,
                            truncated=search.truncated)


def _check_inputs(a: AnosovAutomorphism, b: AnosovAutomorphism):
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    certify(a)
    certify(b)


def decide_conjugacy(a: AnosovAutomorphism, b: AnosovAutomorphism,
                     sign: SignConstraint = ANY, bound: int = DEFAULT_BOUND,
                     budget: int | None = DEFAULT_BUDGET) -> ConjugacyVerdict:
    """Is there a unimodular ``Z`` with ``Z a = b Z`` and admissible determinant sign?"""
    _check_inputs(a, b)
    cert = conjugacy_certificate(a, b)
    if cert:
        return ConjugacyVerdict(Status.NO, certificate=cert)
    return _search(a, b, sign, bound, budget=budget)


def decide_triple_equivalence(t1: Triple, t2: Triple, sign: SignConstraint = ANY,
                              bound: int = DEFAULT_BOUND,
                              budget: int | None = DEFAULT_BUDGET) -> ConjugacyVerdict:
    """Like :func:`decide_conjugacy`, additionally requiring ``Z(P1) = P2``."""
    _check_inputs(t1.automorphism, t2.automorphism)
    cert = triple_certificate(t1, t2)
    if cert:
        return ConjugacyVerdict(Status.NO, certificate=cert)
    return _search(t1.automorphism, t2.automorphism, sign, bound,
                   list(t1.points), list(t2.points), budget)
