"""k-tubes of Anosov automorphisms and the class-S invariant (tube, a, b, c)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .conjugacy import (
    DEFAULT_BOUND,
    DEFAULT_BUDGET,
    Status,
    Witness,
    matrix_fingerprint,
)
from .manifold import ManifoldDescription
from .matching import Member, match_families
from .torus import AnosovAutomorphism, InvariantRejected, certify


@dataclass(frozen=True)
class KTube:
    autos: tuple[AnosovAutomorphism, ...]

    def __post_init__(self):
        autos = tuple(self.autos)
        object.__setattr__(self, "autos", autos)
        if not autos:
            raise InvariantRejected("empty-tube", "a tube needs at least one automorphism")
        dims = {a.n for a in autos}
        if len(dims) != 1:
            raise InvariantRejected("dimension", f"mixed dimensions {sorted(dims)}")

    @property
    def k(self) -> int:
        return len(self.autos)

    @property
    def n(self) -> int:
        return self.autos[0].n

    def __iter__(self):
        return iter(self.autos)

    def __len__(self):
        return len(self.autos)


def t_u(tube: KTube) -> int:
    """Number of members with one-dimensional unstable manifolds."""
    return sum(1 for a in tube if a.epsilon == "r")


def is_admissible(tube: KTube) -> bool:
    if tube.k < 2:
        raise InvariantRejected("tube-size", f"class S needs k >= 2, got {tube.k}")
    return t_u(tube) in (1, tube.k - 1)


def euler_holds(k: int, a: int, b: int, c: int) -> bool:
    return k + a + b == c + 2


def agrees(tube: KTube, a: int, b: int, c: int) -> bool:
    """Does the tube agree with the counts of sinks, sources and saddles?"""
    k = tube.k
    if not euler_holds(k, a, b, c):
        raise InvariantRejected("euler", f"k + a + b = {k + a + b} but c + 2 = {c + 2}")
    tu = t_u(tube)
    return (tu == 1 and b == 0) or (tu == k - 1 and a == 0)


@dataclass(frozen=True)
class SInvariant:
    tube: KTube
    a: int
    b: int
    c: int

    @property
    def k(self) -> int:
        return self.tube.k

    @property
    def n(self) -> int:
        return self.tube.n

    @property
    def saddle_index(self) -> int | None:
        """Morse index of the saddles, read off from which branch of agreement holds."""
        tu = t_u(self.tube)
        if tu == 1 and self.b == 0:
            return 1
        if tu == self.k - 1 and self.a == 0:
            return self.n - 1
        return None


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tail = f" {self.detail}" if self.detail else ""
        return f"check {self.name}: {'pass' if self.ok else 'FAIL'}{tail}"


@dataclass
class ValidationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(ok), "" if ok else detail))
        return bool(ok)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks] + [f"valid: {'yes' if self.ok else 'no'}"]


def validate_S(s: SInvariant) -> ValidationReport:
    rep = ValidationReport()
    certified = True
    for i, a in enumerate(s.tube):
        try:
            certify(a)
        except InvariantRejected as exc:
            certified = False
            rep.add("anosov", False, f"member {i}: {exc}")
    if certified:
        rep.add("anosov", True)
    rep.add("dimension", s.n >= 3, f"n = {s.n}, class S needs n >= 3")
    rep.add("k>=2", s.k >= 2, f"k = {s.k}")
    rep.add("counts", s.a >= 0 and s.b >= 0 and s.c >= 1,
            f"(a, b, c) = ({s.a}, {s.b}, {s.c})")
    euler = rep.add("euler", euler_holds(s.k, s.a, s.b, s.c),
                    f"k + a + b = {s.k + s.a + s.b}, c + 2 = {s.c + 2}")
    if not (certified and s.k >= 2):
        return rep
    adm = rep.add("admissible", is_admissible(s.tube), f"t_u = {t_u(s.tube)}, k = {s.k}")
    if euler and adm:
        rep.add("agrees", agrees(s.tube, s.a, s.b, s.c),
                f"t_u = {t_u(s.tube)}, (a, b) = ({s.a}, {s.b})")
    return rep


def _tube_fingerprint(a: AnosovAutomorphism) -> tuple:
    return matrix_fingerprint(a.matrix) + (a.epsilon,)


@dataclass(frozen=True)
class TubeVerdict:
    status: Status
    certificate: str | None = None
    permutation: tuple[int, ...] | None = None
    witnesses: tuple[Witness, ...] | None = None
    sign: int | None = None
    search_bound: int | None = None
    truncated: bool = False

    def __bool__(self):
        return self.status is Status.YES


def tube_certificate(s1: SInvariant, s2: SInvariant) -> str | None:
    if s1.n != s2.n:
        return "dimension"
    if s1.k != s2.k:
        return "k"
    if s1.c != s2.c:
        return "c"
    if s1.a + s1.b != s2.a + s2.b:
        return "a+b"
    if t_u(s1.tube) != t_u(s2.tube):
        return "t_u"
    cp1 = Counter(matrix_fingerprint(a.matrix)[0] for a in s1.tube)
    cp2 = Counter(matrix_fingerprint(a.matrix)[0] for a in s2.tube)
    if cp1 != cp2:
        return "charpoly-multiset"
    f1 = Counter(map(_tube_fingerprint, s1.tube))
    f2 = Counter(map(_tube_fingerprint, s2.tube))
    if f1 != f2:
        return "fingerprint-multiset"
    return None


def decide_tube_equivalence(s1: SInvariant, s2: SInvariant, bound: int = DEFAULT_BOUND,
                            budget: int | None = DEFAULT_BUDGET) -> TubeVerdict:
    """Equivalence of two class-S invariants up to reordering of the tubes.

    Needs a permutation tau and unimodular Z_i with Z_i A_i = A'_tau(i) Z_i,
    all determinants of one sign, together with equal c and equal a + b.
    """
    for a in (*s1.tube, *s2.tube):
        certify(a)
    cert = tube_certificate(s1, s2)
    if cert:
        return TubeVerdict(Status.NO, certificate=cert)
    fam1 = [Member(a, None, _tube_fingerprint(a)) for a in s1.tube]
    fam2 = [Member(a, None, _tube_fingerprint(a)) for a in s2.tube]
    m = match_families(fam1, fam2, bound, "same", budget=budget)
    if m.status is Status.YES:
        return TubeVerdict(Status.YES, permutation=m.permutation, witnesses=m.witnesses,
                           sign=m.sign)
    return TubeVerdict(Status.UNKNOWN, search_bound=bound, truncated=m.truncated)


def manifold_of_S(s: SInvariant) -> ManifoldDescription:
    return ManifoldDescription(s.n, s.k, 0)


def make_tube(autos: Sequence[AnosovAutomorphism]) -> KTube:
    return KTube(tuple(autos))
