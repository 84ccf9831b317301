"""Simultaneous matching of indexed automorphism families.

Both tube equivalence and graph commensurability ask for a bijection between
two families plus one conjugating matrix per member, subject to a global
determinant-sign rule and (for graphs) preservation of the vertex edges.
The per-pair witness searches are advanced lazily in rounds so that an easy
pair never waits for a hard one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .conjugacy import DEFAULT_BUDGET, Status, WitnessSearch, Witness
from .torus import AnosovAutomorphism, TorusPoint


@dataclass(frozen=True)
class Member:
    """One member of a family: an automorphism, optional ordered points, a fingerprint."""

    automorphism: AnosovAutomorphism
    points: tuple[TorusPoint, ...] | None
    fingerprint: tuple


@dataclass(frozen=True)
class Match:
    status: Status
    permutation: tuple[int, ...] | None = None   # member i of the first family -> permutation[i]
    witnesses: tuple[Witness, ...] | None = None
    sign: int | None = None
    rounds: int = 0
    truncated: bool = False


class _Pair:
    def __init__(self, m1: Member, m2: Member, bound: int, budget):
        self.search = WitnessSearch(m1.automorphism.matrix, m2.automorphism.matrix, bound,
                                    m1.points, m2.points, budget)
        self.options: dict[tuple, Witness] = {}

    def advance(self) -> bool:
        if self.search.exhausted:
            return False
        for w in self.search.next_shell():
            self.options.setdefault((w.point_map, w.sign), w)
        return True


def _solve(fam1, fam2, pairs, edges1, edges2, sign_rule):
    k = len(fam1)
    assign: list = [None] * k
    used = [False] * k
    # per-group edges of the first family, touching an earlier group
    incident = [[] for _ in range(k)]
    for (u, v), label in edges1.items():
        hi = max(u[0], v[0])
        incident[hi].append((u, v, label))

    def image(vertex):
        g, s = vertex
        j, w = assign[g]
        return (j, w.point_map[s] if w.point_map is not None else s)

    def rec(i, sign):
        if i == k:
            return True
        for j in range(k):
            if used[j] or (i, j) not in pairs:
                continue
            for (pm, s), w in pairs[(i, j)].options.items():
                if sign_rule == "positive" and s != 1:
                    continue
                if sign is not None and s != sign:
                    continue
                assign[i] = (j, w)
                ok = True
                for u, v, label in incident[i]:
                    e = tuple(sorted((image(u), image(v))))
                    if edges2.get(e, _MISSING) != label:
                        ok = False
                        break
                if not ok:
                    continue
                used[j] = True
                if rec(i + 1, s if sign_rule == "same" else sign):
                    return True
                used[j] = False
        assign[i] = None
        return False

    if rec(0, None):
        return tuple(a[0] for a in assign), tuple(a[1] for a in assign)
    return None


_MISSING = object()


def match_families(fam1: Sequence[Member], fam2: Sequence[Member], bound: int,
                   sign_rule: str = "same", edges1=None, edges2=None,
                   budget: int | None = DEFAULT_BUDGET) -> Match:
    """Search a bijection with per-member witnesses.

    ``sign_rule`` is ``"positive"`` (every determinant +1) or ``"same"``
    (one common sign).  ``edges`` map sorted vertex pairs ``((g, s), (g', s'))``
    to an edge label; a witness's point map moves vertex ``s`` of its group.
    Returns YES with the first solution found, otherwise UNKNOWN once every
    compatible pair is exhausted.  Certificates are the caller's business.
    """
    edges1 = dict(edges1 or {})
    edges2 = dict(edges2 or {})
    k = len(fam1)
    if k != len(fam2):
        raise ValueError("families differ in size")
    pairs = {(i, j): _Pair(fam1[i], fam2[j], bound, budget)
             for i in range(k) for j in range(k)
             if fam1[i].fingerprint == fam2[j].fingerprint}
    rounds = 0
    while True:
        progressed = False
        for key in sorted(pairs):
            progressed |= pairs[key].advance()
        rounds += 1
        found = _solve(fam1, fam2, pairs, edges1, edges2, sign_rule)
        if found is not None:
            perm, ws = found
            return Match(Status.YES, perm, ws, ws[0].sign if ws else 1, rounds)
        if not progressed:
            truncated = any(p.search.truncated for p in pairs.values())
            return Match(Status.UNKNOWN, rounds=rounds, truncated=truncated)
