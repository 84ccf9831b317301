"""Command line front end.

Exit codes: 0 yes/valid, 1 no/invalid, 2 unknown (search bound exhausted),
3 usage or parse error.  Reports are ``key: value`` lines on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize
from .conjugacy import (
    DEFAULT_BOUND,
    DEFAULT_BUDGET,
    SignConstraint,
    Status,
    Triple,
    decide_conjugacy,
    decide_triple_equivalence,
)
from .exactint import IntMatrix, poly_str, char_poly
from .generate import generate
from .graph import ClassGraph, decide_commensurable, manifold_of_graph, validate
from .realize import MalformedSystem, RealizedSystem, extract_invariant, realize
from .serialize import ParseError, TripleSpec
from .torus import (
    InvariantRejected,
    admissible_epsilons,
    check_anosov,
    make_point_set,
    periodic_points,
)
from .tube import SInvariant, decide_tube_equivalence, manifold_of_S, validate_S

EXIT = {Status.YES: 0, Status.NO: 1, Status.UNKNOWN: 2}
USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def _out(lines):
    for line in lines:
        print(line)


def _validation_report(obj):
    if isinstance(obj, SInvariant):
        return validate_S(obj)
    if isinstance(obj, ClassGraph):
        return validate(obj)
    raise UsageError(f"cannot validate a {type(obj).__name__} this way")


def _triple_lines(t: TripleSpec) -> tuple[bool, list[str]]:
    try:
        a = check_anosov(t.automorphism.matrix, t.automorphism.epsilon)
        lines = ["check anosov: pass"]
        if t.points is not None:
            make_point_set(a, t.points)
            lines.append("check points: pass")
        return True, lines
    except (InvariantRejected, ValueError) as exc:
        return False, [f"check anosov: FAIL {exc}"]


def cmd_validate(args) -> int:
    obj = serialize.load(args.file)
    if isinstance(obj, TripleSpec):
        ok, lines = _triple_lines(obj)
        _out(lines + [f"valid: {'yes' if ok else 'no'}"])
        return 0 if ok else 1
    if isinstance(obj, RealizedSystem):
        try:
            inv = extract_invariant(obj)
        except MalformedSystem as exc:
            _out([f"check gluing: FAIL {exc}", "valid: no"])
            return 1
        print("check gluing: pass")
        obj = inv
    rep = _validation_report(obj)
    _out(rep.lines())
    return 0 if rep.ok else 1


def _load_pair(args, kinds):
    a, b = serialize.load(args.file1), serialize.load(args.file2)
    for x, name in ((a, args.file1), (b, args.file2)):
        if not isinstance(x, kinds):
            raise UsageError(f"{name}: unsupported class for this command")
    return a, b


def _invalid_inputs(objs) -> list[int]:
    bad = []
    for i, obj in enumerate(objs, 1):
        rep = _validation_report(obj)
        for c in rep.failures():
            print(f"invalid input {i}: {c.name} {c.detail}".rstrip())
        if not rep.ok:
            bad.append(i)
    return bad


def cmd_equiv(args) -> int:
    a, b = _load_pair(args, (SInvariant, ClassGraph))
    kind_a = "S" if isinstance(a, SInvariant) else a.variant
    kind_b = "S" if isinstance(b, SInvariant) else b.variant
    if kind_a != kind_b:
        raise UsageError(f"cannot compare class {kind_a} with class {kind_b}")
    if a.n != b.n:
        raise UsageError(f"dimension mismatch: {a.n} vs {b.n}")
    bad = _invalid_inputs((a, b))
    if len(bad) == 2:
        print("status: invalid")
        return 1
    if bad:
        # membership in the class is itself an invariant
        _out([f"class: {kind_a}", "status: no", "certificate: validity"])
        return 1
    if kind_a == "S":
        v = decide_tube_equivalence(a, b, args.bound, args.budget)
    else:
        v = decide_commensurable(a, b, args.bound, args.budget)
    lines = [f"class: {kind_a}", f"status: {v.status}"]
    if v.certificate:
        lines.append(f"certificate: {v.certificate}")
    if v.status is Status.YES:
        lines.append("permutation: " + " ".join(f"{i}->{j}" for i, j in enumerate(v.permutation)))
        lines.append(f"sign: {'+' if v.sign > 0 else '-'}")
        for i, (j, w) in enumerate(zip(v.permutation, v.witnesses)):
            lines.append(f"witness {i}->{j}: {w.matrix}")
        if kind_a != "S":
            for (g, s), (h, t) in sorted(v.vertex_map().items()):
                lines.append(f"vertex {g}.{s}->{h}.{t}")
    if v.status is Status.UNKNOWN:
        lines.append(f"search_bound: {v.search_bound}")
        if v.truncated:
            lines.append(f"budget_exhausted: {args.budget}")
    _out(lines)
    return EXIT[v.status]


def cmd_manifold(args) -> int:
    obj = serialize.load(args.file)
    if not isinstance(obj, (SInvariant, ClassGraph)):
        raise UsageError("manifold needs an S, P or M invariant file")
    if _invalid_inputs((obj,)):
        print("status: invalid")
        return 1
    desc = manifold_of_S(obj) if isinstance(obj, SInvariant) else manifold_of_graph(obj)
    _out(desc.report())
    return 0


def cmd_realize(args) -> int:
    obj = serialize.load(args.file)
    if not isinstance(obj, (SInvariant, ClassGraph)):
        raise UsageError("realize needs an S, P or M invariant file")
    try:
        system = realize(obj)
    except InvariantRejected as exc:
        print(f"rejected: {exc.reason}")
        print(f"detail: {exc.detail}")
        return 1
    sys.stdout.write(serialize.dumps(system))
    return 0


def cmd_extract(args) -> int:
    obj = serialize.load(args.file)
    if not isinstance(obj, RealizedSystem):
        raise UsageError("extract needs a realized-system file")
    try:
        inv = extract_invariant(obj)
    except MalformedSystem as exc:
        print(f"malformed: {exc}")
        return 1
    sys.stdout.write(serialize.dumps(inv))
    return 0


def _parse_matrix_arg(text: str) -> IntMatrix:
    text = text.strip()
    try:
        if text.startswith("["):
            rows = json.loads(text)
        else:
            rows = [[int(x) for x in r.replace(",", " ").split()] for r in text.split(";")]
    except (ValueError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read matrix: {exc}", "--matrix") from None
    return serialize.parse_matrix(rows, "--matrix")


def cmd_fixed_points(args) -> int:
    m = _parse_matrix_arg(args.matrix)
    if args.power < 1:
        raise UsageError("--power must be positive")
    eps = admissible_epsilons(m)
    if args.epsilon:
        eps = (args.epsilon,)
    try:
        a = check_anosov(m, eps[0] if eps else "a")
    except InvariantRejected as exc:
        print(f"rejected: {exc.reason}")
        print(f"detail: {exc.detail}")
        return 1
    pts = periodic_points(a, args.power)
    lines = [f"matrix: {m}", f"charpoly: {poly_str(char_poly(m))}", f"epsilon: {a.epsilon}",
             f"power: {args.power}", f"count: {len(pts)}"]
    for p, per in zip(pts.points, pts.periods):
        lines.append(f"point: {p} period {per}")
    _out(lines)
    return 0


def cmd_conjugate(args) -> int:
    a, b = _load_pair(args, (TripleSpec,))
    if a.n != b.n:
        raise UsageError(f"dimension mismatch: {a.n} vs {b.n}")
    sign = SignConstraint(args.sign)
    try:
        if a.points is not None and b.points is not None:
            ta, tb = (Triple(check_anosov(t.automorphism.matrix, t.automorphism.epsilon),
                             make_point_set(check_anosov(t.automorphism.matrix,
                                                         t.automorphism.epsilon), t.points))
                      for t in (a, b))
            v = decide_triple_equivalence(ta, tb, sign, args.bound, args.budget)
        else:
            v = decide_conjugacy(a.automorphism, b.automorphism, sign, args.bound, args.budget)
    except InvariantRejected as exc:
        print(f"rejected: {exc.reason}")
        print(f"detail: {exc.detail}")
        return 1
    lines = [f"status: {v.status}"]
    if v.certificate:
        lines.append(f"certificate: {v.certificate}")
    if v.witness is not None:
        lines.append(f"witness: {v.witness}")
        lines.append(f"det: {v.witness.det():+d}")
    if v.point_map is not None:
        lines.append("point_map: " + " ".join(f"{i}->{j}" for i, j in enumerate(v.point_map)))
    if v.status is not Status.NO:
        signs = "".join("+" if s > 0 else "-" for s in sorted(v.achievable_signs, reverse=True))
        lines.append(f"achievable_signs: {signs or 'none'}")
    if v.status is Status.UNKNOWN:
        lines.append(f"search_bound: {v.search_bound}")
        if v.truncated:
            lines.append(f"budget_exhausted: {args.budget}")
    _out(lines)
    return EXIT[v.status]


def cmd_gen(args) -> int:
    try:
        obj = generate(args.cls, args.n, args.k, args.seed, copy=args.copy)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = serialize.dumps(obj)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _budget(text: str):
    return None if text in ("none", "inf") else int(text)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="codimone", description="Invariants of codimension-one basic sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def search_opts(q):
        q.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                       help="coefficient bound for witness search (default %(default)s)")
        q.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET,
                       help="coefficient vectors tried per pair; 'none' for the whole box")

    q = sub.add_parser("validate", help="check membership conditions of an invariant file")
    q.add_argument("file")
    q.set_defaults(func=cmd_validate)

    q = sub.add_parser("equiv", help="tube equivalence (S) or commensurability (P, M)")
    q.add_argument("file1")
    q.add_argument("file2")
    search_opts(q)
    q.set_defaults(func=cmd_equiv)

    q = sub.add_parser("manifold", help="connected-sum type of the supporting manifold")
    q.add_argument("file")
    q.set_defaults(func=cmd_manifold)

    q = sub.add_parser("realize", help="emit the symbolic realization of an invariant")
    q.add_argument("file")
    q.set_defaults(func=cmd_realize)

    q = sub.add_parser("extract", help="read the invariant back from a realized system")
    q.add_argument("file")
    q.set_defaults(func=cmd_extract)

    q = sub.add_parser("fixed-points", help="fixed (or period-m) points of an automorphism")
    q.add_argument("--matrix", required=True, help='"[[2,1],[1,1]]" or "2 1; 1 1"')
    q.add_argument("--power", type=int, default=1)
    q.add_argument("--epsilon", choices=("a", "r"))
    q.set_defaults(func=cmd_fixed_points)

    q = sub.add_parser("conjugate", help="GL(n,Z) conjugacy of two triple files")
    q.add_argument("file1")
    q.add_argument("file2")
    q.add_argument("--sign", choices=("any", "positive", "negative", "same"), default="any")
    search_opts(q)
    q.set_defaults(func=cmd_conjugate)

    q = sub.add_parser("gen", help="deterministic random instance")
    q.add_argument("--class", dest="cls", choices=("S", "P", "M"), required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--copy", action="store_true",
                   help="emit a relabelled, conjugated copy equivalent to the plain instance")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
