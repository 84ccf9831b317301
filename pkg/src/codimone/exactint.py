"""Exact integer and rational linear algebra.

Everything here works on Python integers and :class:`fractions.Fraction`;
no floating point is used to decide anything.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Rational = Fraction


class IntMatrix:
    """Immutable square matrix of arbitrary-precision integers (row-major)."""

    __slots__ = ("rows", "n", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        n = len(rows)
        if n < 1:
            raise ValueError("matrix must have at least one row")
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ValueError(f"row {i} has length {len(r)}, expected {n}")
        self.rows = rows
        self.n = n
        self._hash = hash(rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def __str__(self):
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.rows) + "]"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def flat(self) -> tuple[int, ...]:
        return tuple(v for r in self.rows for v in r)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(zip(*self.rows))

    def _check(self, other: "IntMatrix"):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check(other)
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check(other)
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self.rows])

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        self._check(other)
        cols = list(zip(*other.rows))
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def __pow__(self, m: int) -> "IntMatrix":
        if m < 0:
            return self.inverse() ** (-m)
        result = IntMatrix.identity(self.n)
        base = self
        while m:
            if m & 1:
                result = result @ base
            base = base @ base
            m >>= 1
        return result

    def matvec(self, v: Sequence) -> tuple:
        if len(v) != self.n:
            raise ValueError(f"dimension mismatch: matrix {self.n}, vector {len(v)}")
        return tuple(sum(a * x for a, x in zip(r, v)) for r in self.rows)

    def det(self) -> int:
        return determinant(self)

    def inverse(self) -> "IntMatrix":
        """Inverse of a unimodular matrix (raises if ``|det| != 1``)."""
        d = determinant(self)
        if abs(d) != 1:
            raise ValueError(f"matrix is not unimodular (det = {d})")
        inv = rational_inverse(self.rows)
        return IntMatrix([[int(x) for x in r] for r in inv])


def as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(m)


def _bareiss(rows: Sequence[Sequence[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def determinant(m) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = as_matrix(m)
    return _bareiss(m.rows)


def rational_inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


def char_poly(m) -> list[int]:
    """Coefficients of ``det(xI - m)``, leading coefficient first.

    Faddeev-LeVerrier; every division is exact over the integers.
    """
    m = as_matrix(m)
    n = m.n
    a = m.rows
    coeffs = [1]
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        prod = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[-1]
        mk = prod
        tr = sum(sum(a[i][t] * mk[t][i] for t in range(n)) for i in range(n))
        q, r = divmod(-tr, k)
        assert r == 0
        coeffs.append(q)
    return coeffs


# --------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """``left @ original @ right == diag(diagonal)`` with ``d_i | d_{i+1}``."""

    diagonal: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _smith(rows):
    """Smith form of a (possibly rectangular) integer matrix given as lists.

    Returns ``(diag, left, right)`` as plain lists with left*A*right = D.
    """
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    left = _eye(m)
    right = _eye(n)

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        if i != j:
            for r in a:
                r[i], r[j] = r[j], r[i]
            for r in right:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        ra, rs = a[dst], a[src]
        for j in range(n):
            if rs[j]:
                ra[j] += q * rs[j]
        la, ls = left[dst], left[src]
        for j in range(m):
            if ls[j]:
                la[j] += q * ls[j]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for r in a:
            if r[src]:
                r[dst] += q * r[src]
        for r in right:
            if r[src]:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            dirty = False
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                best = None
                for i in range(t, m):
                    v = a[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, t)
                for j in range(t + 1, n):
                    v = a[t][j]
                    if v and abs(v) < best[0]:
                        best = (abs(v), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            left[t] = [-v for v in left[t]]
    diag = [a[i][i] for i in range(min(m, n))]
    return diag, left, right


@lru_cache(maxsize=4096)
def _smith_cached(m: IntMatrix) -> SmithForm:
    diag, left, right = _smith(m.rows)
    return SmithForm(tuple(diag), IntMatrix(left), IntMatrix(right))


def smith_normal_form(m) -> SmithForm:
    """Smith normal form with unimodular transforms (deterministic)."""
    return _smith_cached(as_matrix(m))


def integer_kernel(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of ``{x in Z^n : A x = 0}`` for an m x n integer matrix."""
    ncols = len(rows[0])
    diag, _, right = _smith(rows)
    diag = diag + [0] * (ncols - len(diag))
    return [[right[i][j] for i in range(ncols)] for j in range(ncols) if diag[j] == 0]


# --------------------------------------------------------------------------
# Polynomials over Q, ascending coefficient lists


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _deg(p):
    return len(p) - 1


def _divmod(a, b):
    a = [Fraction(x) for x in a]
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = Fraction(b[-1])
    a = _trim(a)
    while len(a) >= len(b):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bv in enumerate(b):
            a[shift + i] -= c * bv
        a = _trim(a)
    return _trim(q), a


def _monic(p):
    p = _trim(p)
    return [Fraction(x) / p[-1] for x in p]


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    return _monic(a) if a else []


def _deriv(p):
    return _trim([i * p[i] for i in range(1, len(p))])


def _squarefree(p):
    """Yun's algorithm: list of (factor, multiplicity), factors monic."""
    p = _monic(p)
    out = []
    a = _gcd(p, _deriv(p))
    if _deg(a) <= 0:
        return [(p, 1)]
    b = _divmod(p, a)[0]
    c = _divmod(_deriv(p), a)[0]
    d = _trim([x - y for x, y in _zip_pad(c, _deriv(b))])
    i = 1
    while _deg(b) > 0:
        g = _gcd(b, d) if d else _monic(b)
        if _deg(g) > 0:
            out.append((g, i))
        b = _divmod(b, g)[0]
        c = _divmod(d, g)[0] if d else []
        d = _trim([x - y for x, y in _zip_pad(c, _deriv(b))])
        i += 1
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return zip(a, b)


def _mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sign_at_inf(p, neg=False):
    s = 1 if p[-1] > 0 else -1
    if neg and _deg(p) % 2:
        s = -s
    return s


def _variations(signs):
    signs = [s for s in signs if s]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def _sturm_chain(f0, f1):
    chain = [_trim(f0), _trim(f1)]
    while chain[-1]:
        r = _divmod(chain[-2], chain[-1])[1]
        chain.append([-x for x in r])
    return [c for c in chain if c]


def _real_root_count(p):
    """Number of distinct real roots of p."""
    p = _trim(p)
    if _deg(p) <= 0:
        return 0
    chain = _sturm_chain(p, _deriv(p))
    lo = _variations([_sign_at_inf(c, neg=True) for c in chain])
    hi = _variations([_sign_at_inf(c) for c in chain])
    return lo - hi


def _cauchy_index(num, den):
    """Cauchy index of num/den over the whole real line."""
    if not _trim(num):
        return 0
    chain = _sturm_chain(den, num)
    lo = _variations([_sign_at_inf(c, neg=True) for c in chain])
    hi = _variations([_sign_at_inf(c) for c in chain])
    return lo - hi


def _profile_squarefree(q):
    """(inside, on, outside) root counts of a squarefree polynomial."""
    q = [Fraction(x) for x in _trim(q)]
    on = 0
    if _eval(q, -1) == 0:
        q = _divmod(q, [1, 1])[0]
        on += 1
    d = _deg(q)
    if d <= 0:
        return 0, on, 0
    # w = (z - 1)/(z + 1) sends the open unit disc to the open left half plane
    big_q = [Fraction(0)] * (d + 1)
    for k, c in enumerate(q):
        if c:
            term = _mul(_binom_pow(1, k), _binom_pow(-1, d - k))
            for i, t in enumerate(term):
                big_q[i] += c * t
    # Q(iy) = R(y) + i S(y)
    real = [Fraction(0)] * (d + 1)
    imag = [Fraction(0)] * (d + 1)
    for k, c in enumerate(big_q):
        r = k % 4
        if r == 0:
            real[k] += c
        elif r == 1:
            imag[k] += c
        elif r == 2:
            real[k] -= c
        else:
            imag[k] -= c
    real, imag = _trim(real), _trim(imag)
    if _deg(imag) > _deg(real):
        real, imag = imag, [-x for x in real]
    g = _gcd(real, imag) if imag else _monic(real)
    e = _deg(g)
    r_on = _real_root_count(g)
    r1 = _divmod(real, g)[0]
    s1 = _divmod(imag, g)[0] if imag else []
    left_minus_right = -_cauchy_index(s1, r1)
    left = (d - e + left_minus_right) // 2
    inside = left + (e - r_on) // 2
    on += r_on
    outside = d - inside - r_on
    return inside, on, outside


def _binom_pow(s, k):
    """Coefficients of (1 + s*w)^k."""
    out = [1]
    for _ in range(k):
        out = _mul(out, [1, s])
    return out


@lru_cache(maxsize=4096)
def _profile_from_poly(coeffs: tuple[int, ...]) -> tuple[int, int, int]:
    asc = list(reversed(coeffs))
    inside = on = outside = 0
    for factor, mult in _squarefree(asc):
        i, o, u = _profile_squarefree(factor)
        inside += mult * i
        on += mult * o
        outside += mult * u
    return inside, on, outside


def eigenvalue_modulus_profile(m) -> tuple[int, int, int]:
    """Counts of eigenvalues with modulus < 1, = 1 and > 1 (with multiplicity).

    The counts are exact: the characteristic polynomial is split into
    squarefree parts, mapped to the half plane and counted with Sturm
    sequences (Routh-Hurwitz via Cauchy indices).
    """
    return _profile_from_poly(tuple(char_poly(as_matrix(m))))


def poly_str(coeffs: Sequence[int], var: str = "x") -> str:
    """Render a descending coefficient list, e.g. ``x^2 - 3x + 1``."""
    n = len(coeffs) - 1
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        p = n - i
        mag = abs(c)
        body = "" if (mag == 1 and p) else str(mag)
        if p >= 1:
            body += var + (f"^{p}" if p > 1 else "")
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return " ".join([head] + [f"{s} {b}" for s, b in parts[1:]])
