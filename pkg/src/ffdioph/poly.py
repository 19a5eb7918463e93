"""Dense univariate polynomials.

Two layers live here.  The module-level ``dense_*`` helpers work on plain
coefficient lists (lowest degree first) over any exact field whose elements
support ``+ - * /`` and truthiness; they are shared by Q[t], Q(t)[T] and
Q(L)[T] computations elsewhere in the package.  :class:`UniPoly` wraps them
for the concrete case of rational coefficients and adds factorization.
"""

from __future__ import annotations

from functools import lru_cache
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence

from gmpy2 import mpq
from sympy.polys.domains import ZZ
from sympy.polys.factortools import dup_factor_list

ZERO_DEGREE = -1  # degree reported for the zero polynomial


# ---------------------------------------------------------------------------
# generic dense helpers


def dense_strip(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return list(a[:n])


def dense_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return dense_strip(out)


def dense_sub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = out[i] - c
    return dense_strip(out)


def dense_scale(a, c):
    if not c:
        return []
    return dense_strip([x * c for x in a])


def dense_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return dense_strip(out)


def dense_divmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], dense_strip(a)
    inv_lc = 1 / b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db]
        if not c:
            continue
        c = c * inv_lc
        q[k] = c
        for j in range(db + 1):
            if b[j]:
                a[k + j] = a[k + j] - c * b[j]
    return dense_strip(q), dense_strip(a[:db])


def dense_monic(a):
    if not a:
        return []
    inv = 1 / a[-1]
    return [x * inv for x in a[:-1]] + [a[-1] * inv]


def dense_gcd(a, b):
    """Monic gcd by the Euclidean algorithm."""
    a, b = dense_strip(a), dense_strip(b)
    while b:
        _, r = dense_divmod(a, b)
        a, b = b, dense_monic(r)
    return dense_monic(a)


def dense_xgcd(a, b):
    """(g, s, r) with s*a + r*b = g, g monic; a and b not both zero."""
    r0, r1 = dense_strip(a), dense_strip(b)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = dense_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, dense_sub(s0, dense_mul(q, s1))
        t0, t1 = t1, dense_sub(t0, dense_mul(q, t1))
    inv = 1 / r0[-1]
    return dense_scale(r0, inv), dense_scale(s0, inv), dense_scale(t0, inv)


def dense_derivative(a):
    return dense_strip([a[i] * i for i in range(1, len(a))])


def dense_eval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def dense_resultant(a, b):
    """Resultant lc(a)^deg(b) * prod b(alpha) over roots alpha of a.

    Computed by the Euclidean remainder sequence; both inputs nonzero.
    """
    a, b = dense_strip(a), dense_strip(b)
    if not a or not b:
        raise ValueError("resultant of a zero polynomial")
    res = 1
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return res * b[0] ** m
        if m == 0:
            return res * a[0] ** n
        _, r = dense_divmod(a, b)
        if not r:
            return 0
        k = len(r) - 1
        if (m * n) % 2:
            res = -res
        res = res * b[-1] ** (m - k)
        a, b = b, r


def sylvester_matrix(a, b, da=None, db=None):
    """Sylvester matrix of a, b taken with formal degrees da, db."""
    da = len(a) - 1 if da is None else da
    db = len(b) - 1 if db is None else db
    a = list(a) + [0] * (da + 1 - len(a))
    b = list(b) + [0] * (db + 1 - len(b))
    size = da + db
    rows = []
    for i in range(db):
        row = [0] * size
        for j in range(da + 1):
            row[i + j] = a[da - j]
        rows.append(row)
    for i in range(da):
        row = [0] * size
        for j in range(db + 1):
            row[i + j] = b[db - j]
        rows.append(row)
    return rows


def determinant(matrix):
    """Determinant over a field by Gaussian elimination with nonzero pivoting."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return 1
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        inv = 1 / p
        for r in range(col + 1, n):
            f = m[r][col]
            if not f:
                continue
            f = f * inv
            row_r, row_c = m[r], m[col]
            for c in range(col + 1, n):
                if row_c[c]:
                    row_r[c] = row_r[c] - f * row_c[c]
    return det


def sylvester_resultant(a, b, da=None, db=None):
    """Resultant as the Sylvester determinant; specializes correctly even
    when a leading coefficient vanishes, because the formal degrees are kept."""
    da = len(a) - 1 if da is None else da
    db = len(b) - 1 if db is None else db
    if da == 0 and db == 0:
        return 1
    return determinant(sylvester_matrix(a, b, da, db))


def interpolate(xs, ys):
    """Lagrange interpolation through (xs[i], ys[i]) over a field."""
    out = []
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        basis = [1]
        denom = 1
        for j, xj in enumerate(xs):
            if j != i:
                basis = dense_mul(basis, [-xj, 1])
                denom = denom * (xi - xj)
        out = dense_add(out, dense_scale(basis, yi / denom))
    return out


# ---------------------------------------------------------------------------
# Q[t]


_MPQ = type(mpq())


def _frac(x):
    # coefficients are gmpy2 rationals: same hashing and comparisons as
    # Fraction, an order of magnitude faster
    return x if type(x) is _MPQ else mpq(x)


_ZERO, _ONE = mpq(0), mpq(1)


class UniPoly:
    """Polynomial in t with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs: tuple[Rational, ...] = tuple(dense_strip([_frac(c) for c in coeffs]))
        self._hash = None

    @classmethod
    def _raw(cls, coeffs) -> "UniPoly":
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        p._hash = None
        return p

    @classmethod
    def t(cls) -> "UniPoly":
        return cls._raw((_ZERO, _ONE))

    @classmethod
    def const(cls, c) -> "UniPoly":
        c = _frac(c)
        return cls._raw((c,) if c else ())

    @classmethod
    def one(cls) -> "UniPoly":
        return cls._raw((_ONE,))

    @classmethod
    def from_roots(cls, roots) -> "UniPoly":
        out = [_ONE]
        for r in roots:
            out = dense_mul(out, [-_frac(r), _ONE])
        return cls._raw(out)

    # -- basic accessors
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Rational:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Rational:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else _ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, Rational):
            return self.coeffs == UniPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("UniPoly", self.coeffs))
        return self._hash

    # -- arithmetic
    @staticmethod
    def _coerce(x) -> "UniPoly":
        if isinstance(x, UniPoly):
            return x
        if isinstance(x, Rational):
            return UniPoly.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to UniPoly")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return UniPoly._raw(dense_add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return UniPoly._raw(dense_sub(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            return UniPoly._raw(dense_scale(self.coeffs, _frac(other)))
        if not isinstance(other, UniPoly):
            return NotImplemented
        return UniPoly._raw(dense_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = UniPoly.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        q, r = dense_divmod(self.coeffs, other.coeffs)
        return UniPoly._raw(q), UniPoly._raw(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "UniPoly":
        return UniPoly._raw(dense_monic(self.coeffs))

    def derivative(self) -> "UniPoly":
        return UniPoly._raw(dense_derivative(self.coeffs))

    def __call__(self, x):
        return dense_eval(self.coeffs, x)

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def multiplicity(self, p: "UniPoly") -> tuple[int, "UniPoly"]:
        """Largest k with p^k | self, and self / p^k.  self must be nonzero."""
        if not self:
            raise ValueError("multiplicity in the zero polynomial")
        if p.degree < 1:
            raise ValueError("multiplicity of a constant factor")
        k, cur = 0, self
        while cur.degree >= p.degree:
            q, r = divmod(cur, p)
            if r:
                break
            k, cur = k + 1, q
        return k, cur

    def integer_primitive(self) -> tuple[Rational, list[int]]:
        """(unit, integer coefficients) with self = unit * sum(c_i t^i), content 1."""
        if not self:
            return _ZERO, []
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for x in ints:
            g = _gcd(g, x)
        if ints[-1] < 0:
            g = -g
        return mpq(g, den), [x // g for x in ints]

    # -- display
    def to_str(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if i == 0:
                body = _fmt_frac(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                if a == 1:
                    body = mono
                elif a.denominator == 1:
                    body = f"{a.numerator}*{mono}"
                else:
                    body = f"({_fmt_frac(a)})*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"UniPoly({self.to_str()})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _fmt_frac(q: Rational) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


T = UniPoly.t()


# ---------------------------------------------------------------------------
# operations on Q[t]


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    if not a or not b:
        return (a or b).monic()
    if a.degree == 0 or b.degree == 0:
        return UniPoly.one()
    return UniPoly._raw(dense_gcd(a.coeffs, b.coeffs))


def poly_xgcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """(g, s, r) with s*a + r*b = g monic."""
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    r0, r1 = a, b
    s0, s1 = UniPoly.one(), UniPoly()
    t0, t1 = UniPoly(), UniPoly.one()
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def poly_resultant(a: UniPoly, b: UniPoly) -> Rational:
    if not a or not b:
        raise ValueError("resultant of a zero polynomial")
    return mpq(dense_resultant(a.coeffs, b.coeffs))


def squarefree_part(a: UniPoly) -> UniPoly:
    if not a:
        raise ValueError("squarefree part of the zero polynomial")
    if a.degree == 0:
        return UniPoly.one()
    return (a // poly_gcd(a, a.derivative())).monic()


def squarefree_decomposition(a: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: monic squarefree, pairwise coprime (a_i, i) with
    a = lc(a) * prod a_i^i; trivial factors omitted."""
    if not a:
        raise ValueError("squarefree decomposition of the zero polynomial")
    if a.degree < 1:
        return []
    out = []
    da = a.derivative()
    g = poly_gcd(a, da)
    b = a // g
    d = da // g - b.derivative()
    i = 1
    while b.degree > 0:
        a_i = poly_gcd(b, d)
        b = b // a_i
        d = d // a_i - b.derivative()
        if a_i.degree > 0:
            out.append((a_i.monic(), i))
        i += 1
    return out


@lru_cache(maxsize=65536)
def _factor_cached(ints: tuple[int, ...]) -> tuple[tuple[tuple[Rational, ...], int], ...]:
    dup = [ZZ(x) for x in reversed(ints)]
    _, factors = dup_factor_list(dup, ZZ)
    out = []
    for f, m in factors:
        coeffs = [mpq(int(x)) for x in reversed(f)]
        lc = coeffs[-1]
        out.append((tuple(c / lc for c in coeffs), m))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return tuple(out)


def factor_poly(a: UniPoly) -> tuple[Rational, list[tuple[UniPoly, int]]]:
    """(unit, [(monic irreducible, multiplicity), ...]) with
    a = unit * prod f^m.  Factors are sorted by degree then coefficients."""
    if not a:
        raise ValueError("factorization of the zero polynomial")
    if a.degree == 0:
        return a.lc, []
    if a.degree == 1:
        return a.lc, [(a.monic(), 1)]
    _, ints = a.integer_primitive()
    factors = [(UniPoly._raw(c), m) for c, m in _factor_cached(tuple(ints))]
    return a.lc, factors


def is_irreducible(a: UniPoly) -> bool:
    if a.degree < 1:
        return False
    _, fs = factor_poly(a)
    return len(fs) == 1 and fs[0][1] == 1


def expand_factorization(unit, factors: Sequence[tuple[UniPoly, int]]) -> UniPoly:
    out = UniPoly.const(unit)
    for f, m in factors:
        out = out * f**m
    return out
