"""Elements of Q(t) in canonical coprime form."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .poly import UniPoly, dense_strip, poly_gcd


class RationalFunction:
    """num/den with den monic and gcd(num, den) = 1.

    Zero is stored as 0/1.  Instances are immutable and hashable; equality is
    structural on the canonical pair.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = UniPoly(), UniPoly.one()
        else:
            if den.degree > 0:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
            lc = den.lc
            if lc != 1:
                num, den = num * (1 / lc), den * (1 / lc)
            self.num, self.den = num, den
        self._hash = None

    @classmethod
    def _raw(cls, num: UniPoly, den: UniPoly) -> "RationalFunction":
        r = object.__new__(cls)
        r.num, r.den, r._hash = num, den, None
        return r

    @classmethod
    def t(cls) -> "RationalFunction":
        return cls._raw(UniPoly.t(), UniPoly.one())

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls._raw(UniPoly.const(c), UniPoly.one())

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Rational):
            return cls.const(x)
        if isinstance(x, UniPoly):
            return cls._raw(x, UniPoly.one())
        raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")

    # -- predicates
    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Rational, UniPoly)):
            return self == RationalFunction.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("RF", self.num, self.den))
        return self._hash

    # -- arithmetic
    def __add__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.num, self.den, o.num, o.den
        if not a:
            return o
        if not c:
            return self
        # both inputs are reduced, so only a common factor of the
        # denominators can survive into the sum (Henrici)
        if d.degree == 0:  # monic, so d == 1
            num, den = a + c * b, b
        elif b.degree == 0:
            num, den = a * d + c, d
        else:
            num = den = None
        if num is not None:
            return RationalFunction._raw(num, den) if num else RationalFunction()
        if b == d:
            return RationalFunction(a + c, b)
        g = poly_gcd(b, d)
        if g.degree == 0:
            return RationalFunction._raw(a * d + c * b, b * d)
        b1, d1 = b // g, d // g
        num = a * d1 + c * b1
        if not num:
            return RationalFunction()
        g2 = poly_gcd(num, g)
        if g2.degree > 0:
            num, d = num // g2, d // g2
        return RationalFunction._raw(num, b1 * d)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            if not other:
                return RationalFunction()
            return RationalFunction._raw(self.num * other, self.den)
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num or not o.num:
            return RationalFunction()
        if self.den.degree == 0 and o.den.degree == 0:
            return RationalFunction._raw(self.num * o.num, UniPoly.one())
        a, b, c, d = self.num, self.den, o.num, o.den
        if d.degree > 0:
            g = poly_gcd(a, d)
            if g.degree > 0:
                a, d = a // g, d // g
        if b.degree > 0:
            g = poly_gcd(c, b)
            if g.degree > 0:
                c, b = c // g, b // g
        return RationalFunction._raw(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        lc = self.num.lc
        return RationalFunction._raw(self.den * (1 / lc), self.num * (1 / lc))

    def __truediv__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return RationalFunction.const(1)
        return RationalFunction._raw(self.num**e, self.den**e)

    def derivative(self) -> "RationalFunction":
        if self.den.degree == 0:
            return RationalFunction._raw(self.num.derivative(), self.den)
        n, d = self.num, self.den
        dd = d.derivative()
        g = poly_gcd(d, dd)
        d1 = d // g
        return RationalFunction(n.derivative() * d1 - n * (dd // g), d * d1)

    def __call__(self, x):
        """Value at a rational point; the denominator must not vanish there."""
        dv = self.den(x)
        if not dv:
            raise ZeroDivisionError(f"{self} has a pole at t = {x}")
        return self.num(x) / dv

    # -- display
    def to_str(self, var: str = "t") -> str:
        n = self.num.to_str(var)
        if self.den.degree == 0:
            return n
        d = self.den.to_str(var)
        if sum(1 for c in self.num.coeffs if c) > 1 or "/" in n:
            n = f"({n})"
        if sum(1 for c in self.den.coeffs if c) > 1:  # a monic monomial t^k needs none
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"RationalFunction({self.to_str()})"


def _as_poly(x) -> UniPoly:
    if isinstance(x, UniPoly):
        return x
    if isinstance(x, Rational):
        return UniPoly.const(x)
    if isinstance(x, (list, tuple)):
        return UniPoly(dense_strip(list(x)))
    raise TypeError(f"cannot build a polynomial from {type(x).__name__}")


def rf(x) -> RationalFunction:
    return RationalFunction.coerce(x)


def derive(f: RationalFunction) -> RationalFunction:
    """d/dt on Q(t)."""
    return rf(f).derivative()
