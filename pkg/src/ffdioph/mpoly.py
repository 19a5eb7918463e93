"""Sparse multivariate polynomials with coefficients in Q(t)."""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian
from typing import Callable, Iterable, Mapping, Sequence

from .ratfunc import RationalFunction, rf


def default_names(nvars: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(nvars))


class MultiPolynomial:
    """Map from exponent vectors to nonzero RationalFunction coefficients.

    ``names`` only affects printing; equality and hashing use the arity and
    the term map.
    """

    __slots__ = ("nvars", "terms", "names", "_hash")

    def __init__(self, nvars: int, terms: Mapping | Iterable = (), names: Sequence[str] | None = None):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, ...], RationalFunction] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have length {nvars}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent {e}")
            c = rf(c)
            if e in clean:
                c = clean[e] + c
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self.terms = clean
        self.names = tuple(names) if names is not None else default_names(nvars)
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms, names) -> "MultiPolynomial":
        p = object.__new__(cls)
        p.nvars, p.terms, p.names, p._hash = nvars, terms, names, None
        return p

    @classmethod
    def variable(cls, i: int, nvars: int, names=None) -> "MultiPolynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, names)

    @classmethod
    def constant(cls, c, nvars: int, names=None) -> "MultiPolynomial":
        return cls(nvars, {(0,) * nvars: c}, names)

    @classmethod
    def gens(cls, nvars: int, names=None) -> list["MultiPolynomial"]:
        return [cls.variable(i, nvars, names) for i in range(nvars)]

    def with_names(self, names) -> "MultiPolynomial":
        return MultiPolynomial._raw(self.nvars, self.terms, tuple(names))

    # -- predicates and accessors
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def has_constant_coefficients(self) -> bool:
        return all(c.is_constant() for c in self.terms.values())

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exponent) -> RationalFunction:
        return self.terms.get(tuple(exponent), RationalFunction())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], RationalFunction]]:
        """Terms in decreasing degree-lexicographic order."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], RationalFunction]:
        if not self.terms:
            raise ValueError("leading term of zero polynomial")
        return max(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def leading_coefficient(self) -> RationalFunction:
        return self.leading_term()[1]

    def homogeneous_part(self, d: int) -> "MultiPolynomial":
        return MultiPolynomial._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d}, self.names)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic
    def _check(self, other: "MultiPolynomial"):
        if self.nvars != other.nvars:
            raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> "MultiPolynomial":
        if isinstance(other, MultiPolynomial):
            self._check(other)
            return other
        return MultiPolynomial.constant(rf(other), self.nvars, self.names)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out[e] + c if e in out else c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPolynomial._raw(self.nvars, out, self.names)

    __radd__ = __add__

    def __neg__(self):
        return MultiPolynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPolynomial):
            try:
                c = rf(other)
            except TypeError:
                return NotImplemented
            if not c:
                return MultiPolynomial._raw(self.nvars, {}, self.names)
            return MultiPolynomial._raw(self.nvars, {e: v * c for e, v in self.terms.items()}, self.names)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in out:
                    v = out[e] + v
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MultiPolynomial._raw(self.nvars, out, self.names)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPolynomial.constant(1, self.nvars, self.names)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def map_coefficients(self, fn: Callable[[RationalFunction], object]) -> "MultiPolynomial":
        return MultiPolynomial(self.nvars, {e: fn(c) for e, c in self.terms.items()}, self.names)

    def diff(self, i: int) -> "MultiPolynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPolynomial._raw(self.nvars, out, self.names)

    def __call__(self, *values):
        return self.evaluate(values)

    def evaluate(self, values: Sequence):
        """Substitute values (RationalFunction, Fraction, int or any ring
        elements supporting + * **) for the variables."""
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(values)}")
        powers: list[dict[int, object]] = [{} for _ in range(self.nvars)]
        acc = None
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    pw = powers[i].get(k)
                    if pw is None:
                        pw = values[i] ** k
                        powers[i][k] = pw
                    term = term * pw
            acc = term if acc is None else acc + term
        return RationalFunction() if acc is None else acc

    def substitute(self, values: Sequence["MultiPolynomial"]) -> "MultiPolynomial":
        """Compose with polynomials of a common arity."""
        target = values[0].nvars
        out = MultiPolynomial(target, {}, values[0].names)
        for e, c in self.terms.items():
            term = MultiPolynomial.constant(c, target, values[0].names)
            for i, k in enumerate(e):
                if k:
                    term = term * values[i] ** k
            out = out + term
        return out

    def evaluate_coefficients(self, fn: Callable[[RationalFunction], Fraction]) -> "MultiPolynomial":
        return MultiPolynomial(self.nvars, {e: fn(c) for e, c in self.terms.items()}, self.names)

    def monomial_content(self) -> tuple[int, ...]:
        """Exponent of the largest monomial dividing self."""
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    # -- display
    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.names, e) if k
            )
            neg = False
            if c.is_constant():
                v = c.constant_value()
                neg = v < 0
                a = -v if neg else v
                cs = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
                if mono:
                    body = mono if a == 1 else (f"{cs}*{mono}" if a.denominator == 1 else f"({cs})*{mono}")
                else:
                    body = cs
            elif c.is_polynomial() and sum(1 for x in c.num.coeffs if x) == 1:
                # a single term a*t^k prints without parentheses
                k = c.num.degree
                v = c.num.coeffs[k]
                neg = v < 0
                a = -v if neg else v
                tk = "t" if k == 1 else f"t^{k}"
                if a == 1:
                    body = tk
                elif a.denominator == 1:
                    body = f"{a.numerator}*{tk}"
                else:
                    body = f"({a.numerator}/{a.denominator})*{tk}"
                if mono:
                    body += f"*{mono}"
            else:
                body = f"({c.to_str()})" + (f"*{mono}" if mono else "")
            parts.append((neg, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"MultiPolynomial({self.to_str()})"


def monomials_of_degree(nvars: int, d: int) -> list[tuple[int, ...]]:
    return [e for e in _cartesian(range(d + 1), repeat=nvars) if sum(e) == d]


def homogenize(F: MultiPolynomial, names=None) -> MultiPolynomial:
    """Prepend x0 so every term reaches the total degree of F."""
    d = F.degree
    terms = {(d - sum(e),) + e: c for e, c in F.terms.items()}
    return MultiPolynomial._raw(F.nvars + 1, terms, tuple(names) if names else default_names(F.nvars + 1))


def dehomogenize(F: MultiPolynomial, i: int = 0, names=None) -> MultiPolynomial:
    """Set x_i = 1."""
    out: dict = {}
    for e, c in F.terms.items():
        k = e[:i] + e[i + 1:]
        out[k] = out[k] + c if k in out else c
    out = {k: c for k, c in out.items() if c}
    n = F.nvars - 1
    return MultiPolynomial._raw(n, out, tuple(names) if names else default_names(n))
