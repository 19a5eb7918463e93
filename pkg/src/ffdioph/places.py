"""Places of P^1 over Q, valuations, S-sets and S-units.

A finite place is a monic irreducible polynomial in t; a place of degree d
stands for the d conjugate geometric points over the algebraic closure, so
every count in this package weights a place by its degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian
from typing import Iterable, Iterator

from .poly import UniPoly, factor_poly, is_irreducible
from .ratfunc import RationalFunction, rf


@dataclass(frozen=True)
class Place:
    poly: UniPoly | None  # None marks the point at infinity

    @classmethod
    def finite(cls, poly: UniPoly, check: bool = True) -> "Place":
        if poly.degree < 1:
            raise ValueError(f"place polynomial must be nonconstant, got {poly}")
        poly = poly.monic()
        if check and not is_irreducible(poly):
            raise ValueError(f"{poly} is not irreducible over Q")
        return cls(poly)

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def at(cls, c) -> "Place":
        """The degree-one place t = c."""
        return cls(UniPoly([-Fraction(c), 1]))

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self):
        if self.poly is None:
            return (1, 0, ())
        return (0, self.poly.degree, self.poly.coeffs)

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "inf" if self.poly is None else self.poly.to_str()

    def __repr__(self) -> str:
        return f"Place({self})"


INFINITY = Place.infinity()


class PlaceSet:
    """Finite set of places; ``size`` is the degree-weighted count |S|."""

    __slots__ = ("_places",)

    def __init__(self, places: Iterable[Place] = ()):
        self._places = frozenset(places)

    def __iter__(self) -> Iterator[Place]:
        return iter(sorted(self._places))

    def __len__(self) -> int:
        return len(self._places)

    def __contains__(self, p) -> bool:
        return p in self._places

    def __eq__(self, other) -> bool:
        return isinstance(other, PlaceSet) and self._places == other._places

    def __hash__(self) -> int:
        return hash(self._places)

    def __or__(self, other: Iterable[Place]) -> "PlaceSet":
        return PlaceSet(self._places | frozenset(other))

    @property
    def size(self) -> int:
        return sum(p.degree for p in self._places)

    @property
    def finite(self) -> list[Place]:
        return [p for p in self if not p.is_infinite]

    @property
    def has_infinity(self) -> bool:
        return INFINITY in self._places

    def __str__(self) -> str:
        return "{" + ", ".join(str(p) for p in self) + "}"

    def __repr__(self) -> str:
        return f"PlaceSet({self})"


def place_set(*items) -> PlaceSet:
    """Build a PlaceSet from Place objects, polynomials or the string 'inf'."""
    out = []
    for x in items:
        if isinstance(x, Place):
            out.append(x)
        elif x == "inf" or x is None:
            out.append(INFINITY)
        elif isinstance(x, UniPoly):
            out.append(Place.finite(x))
        else:
            raise TypeError(f"cannot interpret {x!r} as a place")
    return PlaceSet(out)


# ---------------------------------------------------------------------------
# valuations


def valuation(f, p: Place) -> int:
    f = rf(f)
    if not f:
        raise ValueError("valuation of zero is +infinity and is not represented")
    if p.is_infinite:
        return f.den.degree - f.num.degree
    if f.num.degree >= p.degree:
        k, _ = f.num.multiplicity(p.poly)
        if k:
            return k
    if f.den.degree >= p.degree:
        k, _ = f.den.multiplicity(p.poly)
        return -k
    return 0


def zero_order(f, p: Place) -> int:
    return max(0, valuation(f, p))


def pole_order(f, p: Place) -> int:
    return -min(0, valuation(f, p))


def support_places(poly: UniPoly) -> list[Place]:
    if poly.degree < 1:
        return []
    _, fs = factor_poly(poly)
    return [Place(g) for g, _ in fs]


def divisor(f) -> dict[Place, int]:
    """Full divisor of a nonzero element: place -> valuation (nonzero only)."""
    f = rf(f)
    if not f:
        raise ValueError("divisor of zero")
    out: dict[Place, int] = {}
    for poly, sign in ((f.num, 1), (f.den, -1)):
        if poly.degree >= 1:
            _, fs = factor_poly(poly)
            for g, m in fs:
                out[Place(g)] = sign * m
    v = f.den.degree - f.num.degree
    if v:
        out[INFINITY] = v
    return out


def height(f) -> int:
    """Degree of the pole divisor; equals max(deg num, deg den)."""
    f = rf(f)
    if not f:
        raise ValueError("height of zero")
    return max(f.num.degree, f.den.degree)


def strip_places(poly: UniPoly, S: PlaceSet) -> UniPoly:
    """Remove from poly every factor supported at a finite place of S."""
    for p in S.finite:
        if poly.degree >= p.degree:
            _, poly = poly.multiplicity(p.poly)
    return poly


def is_s_unit(f, S: PlaceSet) -> bool:
    f = rf(f)
    if not f:
        return False
    if strip_places(f.num, S).degree > 0 or strip_places(f.den, S).degree > 0:
        return False
    return S.has_infinity or f.num.degree == f.den.degree


def is_s_integer(f, S: PlaceSet) -> bool:
    f = rf(f)
    if not f:
        return True
    if strip_places(f.den, S).degree > 0:
        return False
    return S.has_infinity or f.den.degree >= f.num.degree


def chi_s(S: PlaceSet) -> int:
    """2g - 2 + |S| with genus 0."""
    return -2 + S.size


def chi_s_plus(S: PlaceSet) -> int:
    return max(0, chi_s(S))


# ---------------------------------------------------------------------------
# S-unit enumeration


def unit_from_exponents(S: PlaceSet, exps: Iterable[int]) -> RationalFunction:
    num, den = UniPoly.one(), UniPoly.one()
    for p, e in zip(S.finite, exps):
        if e > 0:
            num = num * p.poly**e
        elif e < 0:
            den = den * p.poly ** (-e)
    return RationalFunction._raw(num, den)


def enumerate_s_units(S: PlaceSet, H: int) -> list[RationalFunction]:
    """One monic representative per class of S-units modulo Q*, height <= H.

    Units are products of the finite places of S raised to integer powers;
    without infinity in S the weighted exponent sum must vanish.  Ordered by
    height, then exponent vector.
    """
    if H < 0:
        return []
    fin = S.finite
    ranges = [range(-(H // p.degree), H // p.degree + 1) for p in fin]
    found = []
    for exps in _cartesian(*ranges):
        pos = sum(e * p.degree for e, p in zip(exps, fin) if e > 0)
        neg = -sum(e * p.degree for e, p in zip(exps, fin) if e < 0)
        if not S.has_infinity and pos != neg:
            continue
        h = max(pos, neg)
        if h <= H:
            found.append((h, exps))
    found.sort()
    return [unit_from_exponents(S, e) for _, e in found]


def unit_count_bound(S: PlaceSet, H: int) -> int:
    return (2 * H + 1) ** S.size
