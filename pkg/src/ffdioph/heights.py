"""Projective points over Q(t) and heights of points and polynomials."""

from __future__ import annotations

from typing import Sequence

from .mpoly import MultiPolynomial
from .places import INFINITY, Place, support_places, valuation
from .poly import UniPoly, poly_gcd
from .ratfunc import RationalFunction, rf


def poly_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.degree <= 0:
        return b.monic()
    if b.degree <= 0:
        return a.monic()
    return (a * (b // poly_gcd(a, b))).monic()


def clear_denominators(values: Sequence[RationalFunction]) -> list[UniPoly]:
    """Scale by a common Q(t) factor so the values become coprime polynomials."""
    vals = [rf(v) for v in values]
    L = UniPoly.one()
    for v in vals:
        if v:
            L = poly_lcm(L, v.den)
    polys = [v.num * (L // v.den) if v else UniPoly() for v in vals]
    g = None
    for p in polys:
        if p:
            g = p if g is None else poly_gcd(g, p)
            if g.degree == 0:
                break
    if g is not None and g.degree > 0:
        polys = [p // g for p in polys]
    return polys


class ProjectivePoint:
    """[f_0 : ... : f_n] in P^n(Q(t)), stored in canonical form.

    Canonical coordinates are coprime polynomials whose first nonzero entry
    is monic, so two scalings of the same point compare equal.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        if len(coords) < 2:
            raise ValueError("a projective point needs at least two coordinates")
        polys = clear_denominators(coords)
        lead = next((p for p in polys if p), None)
        if lead is None:
            raise ValueError("all coordinates are zero")
        s = 1 / lead.lc
        self.coords: tuple[RationalFunction, ...] = tuple(
            RationalFunction._raw(p * s, UniPoly.one()) for p in polys
        )

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjectivePoint) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def affine(self, i: int = 0) -> tuple[RationalFunction, ...]:
        """Coordinates divided by the i-th one (which must be nonzero)."""
        c = self.coords[i]
        if not c:
            raise ZeroDivisionError(f"coordinate {i} vanishes")
        return tuple(x / c for j, x in enumerate(self.coords) if j != i)

    def __str__(self) -> str:
        return "[" + " : ".join(c.to_str() for c in self.coords) + "]"

    def __repr__(self) -> str:
        return f"ProjectivePoint({self})"


def point_valuation(x: ProjectivePoint, p: Place) -> int:
    """min_i v_p(x_i) over nonzero coordinates."""
    return min(valuation(c, p) for c in x.coords if c)


def height_point(x: ProjectivePoint) -> int:
    """sum_p deg(p) * (-min_i v_p(x_i)).

    In canonical form the coordinates are coprime polynomials, so only the
    place at infinity contributes and the height is the largest degree.
    """
    return max(c.num.degree for c in x.coords if c)


# ---------------------------------------------------------------------------
# heights of polynomials


def poly_valuation(F: MultiPolynomial, p: Place) -> int:
    if not F:
        raise ValueError("valuation of the zero polynomial")
    return min(valuation(c, p) for c in F.terms.values())


def coefficient_content(F: MultiPolynomial) -> tuple[UniPoly, UniPoly, int]:
    """(c, L, v_inf) with v_p(F) = v_p(c) - v_p(L) at every finite p,
    c and L coprime monic, and v_inf = v_infinity(F)."""
    if not F:
        raise ValueError("content of the zero polynomial")
    coeffs = list(F.terms.values())
    L = UniPoly.one()
    for a in coeffs:
        L = poly_lcm(L, a.den)
    c = None
    for a in coeffs:
        q = a.num * (L // a.den)
        c = q if c is None else poly_gcd(c, q)
    c = c.monic()
    g = poly_gcd(c, L)
    if g.degree > 0:
        c, L = c // g, L // g
    v_inf = min(a.den.degree - a.num.degree for a in coeffs)
    return c, L, v_inf


def poly_height(F: MultiPolynomial) -> tuple[int, int]:
    """(h(F), relevant height) computed from the coefficient content.

    h(F) = -sum_p deg(p) v_p(F); the relevant height keeps only the places
    where v_p(F) < 0.
    """
    c, L, v_inf = coefficient_content(F)
    h = L.degree - c.degree - v_inf
    relevant = L.degree + max(0, -v_inf)
    return h, relevant


def relevant_height(F: MultiPolynomial) -> int:
    return poly_height(F)[1]


def coefficient_places(F: MultiPolynomial) -> list[Place]:
    """Places where v_p(F) can be nonzero (always includes infinity)."""
    c, L, _ = coefficient_content(F)
    return sorted(set(support_places(c)) | set(support_places(L)) | {INFINITY})
