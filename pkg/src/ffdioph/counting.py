"""Counting functions, gcd counts and the Weil function of a form."""

from __future__ import annotations

from dataclasses import dataclass, field

from .heights import ProjectivePoint, coefficient_content, height_point, point_valuation, poly_height, poly_valuation
from .mpoly import MultiPolynomial
from .places import INFINITY, Place, PlaceSet, strip_places, support_places, valuation
from .poly import UniPoly, factor_poly, poly_gcd, squarefree_decomposition
from .ratfunc import rf


@dataclass(frozen=True)
class CountingBreakdown:
    contributions: dict[Place, int] = field(default_factory=dict)
    total: int = 0

    @classmethod
    def from_contributions(cls, contributions: dict[Place, int]) -> "CountingBreakdown":
        contributions = {p: c for p, c in sorted(contributions.items()) if c}
        return cls(contributions, sum(p.degree * c for p, c in contributions.items()))


def _cap(k: int, truncation: int | None) -> int:
    return k if truncation is None else min(k, truncation)


def count_zeros(f, S: PlaceSet, truncation: int | None = None) -> CountingBreakdown:
    """N_S(f), or N_S^(m)(f) when ``truncation`` is m, place by place."""
    f = rf(f)
    if not f:
        raise ValueError("counting zeros of the zero function")
    if truncation is not None and truncation < 1:
        raise ValueError("truncation must be a positive integer")
    contrib: dict[Place, int] = {}
    num = strip_places(f.num, S)
    if num.degree >= 1:
        for g, m in factor_poly(num)[1]:
            contrib[Place(g)] = _cap(m, truncation)
    if INFINITY not in S:
        v = f.den.degree - f.num.degree
        if v > 0:
            contrib[INFINITY] = _cap(v, truncation)
    return CountingBreakdown.from_contributions(contrib)


def zero_counts(f, S: PlaceSet, truncation: int = 1) -> tuple[int, int]:
    """(N_S(f), N_S^(m)(f)) without factoring, via squarefree decomposition."""
    f = rf(f)
    if not f:
        raise ValueError("counting zeros of the zero function")
    num = strip_places(f.num, S)
    full = num.degree if num.degree > 0 else 0
    cut = sum(g.degree * min(i, truncation) for g, i in squarefree_decomposition(num))
    if INFINITY not in S:
        v = f.den.degree - f.num.degree
        if v > 0:
            full += v
            cut += min(v, truncation)
    return full, cut


def _common_zero_part(f, g) -> tuple[UniPoly, int]:
    f, g = rf(f), rf(g)
    if not f or not g:
        raise ValueError("gcd counts need nonzero inputs")
    common = poly_gcd(f.num, g.num)
    v_inf = min(max(0, f.den.degree - f.num.degree), max(0, g.den.degree - g.num.degree))
    return common, v_inf


def count_gcd(f, g, S: PlaceSet) -> tuple[int, int]:
    """(N_{S,gcd}(f, g), h_gcd(f, g))."""
    common, v_inf = _common_zero_part(f, g)
    h_gcd = max(common.degree, 0) + v_inf
    off_s = strip_places(common, S)
    n = max(off_s.degree, 0) + (0 if INFINITY in S else v_inf)
    return n, h_gcd


def gcd_breakdown(f, g, S: PlaceSet) -> CountingBreakdown:
    common, v_inf = _common_zero_part(f, g)
    contrib = {}
    for p in support_places(strip_places(common, S)):
        contrib[p] = min(valuation(f, p), valuation(g, p))
    if v_inf and INFINITY not in S:
        contrib[INFINITY] = v_inf
    return CountingBreakdown.from_contributions(contrib)


# ---------------------------------------------------------------------------
# Weil functions of a hypersurface


def _check_form(F: MultiPolynomial, x: ProjectivePoint):
    if not F or not F.is_homogeneous():
        raise ValueError("a nonzero homogeneous form is required")
    if F.nvars != len(x):
        raise ValueError(f"form has {F.nvars} variables but the point has {len(x)} coordinates")
    value = rf(F.evaluate(list(x.coords)))
    if not value:
        raise ValueError(f"the point {x} lies on the divisor of {F}")
    return value


def weil_lambda(F: MultiPolynomial, x: ProjectivePoint, p: Place) -> int:
    value = _check_form(F, x)
    return valuation(value, p) - poly_valuation(F, p) - F.degree * point_valuation(x, p)


@dataclass(frozen=True)
class DivisorDecomposition:
    proximity: int
    counting: int
    truncated_counting: int | None
    lambdas: dict[Place, int]
    total: int


def divisor_decomposition(
    F: MultiPolynomial, x: ProjectivePoint, S: PlaceSet, truncation: int | None = None
) -> DivisorDecomposition:
    """(m_{D,S}, N_{D,S}, N^{(m)}_{D,S}) for D = [F = 0].

    lambda_p can only be nonzero where F(x) or a coefficient of F has a zero
    or pole, or at infinity (where the canonical coordinates may have poles).
    """
    value = _check_form(F, x)
    c, L, _ = coefficient_content(F)
    candidates = {INFINITY}
    for poly in (value.num, value.den, c, L):
        candidates.update(support_places(poly))
    candidates.update(S)
    lambdas = {}
    for p in sorted(candidates):
        lam = valuation(value, p) - poly_valuation(F, p) - F.degree * point_valuation(x, p)
        if lam:
            lambdas[p] = lam
    prox = sum(p.degree * v for p, v in lambdas.items() if p in S)
    cnt = sum(p.degree * v for p, v in lambdas.items() if p not in S)
    trunc = None
    if truncation is not None:
        trunc = sum(p.degree * min(v, truncation) for p, v in lambdas.items() if p not in S)
    return DivisorDecomposition(prox, cnt, trunc, lambdas, prox + cnt)


def weil_total(F: MultiPolynomial, x: ProjectivePoint) -> int:
    """Right side of the full-sum identity: deg F * h(x) + h(F)."""
    return F.degree * height_point(x) + poly_height(F)[0]
