"""Exceptional sets for G(1, u_1, u_2) with u_1, u_2 S-units.

For a pair (m1, m2) the substitution X = L^a T^m2, Y = L^b T^-m1 turns G into
T^M1 L^M2 B(L, T).  Values lambda of u_1^m1 u_2^m2 at which B(lambda, T)
acquires a repeated root (zeros of Res_T(B, dB/dT)) or drops degree (roots of
the top form) are where the abc-type inequality may fail.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .hypotheses import certify_squarefree, monomial_divisors
from .mpoly import MultiPolynomial, dehomogenize, homogenize
from .places import PlaceSet
from .poly import (
    UniPoly,
    dense_derivative,
    dense_eval,
    dense_gcd,
    dense_resultant,
    dense_strip,
    factor_poly,
    interpolate,
    poly_gcd,
)
from .ratfunc import RationalFunction, rf

BL_NAMES = ("L", "T")


class HypothesisError(ValueError):
    """G fails a standing hypothesis (monomial factor, repeated factor)."""


@dataclass(frozen=True)
class PairNormalization:
    m1: int
    m2: int
    a: int
    b: int
    swapped: bool
    negated: bool
    original: tuple[int, int]

    @property
    def curve_exponents(self) -> tuple[int, int]:
        """Exponents of the curve in the original variable order, with the
        normalized sign; lambda is u_1^e1 u_2^e2 for these exponents."""
        return (self.m2, self.m1) if self.swapped else (self.m1, self.m2)


def normalize_pair(m1: int, m2: int) -> PairNormalization:
    if m1 == 0 and m2 == 0:
        raise ValueError("(m1, m2) must not be (0, 0)")
    g = gcd(m1, m2)
    n1, n2 = m1 // g, m2 // g
    negated = swapped = False
    if n1 * n2 >= 0:
        if n1 <= 0 and n2 <= 0:
            n1, n2, negated = -n1, -n2, True
        if n1 > n2:
            n1, n2, swapped = n2, n1, True
    else:
        if n2 < 0:
            n1, n2, negated = -n1, -n2, True
        if n2 > -n1:
            n1, n2 = -n2, -n1
            swapped, negated = True, not negated
    if n1 == 0:
        a, b = 0, 1
    else:
        k = abs(n1)
        b = next(b for b in range(1, k + 1) if (n2 * b - 1) % k == 0)
        a = (1 - n2 * b) // n1
    assert n1 * a + n2 * b == 1
    return PairNormalization(n1, n2, a, b, swapped, negated, (m1, m2))


# ---------------------------------------------------------------------------
# substitution


@dataclass(frozen=True)
class SubstitutionResult:
    B: MultiPolynomial  # variables (L, T)
    M1: int
    M2: int
    norm: PairNormalization

    @property
    def degree_T(self) -> int:
        return self.B.degree_in(1)

    @property
    def degree_L(self) -> int:
        return self.B.degree_in(0)

    def t_coefficients(self) -> list[dict[int, RationalFunction]]:
        """B as a list over powers of T of {L-exponent: coefficient}."""
        out: list[dict[int, RationalFunction]] = [{} for _ in range(self.degree_T + 1)]
        for (i, j), c in self.B.terms.items():
            out[j][i] = c
        return out

    def l_coefficients(self) -> list[RationalFunction]:
        """B as a polynomial in L when it does not involve T."""
        part = self.t_coefficients()[0]
        return [part.get(i, RationalFunction()) for i in range(max(part) + 1)]

    def specialize(self, lam) -> list:
        """Coefficients (lowest first) of B(lam, T)."""
        coeffs = []
        for part in self.t_coefficients():
            acc = 0
            for i, c in part.items():
                acc = c * lam**i + acc
            coeffs.append(acc)
        return dense_strip(coeffs)


def as_affine(G: MultiPolynomial) -> MultiPolynomial:
    """Ternary forms are dehomogenized at x0; bivariate input is kept."""
    if G.nvars == 3:
        if not G.is_homogeneous():
            raise ValueError("a ternary G must be homogeneous")
        return dehomogenize(G, 0, ("X", "Y"))
    if G.nvars == 2:
        return G.with_names(("X", "Y"))
    raise ValueError(f"G must be in (X, Y) or (x0, x1, x2), got {G.nvars} variables")


def check_g(G: MultiPolynomial, repetitions: int = 8, seed: int = 0) -> MultiPolynomial:
    """Validate the standing hypotheses and return the affine G(X, Y)."""
    Ga = as_affine(G)
    if Ga.is_constant():
        raise HypothesisError("G is constant")
    Gh = homogenize(Ga)
    divs = [i for i in monomial_divisors(Gh) if i > 0]
    if divs:
        raise HypothesisError("G has a monomial factor: " + ", ".join(Ga.names[i - 1] for i in divs))
    if not certify_squarefree(Gh, repetitions, random.Random(seed)):
        raise HypothesisError("G is not certified squarefree")
    return Ga


def substitute_b(G: MultiPolynomial, norm: PairNormalization, validate: bool = True) -> SubstitutionResult:
    Ga = check_g(G) if validate else as_affine(G)
    if norm.swapped:
        Ga = MultiPolynomial._raw(2, {(j, i): c for (i, j), c in Ga.terms.items()}, Ga.names)
    raw = {}
    for (i, j), c in Ga.terms.items():
        key = (norm.a * i + norm.b * j, norm.m2 * i - norm.m1 * j)
        raw[key] = raw[key] + c if key in raw else c
    raw = {k: c for k, c in raw.items() if c}
    M2 = min(k[0] for k in raw)
    M1 = min(k[1] for k in raw)
    B = MultiPolynomial._raw(2, {(l - M2, s - M1): c for (l, s), c in raw.items()}, BL_NAMES)
    if B.is_constant():
        raise HypothesisError("B(L, T) is constant; G has a monomial factor")
    return SubstitutionResult(B, M1, M2, norm)


def substitution_identity_holds(G: MultiPolynomial, sub: SubstitutionResult) -> bool:
    """Check G(L^a T^m2, L^b T^-m1) = T^M1 L^M2 B(L, T) term by term."""
    Ga = as_affine(G)
    n = sub.norm
    if n.swapped:
        Ga = MultiPolynomial._raw(2, {(j, i): c for (i, j), c in Ga.terms.items()}, Ga.names)
    lhs: dict = {}
    for (i, j), c in Ga.terms.items():
        key = (n.a * i + n.b * j, n.m2 * i - n.m1 * j)
        lhs[key] = lhs[key] + c if key in lhs else c
    lhs = {k: c for k, c in lhs.items() if c}
    rhs = {(l + sub.M2, s + sub.M1): c for (l, s), c in sub.B.terms.items()}
    return lhs == rhs


def b_is_squarefree(sub: SubstitutionResult) -> bool:
    """B squarefree: its content in L and its primitive part in Q(L)[T]."""
    B = sub.B
    if not B.has_constant_coefficients():
        return certify_squarefree(homogenize(B))
    coeffs = [_l_poly(part) for part in sub.t_coefficients()]
    content = None
    for c in coeffs:
        if c:
            content = c if content is None else poly_gcd(content, c)
    if content is not None and content.degree > 0:
        if poly_gcd(content, content.derivative()).degree > 0:
            return False
    if sub.degree_T < 1:
        return True
    as_rf = [RationalFunction._raw(c, UniPoly.one()) if c else RationalFunction() for c in coeffs]
    g = dense_gcd(as_rf, dense_derivative(as_rf))
    return len(g) == 1


def _l_poly(part: dict[int, RationalFunction]) -> UniPoly:
    top = max(part, default=-1)
    return UniPoly([part[i].constant_value() if i in part else 0 for i in range(top + 1)])


# ---------------------------------------------------------------------------
# lambda constraints


@dataclass(frozen=True)
class LambdaConstraint:
    """Admissible lambda are the roots of ``coefficients`` (lowest degree
    first, entries in Q(t)); ``rational`` marks constant coefficients."""

    coefficients: tuple[RationalFunction, ...]
    source: str  # "resultant", "top_form" or "g_factor"
    multiplicity: int = 1

    @property
    def rational(self) -> bool:
        return all(c.is_constant() for c in self.coefficients)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def as_unipoly(self) -> UniPoly:
        return UniPoly([c.constant_value() for c in self.coefficients])

    def root_value(self) -> Fraction | None:
        if self.rational and self.degree == 1:
            c0, c1 = (c.constant_value() for c in self.coefficients)
            return -c0 / c1
        return None

    def admits(self, lam: RationalFunction) -> bool:
        lam = rf(lam)
        if self.rational and not lam.is_constant():
            return False
        return not dense_eval(list(self.coefficients), lam)

    def to_str(self, var: str = "L") -> str:
        if self.rational:
            return self.as_unipoly().to_str(var)
        parts = []
        for i, c in enumerate(self.coefficients):
            if c:
                mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
                parts.append(f"({c.to_str()})" + (f"*{mono}" if mono else ""))
        return " + ".join(reversed(parts)) or "0"


def _constraints_from_poly(coeffs: list, source: str) -> list[LambdaConstraint]:
    """Factor over Q when possible, drop factors L, return constraints."""
    coeffs = dense_strip([rf(c) for c in coeffs])
    while coeffs and not coeffs[0]:
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return []
    if all(c.is_constant() for c in coeffs):
        _, fs = factor_poly(UniPoly([c.constant_value() for c in coeffs]))
        return [
            LambdaConstraint(tuple(RationalFunction.const(x) for x in f.coeffs), source, m)
            for f, m in fs
            if f.coeffs != (0, 1)
        ]
    lc = coeffs[-1]
    return [LambdaConstraint(tuple(c / lc for c in coeffs), source, 1)]


@dataclass(frozen=True)
class ResultantLocus:
    R: tuple[RationalFunction, ...]  # Res_T(B, dB/dT) as a polynomial in L
    lambda_power: int  # power of L stripped from R
    constraints: tuple[LambdaConstraint, ...]

    @property
    def roots(self) -> list[Fraction]:
        return [c.root_value() for c in self.constraints if c.root_value() is not None]

    def r_unipoly(self) -> UniPoly:
        return UniPoly([c.constant_value() for c in self.R])


def resultant_locus(sub: SubstitutionResult) -> ResultantLocus:
    """Res_T(B, dB/dT) as a polynomial in L by evaluation and interpolation.

    At points where the T-leading coefficient survives, the resultant of the
    specialization equals the specialization of the resultant, so
    (2n - 1) deg_L B + 1 such points determine it.
    """
    n = sub.degree_T
    if n < 1:
        raise ValueError("B is constant in T")
    parts = sub.t_coefficients()
    lead = parts[n]
    constant = sub.B.has_constant_coefficients()
    need = (2 * n - 1) * sub.degree_L + 1
    xs, ys = [], []
    x = 0
    while len(xs) < need:
        x += 1
        lam = Fraction(x)
        if not _eval_part(lead, lam, constant):
            continue
        b = [_eval_part(p, lam, constant) for p in parts]
        xs.append(lam)
        ys.append(dense_resultant(b, dense_derivative(b)))
    R = dense_strip(interpolate(xs, ys)) if need > 1 else dense_strip(ys)
    R = tuple(rf(c) for c in R)
    k = 0
    while k < len(R) - 1 and not R[k]:
        k += 1
    return ResultantLocus(R, k, tuple(_constraints_from_poly(list(R), "resultant")))


def _eval_part(part: dict[int, RationalFunction], lam: Fraction, constant: bool):
    acc = Fraction(0) if constant else RationalFunction()
    for i, c in part.items():
        v = c.constant_value() if constant else c
        acc = acc + v * lam**i
    return acc


def top_form_roots(G: MultiPolynomial) -> list[LambdaConstraint]:
    """Factors of G_d(1, s), d = deg G."""
    Ga = as_affine(G)
    if Ga.is_constant():
        raise ValueError("G must be nonconstant")
    d = Ga.degree
    coeffs = [RationalFunction()] * (d + 1)
    for (i, j), c in Ga.homogeneous_part(d).terms.items():
        coeffs[j] = c
    return _constraints_from_poly(coeffs, "top_form")


def top_form_polynomial(G: MultiPolynomial) -> list[RationalFunction]:
    Ga = as_affine(G)
    d = Ga.degree
    coeffs = [RationalFunction()] * (d + 1)
    for (i, j), c in Ga.homogeneous_part(d).terms.items():
        coeffs[j] = c
    return dense_strip(coeffs)


def predicted_degree_T(norm: PairNormalization, d: int) -> int:
    if norm.m1 >= 0:
        return (norm.m1 + norm.m2) * d
    return max(-norm.m1, norm.m2) * d


# ---------------------------------------------------------------------------
# assembly


@dataclass(frozen=True)
class CurveRecord:
    """The curve x1^e1 x2^e2 = lambda x0^(e1+e2) with lambda a root of the
    constraint."""

    exponents: tuple[int, int]
    constraint: LambdaConstraint
    pair: PairNormalization

    def describe(self) -> str:
        """Readable equation with every exponent moved to the positive side."""
        e1, e2 = self.exponents
        left = {"x0": 0, "x1": max(e1, 0), "x2": max(e2, 0)}
        right = {"x0": 0, "x1": max(-e1, 0), "x2": max(-e2, 0)}
        if e1 + e2 >= 0:
            right["x0"] = e1 + e2
        else:
            left["x0"] = -(e1 + e2)
        v = self.constraint.root_value()
        lam = str(v) if v is not None else f"L where {self.constraint.to_str()} = 0"
        rhs = _monomial_text(right)
        return f"{_monomial_text(left)} = {lam}" + (f"*{rhs}" if rhs != "1" else "")


def _monomial_text(exps: dict[str, int]) -> str:
    parts = [name if e == 1 else f"{name}^{e}" for name, e in sorted(exps.items()) if e]
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class PairData:
    pair: PairNormalization
    substitution: SubstitutionResult
    resultant: ResultantLocus | None
    top_form: tuple[LambdaConstraint, ...]


@dataclass(frozen=True)
class ExceptionalSetDescription:
    G: MultiPolynomial
    m_bound: int
    S: PlaceSet
    curves: tuple[CurveRecord, ...]
    pairs: tuple[PairData, ...]
    includes_G_zero_locus: bool = True
    defined_over_k: bool = True
    height_threshold_note: dict = field(default_factory=dict)

    def pair(self, e1: int, e2: int) -> PairData:
        for p in self.pairs:
            if p.pair.curve_exponents == (e1, e2):
                return p
        raise KeyError((e1, e2))


def normalized_pairs(m_bound: int) -> list[PairNormalization]:
    seen = {}
    for m1 in range(-m_bound, m_bound + 1):
        for m2 in range(-m_bound, m_bound + 1):
            if (m1, m2) == (0, 0) or abs(m1) + abs(m2) > m_bound:
                continue
            norm = normalize_pair(m1, m2)
            seen.setdefault(norm.curve_exponents, norm)
    return [seen[k] for k in sorted(seen)]


def build_exceptional_set(G: MultiPolynomial, m_bound: int, S: PlaceSet, threshold_note: dict | None = None
                          ) -> ExceptionalSetDescription:
    if m_bound < 1:
        raise ValueError("m_bound must be positive")
    Ga = check_g(G)
    curves: list[CurveRecord] = []
    pairs: list[PairData] = []
    top = tuple(top_form_roots(Ga))
    for norm in normalized_pairs(m_bound):
        sub = substitute_b(Ga, norm, validate=False)
        res = None
        found: list[LambdaConstraint] = []
        if sub.degree_T >= 1:
            res = resultant_locus(sub)
            found.extend(res.constraints)
        else:
            found.extend(_constraints_from_poly(sub.l_coefficients(), "g_factor"))
        delta = top if (norm.m1, norm.m2) == (-1, 1) else ()
        found.extend(delta)
        pairs.append(PairData(norm, sub, res, delta))
        merged: dict[tuple, LambdaConstraint] = {}
        for c in found:
            prev = merged.get(c.coefficients)
            if prev is not None:
                c = LambdaConstraint(c.coefficients, f"{prev.source}+{c.source}", max(prev.multiplicity, c.multiplicity))
            merged[c.coefficients] = c
        curves.extend(CurveRecord(norm.curve_exponents, c, norm) for c in merged.values())
    over_k = Ga.has_constant_coefficients()
    return ExceptionalSetDescription(
        G, m_bound, S, tuple(curves), tuple(pairs), True, over_k, dict(threshold_note or {})
    )


@dataclass(frozen=True)
class Membership:
    member: bool
    witness: CurveRecord | None
    on_divisor: bool


def member(x, desc: ExceptionalSetDescription) -> Membership:
    """Is [1 : u1 : u2] on the zero locus of G or on one of the curves?"""
    coords = [rf(c) for c in x]
    if len(coords) != 3 or not coords[0]:
        raise ValueError("expected a point [x0 : x1 : x2] with x0 != 0")
    u1, u2 = coords[1] / coords[0], coords[2] / coords[0]
    if not u1 or not u2:
        raise ValueError("the point must lie on the torus (u1, u2 nonzero)")
    Ga = as_affine(desc.G)
    if not rf(Ga.evaluate([u1, u2])):
        return Membership(True, None, True)
    for curve in desc.curves:
        e1, e2 = curve.exponents
        lam = u1**e1 * u2**e2
        if curve.constraint.admits(lam):
            return Membership(True, curve, False)
    return Membership(False, None, False)


def lambda_values(desc: ExceptionalSetDescription, exponents: Sequence[int], source: str | None = None) -> list:
    out = []
    for c in desc.curves:
        if tuple(c.exponents) == tuple(exponents) and (source is None or c.constraint.source == source):
            v = c.constraint.root_value()
            out.append(v if v is not None else c.constraint)
    return out
