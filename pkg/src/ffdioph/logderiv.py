"""The twisted derivative D_u, the A*B split, unit sums and unit relations."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Sequence

from .heights import poly_lcm, relevant_height
from .mpoly import MultiPolynomial
from .places import PlaceSet, chi_s, chi_s_plus, height, is_s_unit
from .poly import UniPoly, poly_resultant
from .ratfunc import RationalFunction, derive, rf

# explicit constants for  h~(D_u F) <= C1 * h~(F) + C2 * max(1, chi_S)  on P^1
DU_HEIGHT_C1 = 2
DU_HEIGHT_C2 = 3


class UnitTuple:
    """A tuple of S-units together with the set S they are units for."""

    __slots__ = ("entries", "S")

    def __init__(self, entries: Sequence, S: PlaceSet, check: bool = True):
        self.entries: tuple[RationalFunction, ...] = tuple(rf(u) for u in entries)
        self.S = S
        if check:
            for i, u in enumerate(self.entries):
                if not is_s_unit(u, S):
                    raise ValueError(f"entry {i} ({u}) is not an S-unit for S = {S}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def extended(self) -> "UnitTuple":
        """(1, u_1, ..., u_n), the affine chart x_0 = 1."""
        return UnitTuple((RationalFunction.const(1),) + self.entries, self.S, check=False)

    def monomial(self, m: Sequence[int]) -> RationalFunction:
        out = RationalFunction.const(1)
        for u, e in zip(self.entries, m):
            if e:
                out = out * u**e
        return out

    def __repr__(self) -> str:
        return "UnitTuple(" + ", ".join(u.to_str() for u in self.entries) + f"; S={self.S})"


def _entries(u) -> tuple[RationalFunction, ...]:
    return u.entries if isinstance(u, UnitTuple) else tuple(rf(x) for x in u)


def log_derivatives(u) -> list[RationalFunction]:
    out = []
    for x in _entries(u):
        if not x:
            raise ValueError("log derivative of zero")
        out.append(derive(x) / x)
    return out


def d_u(F: MultiPolynomial, u) -> MultiPolynomial:
    """Coefficient a_i becomes (a_i u^i)'/u^i = a_i' + a_i * sum_j i_j u_j'/u_j."""
    entries = _entries(u)
    if len(entries) != F.nvars:
        raise ValueError(f"polynomial has {F.nvars} variables, unit tuple has {len(entries)} entries")
    logs = log_derivatives(entries)
    out = {}
    for e, a in F.terms.items():
        c = derive(a)
        twist = RationalFunction()
        for k, l in zip(e, logs):
            if k and l:
                twist = twist + l * k
        if twist:
            c = c + a * twist
        if c:
            out[e] = c
    return MultiPolynomial._raw(F.nvars, out, F.names)


def du_height_bound(F: MultiPolynomial, S: PlaceSet) -> int:
    return DU_HEIGHT_C1 * relevant_height(F) + DU_HEIGHT_C2 * max(1, chi_s(S))


def _twisted_terms(P: MultiPolynomial, u) -> list[RationalFunction]:
    entries = _entries(u)
    out = []
    for e, a in P.terms.items():
        v = a
        for x, k in zip(entries, e):
            if k:
                v = v * x**k
        out.append(v)
    return out


def coprime_with_du(P: MultiPolynomial, u) -> bool:
    """For irreducible P: P and D_u(P) are coprime iff the twisted terms
    a_i u^i are not all constant multiples of each other."""
    terms = _twisted_terms(P, u)
    if len(terms) < 2:
        return False
    first = terms[0]
    return any(not (v / first).is_constant() for v in terms[1:])


# ---------------------------------------------------------------------------
# the A*B split and its coprimality certificate


def _lc(P: MultiPolynomial) -> RationalFunction:
    return P.leading_coefficient()


def _normalized(P: MultiPolynomial) -> MultiPolynomial:
    return P * _lc(P).inverse()


def _product(polys: Sequence[MultiPolynomial], nvars: int, names) -> MultiPolynomial:
    out = MultiPolynomial.constant(1, nvars, names)
    for P in polys:
        out = out * P
    return out


def _clear_to_polynomial(P: MultiPolynomial) -> MultiPolynomial:
    L = UniPoly.one()
    for c in P.terms.values():
        L = poly_lcm(L, c.den)
    return P * rf(L)


def _specialize_to_univariate(P: MultiPolynomial, k: int, t0: Fraction, values: dict[int, Fraction]) -> UniPoly:
    coeffs: dict[int, Fraction] = {}
    for e, c in P.terms.items():
        v = c.num(t0)
        for j, x in values.items():
            if e[j]:
                v *= x ** e[j]
        if v:
            coeffs[e[k]] = coeffs.get(e[k], Fraction(0)) + v
    top = max(coeffs, default=-1)
    return UniPoly([coeffs.get(i, 0) for i in range(top + 1)])


@dataclass(frozen=True)
class CoprimalityCertificate:
    certified: bool
    attempts: int  # specializations tried, summed over variables
    variables: tuple[int, ...]  # variables that needed a witness


def certify_coprime(A: MultiPolynomial, D: MultiPolynomial, repetitions: int = 8,
                    rng: random.Random | None = None) -> CoprimalityCertificate:
    """One-sided certificate that A and D share no nonconstant factor.

    A common factor would involve some variable x_k.  Specializing t and the
    other variables at random integers while keeping both x_k-degrees leaves
    it a common factor of the univariate images, so a nonzero univariate
    resultant rules out every common factor that involves x_k.
    """
    rng = rng or random.Random(0)
    if A.is_constant() and A:
        return CoprimalityCertificate(True, 0, ())
    if not D:
        return CoprimalityCertificate(False, 0, ())
    if D.is_constant():
        return CoprimalityCertificate(True, 0, ())
    Ap, Dp = _clear_to_polynomial(A), _clear_to_polynomial(D)
    needed = tuple(k for k in range(A.nvars) if Ap.degree_in(k) > 0 and Dp.degree_in(k) > 0)
    attempts = 0
    for k in needed:
        da, dd = Ap.degree_in(k), Dp.degree_in(k)
        ok = False
        for _ in range(repetitions):
            attempts += 1
            t0 = Fraction(rng.randint(-97, 97))
            vals = {j: Fraction(rng.randint(1, 97)) for j in range(A.nvars) if j != k}
            a = _specialize_to_univariate(Ap, k, t0, vals)
            d = _specialize_to_univariate(Dp, k, t0, vals)
            if a.degree != da or d.degree != dd:
                continue
            if poly_resultant(a, d) != 0:
                ok = True
                break
        if not ok:
            return CoprimalityCertificate(False, attempts, needed)
    return CoprimalityCertificate(True, attempts, needed)


@dataclass(frozen=True)
class SplitResult:
    A: MultiPolynomial
    B: MultiPolynomial
    a_factors: tuple[MultiPolynomial, ...]
    b_factors: tuple[MultiPolynomial, ...]
    certificate: CoprimalityCertificate


def split_ab(F: MultiPolynomial, irreducible_factors: Sequence[MultiPolynomial], u,
             repetitions: int = 8, seed: int = 0) -> SplitResult:
    """F = A * B with A coprime to D_u(F) and B(u) an S-unit or zero.

    B collects the factors P with P, D_u(P) not coprime, each scaled to
    leading coefficient 1; A keeps the rest and the leading coefficient of F.
    """
    if not F or not irreducible_factors:
        raise ValueError("need a nonzero F and at least one factor")
    normed = [_normalized(P) for P in irreducible_factors]
    if len(set(normed)) != len(normed):
        raise ValueError("factors are not distinct")
    prod = _product(irreducible_factors, F.nvars, F.names)
    if prod * (_lc(F) / _lc(prod)) != F:
        raise ValueError("the factors do not multiply back to F")
    a_f = [P for P, N in zip(irreducible_factors, normed) if coprime_with_du(P, u)]
    b_f = [N for P, N in zip(irreducible_factors, normed) if not coprime_with_du(P, u)]
    B = _product(b_f, F.nvars, F.names)
    A1 = _product(a_f, F.nvars, F.names)
    A = A1 * (_lc(F) / _lc(A1))
    cert = certify_coprime(A, d_u(F, u), repetitions, random.Random(seed))
    return SplitResult(A, B, tuple(a_f), tuple(b_f), cert)


# ---------------------------------------------------------------------------
# unit equations


@dataclass(frozen=True)
class UnitSumReport:
    subsum_vanishes: bool
    vanishing_subsum: tuple[int, ...] | None
    max_height: int
    bound: int
    within_bound: bool


def unit_sum_check(f: Sequence, S: PlaceSet) -> UnitSumReport:
    """Test the unit equation f_1 + ... + f_n = 1 against n(n-1)/2 * chi_S^+."""
    f = [rf(x) for x in f]
    if not f:
        raise ValueError("empty unit sum")
    for i, x in enumerate(f):
        if not is_s_unit(x, S):
            raise ValueError(f"term {i} ({x}) is not an S-unit")
    total = RationalFunction()
    for x in f:
        total = total + x
    if total != 1:
        raise ValueError(f"terms sum to {total}, not 1")
    n = len(f)
    witness = None
    for r in range(2, n):
        for idx in combinations(range(n), r):
            s = RationalFunction()
            for i in idx:
                s = s + f[i]
            if not s:
                witness = idx
                break
        if witness:
            break
    mh = max(height(x) for x in f)
    bound = n * (n - 1) // 2 * chi_s_plus(S)
    return UnitSumReport(witness is not None, witness, mh, bound, mh <= bound)


@dataclass(frozen=True)
class RelationResult:
    m: tuple[int, ...]
    height: int
    bound: Fraction


def relation_bound(F: MultiPolynomial, S: PlaceSet) -> Fraction:
    """2 h~(F) + (I-1)(I-2)/2 * max(0, -2 + |S| + 2 I h~(F)), I = C(deg F + n, n)."""
    hF = relevant_height(F)
    I = comb(F.degree + F.nvars, F.nvars)
    return Fraction(2 * hF) + Fraction((I - 1) * (I - 2), 2) * max(0, -2 + S.size + 2 * I * hF)


def relation_candidates(n: int, total: int):
    """Nonzero integer vectors with sum |m_i| <= total whose first nonzero
    entry is positive (m and -m give the same height)."""
    rng = range(-total, total + 1)
    for m in product(rng, repeat=n):
        s = sum(abs(x) for x in m)
        if s == 0 or s > total:
            continue
        if next(x for x in m if x) < 0:
            continue
        yield m


def unit_relation_search(F: MultiPolynomial, u: UnitTuple, total: int | None = None) -> RelationResult | None:
    """Relation u^m of least height among sum |m_i| <= 2 deg F.

    Ties prefer differences of support exponents of F, then the
    lexicographically smallest normalized m.
    """
    if len(u) != F.nvars:
        raise ValueError("arity mismatch")
    if rf(F.evaluate(list(u.entries))):
        raise ValueError("F(u) is not zero")
    total = 2 * F.degree if total is None else total
    # differences i - j of support exponents are the relations the unit
    # equation itself produces; they win ties in height
    support = list(F.terms)
    diffs = {tuple(a - b for a, b in zip(i, j)) for i in support for j in support}
    best = None
    for m in relation_candidates(F.nvars, total):
        key = (height(u.monomial(m)), m not in diffs, m)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return RelationResult(best[2], best[0], relation_bound(F, u.S))


def best_relation(u: UnitTuple, total: int) -> tuple[tuple[int, ...], int] | None:
    best = None
    for m in relation_candidates(len(u), total):
        h = height(u.monomial(m))
        if best is None or (h, m) < best:
            best = (h, m)
    return None if best is None else (best[1], best[0])


# ---------------------------------------------------------------------------
# logarithmic 1-forms


class LogOneForm:
    """m_1 dx_1/x_1 + ... + m_n dx_n/x_n - d alpha/alpha."""

    __slots__ = ("exponents", "alpha")

    def __init__(self, exponents: Sequence[int], alpha, S: PlaceSet | None = None):
        self.exponents = tuple(int(m) for m in exponents)
        if not any(self.exponents):
            raise ValueError("exponent vector must be nonzero")
        self.alpha = rf(alpha)
        if not self.alpha:
            raise ValueError("alpha must be nonzero")
        if S is not None and not is_s_unit(self.alpha, S):
            raise ValueError(f"alpha = {self.alpha} is not an S-unit")

    def __repr__(self) -> str:
        return f"LogOneForm(m={self.exponents}, alpha={self.alpha})"


def eval_log_form(w: LogOneForm, u) -> RationalFunction:
    entries = _entries(u)
    if len(entries) != len(w.exponents):
        raise ValueError("arity mismatch")
    out = -(derive(w.alpha) / w.alpha)
    for m, l in zip(w.exponents, log_derivatives(entries)):
        if m:
            out = out + l * m
    return out
