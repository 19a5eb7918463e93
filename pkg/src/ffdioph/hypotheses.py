"""Hypothesis checks on a form G: monomial factors, squarefreeness, and
nonvanishing at the coordinate points."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .heights import poly_lcm
from .mpoly import MultiPolynomial
from .poly import UniPoly, poly_gcd
from .ratfunc import rf


@dataclass(frozen=True)
class HypothesisReport:
    no_monomial_factor: bool
    squarefree: bool
    nonvanishing_at_coordinate_points: bool
    failures: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures


def clear_coefficients(F: MultiPolynomial) -> MultiPolynomial:
    """Multiply by the lcm of the coefficient denominators."""
    L = UniPoly.one()
    for c in F.terms.values():
        L = poly_lcm(L, c.den)
    return F if L.degree == 0 else F * rf(L)


def line_restriction(F: MultiPolynomial, t0: Fraction, p, q) -> UniPoly:
    """F(p + s q) with t = t0, as a polynomial in s; F must have
    polynomial coefficients."""
    out = UniPoly()
    lines = [UniPoly([a, b]) for a, b in zip(p, q)]
    for e, c in F.terms.items():
        term = UniPoly.const(c.num(t0))
        for line, k in zip(lines, e):
            if k:
                term = term * line**k
        out = out + term
    return out


def certify_squarefree(F: MultiPolynomial, repetitions: int = 8, rng: random.Random | None = None) -> bool:
    """One-sided: True means F is certainly squarefree over the algebraic
    closure of Q(t).

    If F = H^2 K then every restriction to a line along which the degree
    survives keeps the square factor, so a squarefree restriction of full
    degree is a proof.
    """
    rng = rng or random.Random(0)
    if F.is_constant():
        return bool(F)
    Fc = clear_coefficients(F)
    d = F.degree
    top = Fc.homogeneous_part(d)
    for _ in range(repetitions):
        t0 = Fraction(rng.randint(-97, 97))
        p = [Fraction(rng.randint(-97, 97)) for _ in range(F.nvars)]
        q = [Fraction(rng.randint(-97, 97)) for _ in range(F.nvars)]
        lead = sum((c.num(t0) * _mono(q, e) for e, c in top.terms.items()), Fraction(0))
        if not lead:
            continue
        g = line_restriction(Fc, t0, p, q)
        if g.degree != d:
            continue
        if poly_gcd(g, g.derivative()).degree == 0:
            return True
    return False


def _mono(values, e) -> Fraction:
    out = Fraction(1)
    for v, k in zip(values, e):
        if k:
            out *= v**k
    return out


def monomial_divisors(F: MultiPolynomial) -> list[int]:
    """Indices i with x_i dividing F."""
    return [i for i, k in enumerate(F.monomial_content()) if k]


def validate_hypotheses(G: MultiPolynomial, repetitions: int = 8, seed: int = 0) -> HypothesisReport:
    if not G or not G.is_homogeneous():
        raise ValueError("a nonzero homogeneous form is required")
    failures = []
    divs = monomial_divisors(G)
    if divs:
        failures.append("monomial factor: " + ", ".join(G.names[i] for i in divs) + " divides G")
    sqf = certify_squarefree(G, repetitions, random.Random(seed))
    if not sqf:
        failures.append("squarefreeness not certified (G appears to have a repeated factor)")
    d = G.degree
    zeros = []
    for i in range(G.nvars):
        e = tuple(d if j == i else 0 for j in range(G.nvars))
        if not G.coefficient(e):
            zeros.append(i)
    if zeros:
        failures.append("G vanishes at coordinate point(s) " + ", ".join(_coordinate_point(i, G.nvars) for i in zeros))
    return HypothesisReport(not divs, sqf, not zeros, tuple(failures))


def _coordinate_point(i: int, n: int) -> str:
    return "[" + ":".join("1" if j == i else "0" for j in range(n)) + "]"
