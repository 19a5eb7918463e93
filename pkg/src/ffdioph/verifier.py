"""Inequality chains and margins on explicit points.

Three pipelines live here: the abc-type report for G(1, u) at an S-unit point,
the gcd conclusions for F(g), G(g), and the ramified cover of P^n minus a
divisor D = D_1 + ... + D_{n+1}.

The theorems behind these quantities carry constants nobody has made explicit,
so nothing here claims "verified".  Reports hold exact margins plus a
classification.  The height thresholds used for classification are the
package's own conservative choices and are documented as such.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .counting import count_gcd, divisor_decomposition, zero_counts
from .exceptional import ExceptionalSetDescription, HypothesisError, build_exceptional_set, member
from .geometry import (
    FormSystem,
    general_position_by_specialization,
    general_position_n2,
    jacobian_form,
    specialize,
    transversal_n2,
)
from .heights import ProjectivePoint, coefficient_places, height_point, poly_valuation, relevant_height
from .hypotheses import HypothesisReport, validate_hypotheses
from .logderiv import LogOneForm, UnitTuple, best_relation, d_u, eval_log_form
from .mpoly import MultiPolynomial
from .places import Place, PlaceSet, chi_s, chi_s_plus, height, is_s_unit
from .ratfunc import RationalFunction, derive, rf

__all__ = [
    "Classification",
    "VerificationReport",
    "abc_threshold",
    "abc_report",
    "GcdConclusionReport",
    "gcd_height_floor",
    "gcd_conclusion_report",
    "RamifiedCoverSpec",
    "RamifiedCoverReport",
    "NonIntegralPoint",
    "ramified_cover_report",
    "validate_hypotheses",
]


@dataclass(frozen=True)
class Classification:
    kind: str  # generic | exceptional | low_height | hypothesis_failure
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    point: ProjectivePoint
    epsilon: Fraction
    degree: int
    h_u: int
    vh_G: int
    chi_S: int
    value: RationalFunction
    on_divisor: bool
    N: int
    N1: int
    n_gcd: int
    chain_holds: bool
    identity_holds: bool
    margin_a: Fraction
    margin_b: Fraction
    threshold: Fraction
    hypotheses: HypothesisReport
    classification: Classification

    @property
    def excess(self) -> int:
        return self.N - self.N1


def abc_threshold(G: MultiPolynomial, S: PlaceSet, epsilon: Fraction) -> Fraction:
    """Height below which a point counts as low_height.

    ((2d+1) h~(G) + d(d+1)/2 * max(1, chi_S)) / epsilon.  Not a constant from
    any proof; it scales the way the proven thresholds do (linearly in the
    height of G and chi_S, inversely in epsilon).
    """
    d = G.degree
    num = (2 * d + 1) * relevant_height(G) + Fraction(d * (d + 1), 2) * max(1, chi_s(S))
    return Fraction(num) / epsilon


def _positive(epsilon) -> Fraction:
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be a positive rational")
    return eps


def abc_report(
    G: MultiPolynomial,
    u: UnitTuple,
    S: PlaceSet,
    epsilon,
    desc: ExceptionalSetDescription | None = None,
    log_forms: Sequence[LogOneForm] = (),
    m_bound: int | None = None,
    repetitions: int = 8,
    seed: int = 0,
    classify: bool = True,
) -> VerificationReport:
    """Counts, margins and classification for G at [1 : u_1 : ... : u_n].

    With ``classify`` false the exceptional-set construction is skipped
    (useful for bulk runs that only need the chain inequality); the
    classification then only distinguishes low_height from generic.
    """
    eps = _positive(epsilon)
    if not G or not G.is_homogeneous():
        raise ValueError("G must be a nonzero homogeneous form")
    if G.nvars != len(u) + 1:
        raise ValueError(f"G has {G.nvars} variables but u has {len(u)} entries")
    ue = u.extended()
    point = ProjectivePoint(ue.entries)
    hyp = validate_hypotheses(G, repetitions, seed)
    value = rf(G.evaluate(list(ue.entries)))
    h = height_point(point)
    vh = relevant_height(G)
    chi = chi_s(S)
    threshold = abc_threshold(G, S, eps)
    d = G.degree

    if not value:
        # on the divisor: counts are undefined, the point is exceptional by definition
        cls = Classification("hypothesis_failure", "; ".join(hyp.failures)) if not hyp.ok \
            else Classification("exceptional", "G = 0")
        return VerificationReport(point, eps, d, h, vh, chi, value, True, 0, 0, 0, True, True,
                                  Fraction(0), Fraction(0), threshold, hyp, cls)

    N, N1 = zero_counts(value, S, 1)
    D = d_u(G, ue)
    dval = rf(D.evaluate(list(ue.entries)))
    identity = dval == derive(value)
    if dval:
        n_gcd = count_gcd(value, dval, S)[0]
    else:
        # gcd with 0 is the function itself
        n_gcd = N
    chain = N - N1 <= n_gcd
    margin_a = eps * h - (N - N1)
    margin_b = N1 - (d - eps) * h

    if not hyp.ok:
        cls = Classification("hypothesis_failure", "; ".join(hyp.failures))
    else:
        cls = None
        if classify and len(u) == 2:
            if desc is None:
                desc = build_exceptional_set(G, m_bound or 2 * d, S)
            mem = member(point.coords, desc)
            if mem.member:
                cls = Classification("exceptional", "G = 0" if mem.on_divisor else mem.witness.describe())
        elif classify:
            for w in log_forms:
                if not eval_log_form(w, u):
                    cls = Classification("exceptional", f"log form vanishes: {w!r}")
                    break
        if cls is None:
            cls = Classification("low_height", f"h(u) = {h} <= {threshold}") if h <= threshold \
                else Classification("generic")
    return VerificationReport(point, eps, d, h, vh, chi, value, False, N, N1, n_gcd, chain, identity,
                              margin_a, margin_b, threshold, hyp, cls)


# ---------------------------------------------------------------------------
# gcd conclusions


@dataclass(frozen=True)
class GcdConclusionReport:
    epsilon: Fraction
    max_height: int
    F_value: RationalFunction
    G_value: RationalFunction
    vanishing: tuple[str, ...]
    degenerate: bool
    n_gcd: int | None
    h_gcd: int | None
    conclusion_a: bool | None
    conclusion_b: bool | None
    height_floor: Fraction
    above_floor: bool
    relation: tuple[int, ...] | None
    relation_height: int | None
    relation_total: int
    escape_bound: int


def gcd_height_floor(F: MultiPolynomial, G: MultiPolynomial, S: PlaceSet, epsilon) -> Fraction:
    """(h~(F) + h~(G) + chi_S^+) / epsilon, the package's stand-in for the
    unspecified height hypothesis of the gcd theorem."""
    return Fraction(relevant_height(F) + relevant_height(G) + chi_s_plus(S)) / _positive(epsilon)


def gcd_conclusion_report(
    F: MultiPolynomial, G: MultiPolynomial, g: UnitTuple, S: PlaceSet, epsilon, m_bound: int | None = None
) -> GcdConclusionReport:
    eps = _positive(epsilon)
    if F.nvars != len(g) or G.nvars != len(g):
        raise ValueError("F, G and g must have the same arity")
    if F.degree < 1 or G.degree < 1:
        raise ValueError("F and G must be nonconstant")
    fv = rf(F.evaluate(list(g.entries)))
    gv = rf(G.evaluate(list(g.entries)))
    vanishing = tuple(name for name, v in (("F(g) = 0", fv), ("G(g) = 0", gv)) if not v)
    mh = max(height(x) for x in g.entries)
    degenerate = all(x.is_constant() for x in g.entries)
    n_gcd = h_gcd = None
    ca = cb = None
    if not vanishing:
        n_gcd, h_gcd = count_gcd(fv, gv, S)
        ca = n_gcd <= eps * mh
        cb = h_gcd <= eps * mh
    floor = gcd_height_floor(F, G, S, eps)
    total = m_bound if m_bound is not None else 2 * max(F.degree, G.degree)
    rel = best_relation(g, total)
    m, rh = (rel if rel is not None else (None, None))
    escape = relevant_height(F) + relevant_height(G) + chi_s_plus(S)
    return GcdConclusionReport(eps, mh, fv, gv, vanishing, degenerate, n_gcd, h_gcd, ca, cb,
                               floor, mh >= floor, m, rh, total, escape)


# ---------------------------------------------------------------------------
# ramified covers of P^n minus D


class RamifiedCoverSpec:
    """n+1 forms in n+1 variables with sum of degrees at least n+2, a set S
    and a degree-one place p used for specialization."""

    __slots__ = ("system", "S", "p")

    def __init__(self, system: FormSystem | Sequence[MultiPolynomial], S: PlaceSet, p: Place):
        if not isinstance(system, FormSystem):
            system = FormSystem(system)
        n = system.nvars - 1
        if len(system) != n + 1:
            raise ValueError(f"need {n + 1} forms in {n + 1} variables, got {len(system)}")
        if sum(system.degrees) < n + 2:
            raise HypothesisError(f"degenerate system: sum of degrees {sum(system.degrees)} < n + 2 = {n + 2}")
        if p.degree != 1:
            raise ValueError("the specialization place must have degree one")
        self.system = system
        self.S = S
        self.p = p

    @property
    def n(self) -> int:
        return self.system.nvars - 1


@dataclass(frozen=True)
class RamifiedCoverReport:
    point: ProjectivePoint
    epsilon: Fraction
    b: tuple[int, ...]
    lcm_degree: int
    values: tuple[RationalFunction, ...]
    counting: tuple[int, ...]
    u: tuple[RationalFunction, ...]
    S_prime: PlaceSet
    units_for_S: bool
    units_for_S_prime: bool
    jacobian: MultiPolynomial
    jacobian_exponentiated: MultiPolynomial
    jacobian_specialized: MultiPolynomial
    general_position: bool | None
    transversal: bool | None
    ramification_general_position: bool | None
    h_x: int
    h_u: int
    c_prime_upper: int
    height_gap: int
    log_identity: tuple[bool, ...]
    ramification_counting: int | None
    ramification_margin: Fraction | None
    notes: tuple[str, ...] = field(default=())


class NonIntegralPoint(HypothesisError):
    pass


def _c_prime_upper(system: FormSystem) -> int:
    """sum_p deg(p) max_i(-b_i v_p(F_i)), so that h(u) <= b h(x) + c'."""
    places = set()
    for F in system.forms:
        places.update(coefficient_places(F))
    total = 0
    for p in places:
        total += p.degree * max(-k * poly_valuation(F, p) for F, k in zip(system.forms, system.b))
    return total


def ramified_cover_report(spec: RamifiedCoverSpec, x: ProjectivePoint, epsilon) -> RamifiedCoverReport:
    eps = _positive(epsilon)
    sys = spec.system
    if len(x) != sys.nvars:
        raise ValueError("point and forms have different dimensions")
    coords = list(x.coords)
    values = tuple(rf(F.evaluate(coords)) for F in sys.forms)
    for i, v in enumerate(values):
        if not v:
            raise ValueError(f"the point lies on D_{i + 1}")
    counting = tuple(divisor_decomposition(F, x, spec.S).counting for F in sys.forms)
    bad = [i + 1 for i, c in enumerate(counting) if c]
    if bad:
        raise NonIntegralPoint(f"x is not S-integral for D_{bad}: counting functions {counting}")

    b = sys.b
    last = values[-1] ** b[-1]
    u = tuple(v**k / last for v, k in zip(values[:-1], b[:-1]))
    S_prime = spec.S
    for F in sys.forms:
        S_prime = S_prime | coefficient_places(F)
    in_S = all(is_s_unit(w, spec.S) for w in u)
    in_S_prime = all(is_s_unit(w, S_prime) for w in u)

    J = jacobian_form(sys)
    J_exp = jacobian_form(sys, exponentiated=True)
    spec_forms = tuple(specialize(F, spec.p) for F in sys.forms)
    Jp = jacobian_form(spec_forms)
    gp = tr = ram_gp = None
    if spec.n == 2:
        gp = general_position_by_specialization(sys, spec.p).certified
        tr = transversal_n2(spec_forms)
        ram_gp = general_position_n2(list(spec_forms) + [Jp]) if Jp.degree >= 1 else None

    L = lcm(*sys.degrees)
    hx = height_point(x)
    hu = height_point(ProjectivePoint([v**k for v, k in zip(values, b)]))
    c_up = _c_prime_upper(sys)

    dl_last = derive(values[-1]) / values[-1]
    identity = tuple(
        b[i] * (derive(values[i]) / values[i]) - b[-1] * dl_last == derive(w) / w for i, w in enumerate(u)
    )

    rc = margin = None
    if J and J.degree >= 1 and rf(J.evaluate(coords)):
        rc = divisor_decomposition(J, x, spec.S).counting
        margin = eps * hx - rc
    notes = ("the lower constant c' in b h(x) - c' <= h(u) is not made explicit; height_gap = b h(x) - h(u)",)
    return RamifiedCoverReport(
        x, eps, b, L, values, counting, u, S_prime, in_S, in_S_prime, J, J_exp, Jp,
        gp, tr, ram_gp, hx, hu, c_up, L * hx - hu, identity, rc, margin, notes,
    )
