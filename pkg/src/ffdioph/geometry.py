"""Specialization of forms, general position in P^2, Jacobian forms.

Common zeros of ternary forms are decided exactly.  After a unipotent change
of coordinates every form is monic-up-to-a-constant in x0, so the resultant
in x0 of two forms vanishes exactly at the (x1 : x2) of their common zeros.
Candidate roots are then lifted by a gcd in x0 computed over K0[s]/(g),
splitting g whenever a leading coefficient turns out to be a zero divisor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Sequence

from .mpoly import MultiPolynomial
from .places import Place, valuation
from .poly import (
    dense_derivative,
    dense_divmod,
    dense_gcd,
    dense_mul,
    dense_resultant,
    dense_strip,
    dense_sub,
    dense_xgcd,
    interpolate,
)
from .ratfunc import RationalFunction


class FormSystem:
    """Homogeneous forms F_1..F_q in x_0..x_n with b_i = lcm(d)/d_i."""

    __slots__ = ("forms", "degrees", "b")

    def __init__(self, forms: Sequence[MultiPolynomial]):
        forms = list(forms)
        if not forms:
            raise ValueError("empty form system")
        nv = forms[0].nvars
        for F in forms:
            if not F or not F.is_homogeneous():
                raise ValueError(f"{F} is not a nonzero homogeneous form")
            if F.nvars != nv:
                raise ValueError("forms have different numbers of variables")
        self.forms = tuple(forms)
        self.degrees = tuple(F.degree for F in forms)
        if any(d < 1 for d in self.degrees):
            raise ValueError("forms must have positive degree")
        L = lcm(*self.degrees)
        self.b = tuple(L // d for d in self.degrees)

    @property
    def nvars(self) -> int:
        return self.forms[0].nvars

    def __len__(self) -> int:
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)


# ---------------------------------------------------------------------------
# specialization


def _residue(a: RationalFunction, p: Place, v: int) -> Fraction:
    """Value at p of a * t_p^(-v); zero when v_p(a) > v."""
    if valuation(a, p) > v:
        return Fraction(0)
    if p.is_infinite:
        return a.num.lc / a.den.lc
    c = -p.poly[0]
    num, den = a.num, a.den
    if v > 0:
        _, num = num.multiplicity(p.poly)
    elif v < 0:
        _, den = den.multiplicity(p.poly)
    return num(c) / den(c)


def specialize(F: MultiPolynomial, p: Place) -> MultiPolynomial:
    """F_p = t_p^(-v_p(F)) F with coefficients evaluated at p."""
    if p.degree != 1:
        raise ValueError(f"specialization needs a degree-one place, got {p}")
    if not F:
        raise ValueError("cannot specialize the zero polynomial")
    v = min(valuation(c, p) for c in F.terms.values())
    return MultiPolynomial(F.nvars, {e: _residue(c, p, v) for e, c in F.terms.items()}, F.names)


# ---------------------------------------------------------------------------
# arithmetic in K0[s]/(m)

ALL_OF_X0 = 1 << 30  # gcd degree reported when every polynomial vanishes


def _reduce(a, m):
    return dense_divmod(a, m)[1] if len(a) >= len(m) else dense_strip(list(a))


def _mulmod(a, b, m):
    return _reduce(dense_mul(a, b), m)


def _split_on(c, m):
    """(inverse of c mod m, None) or (None, (m1, m2)) with c = 0 mod m1 and
    c invertible mod m2; m is squarefree so m1 and m2 are coprime."""
    g, s, _ = dense_xgcd(c, m)
    if len(g) == 1:
        return _reduce(s, m), None
    return None, (g, dense_divmod(m, g)[0])


def _branch_gcd_degree(polys: list[list[list]], m: list) -> list[tuple[list, int]]:
    """gcd in x0 of polynomials whose coefficients are residues mod m.

    Returns (branch modulus, degree of the gcd) pairs covering m.
    """
    work = [(m, [_normalize_poly(P, m) for P in polys])]
    out = []
    while work:
        mod, ps = work.pop()
        ps = [P for P in (_normalize_poly(P, mod) for P in ps) if P]
        if not ps:
            out.append((mod, ALL_OF_X0))
            continue
        acc = ps[0]
        split = None
        for P in ps[1:]:
            res = _euclid(acc, P, mod)
            if isinstance(res, tuple):
                split = res
                break
            acc = res
        if split is None:
            # the leading coefficient of acc may itself need splitting
            lead = acc[-1]
            _, sp = _split_on(lead, mod)
            if sp is None:
                out.append((mod, len(acc) - 1))
                continue
            split = sp
        m1, m2 = split
        if len(m1) > 1:
            work.append((m1, ps))
        if len(m2) > 1:
            work.append((m2, ps))
    return out


def _normalize_poly(P, mod):
    coeffs = [_reduce(c, mod) for c in P]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _euclid(a, b, mod):
    """gcd over K0[s]/(mod) or a split (m1, m2) when a zero divisor shows up."""
    a, b = _normalize_poly(a, mod), _normalize_poly(b, mod)
    while b:
        inv, split = _split_on(b[-1], mod)
        if split is not None:
            return split
        db = len(b) - 1
        a = list(a)
        while len(a) - 1 >= db and a:
            c = _mulmod(a[-1], inv, mod)
            shift = len(a) - 1 - db
            for j in range(db + 1):
                a[shift + j] = _reduce(dense_sub(a[shift + j], dense_mul(c, b[j])), mod)
            a = _normalize_poly(a, mod)
        a, b = b, a
    return a


# ---------------------------------------------------------------------------
# common zeros


def _shift(F: MultiPolynomial, c1, c2) -> MultiPolynomial:
    x0, x1, x2 = MultiPolynomial.gens(3, F.names)
    return F.substitute([x0, x1 + x0 * c1, x2 + x0 * c2])


def _x0_poly(F: MultiPolynomial, x1, x2) -> list:
    """Coefficients in x0 of F(x0, x1, x2) for field values x1, x2."""
    out = [0] * (F.degree + 1)
    for (i, j, k), c in F.terms.items():
        v = c * (x1**j) * (x2**k) if (j or k) else c
        out[i] = out[i] + v
    return dense_strip(out)


def _x0_poly_over_s(F: MultiPolynomial) -> list[list]:
    """F(x0, s, 1) as a list over x0-powers of dense polynomials in s."""
    deg = F.degree
    out: list[list] = [[] for _ in range(deg + 1)]
    for (i, j, _k), c in F.terms.items():
        poly = [0] * j + [c]
        out[i] = _add(out[i], poly)
    return out


def _add(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    for i, c in enumerate(b):
        a[i] = a[i] + c
    return dense_strip(a)


def _constant_coefficients(forms) -> bool:
    return all(F.has_constant_coefficients() for F in forms)


def _to_field(F: MultiPolynomial, constant: bool) -> MultiPolynomial:
    if not constant:
        return F
    out = MultiPolynomial._raw(F.nvars, {}, F.names)
    out.terms = {e: c.constant_value() for e, c in F.terms.items()}
    return out


def _resultant_in_s(F: MultiPolynomial, G: MultiPolynomial) -> list:
    """Res_{x0}(F(x0, s, 1), G(x0, s, 1)) by interpolation in s; both forms
    have constant nonzero x0-leading coefficients."""
    D = F.degree * G.degree
    xs, ys = [], []
    for k in range(D + 1):
        s = Fraction(k)
        xs.append(s)
        ys.append(dense_resultant(_x0_poly(F, s, 1), _x0_poly(G, s, 1)))
    return dense_strip(interpolate(xs, ys))


def _choose_shift(forms) -> tuple[int, int]:
    for r in range(0, 50):
        for c1 in range(-r, r + 1):
            for c2 in (-(r - abs(c1)), r - abs(c1)):
                if all(F.evaluate([1, c1, c2]) for F in forms):
                    return c1, c2
    raise RuntimeError("no admissible coordinate change found")


def common_projective_zero(forms: Sequence[MultiPolynomial]) -> bool:
    """Do the ternary forms have a common zero over the algebraic closure?

    Zero forms are ignored.  Needs two of the forms to have no common
    component unless exactly three forms are given (then a shared component
    meets the third curve).
    """
    forms = [F for F in forms if F]
    if any(F.nvars != 3 or not F.is_homogeneous() for F in forms):
        raise ValueError("ternary homogeneous forms required")
    if any(F.degree == 0 for F in forms):
        return False
    if len(forms) <= 2:
        return True
    constant = _constant_coefficients(forms)
    c1, c2 = _choose_shift(forms)
    shifted = [_to_field(_shift(F, c1, c2), constant) for F in forms]
    # the direction x2 = 0: the point (x0 : 1 : 0)
    g = []
    for F in shifted:
        g = dense_gcd(g, _x0_poly(F, 1, 0)) if g else dense_strip(_x0_poly(F, 1, 0))
        if len(g) <= 1:
            break
    if len(g) > 1:
        return True
    anchor = None
    for i, j in combinations(range(len(shifted)), 2):
        r = _resultant_in_s(shifted[i], shifted[j])
        if r:
            anchor = (i, j, r)
            break
    if anchor is None:
        if len(forms) == 3:
            return True
        raise ValueError("every pair of forms shares a component")
    i0, j0, m = anchor
    for k in range(len(shifted)):
        if k in (i0, j0):
            continue
        r = _resultant_in_s(shifted[i0], shifted[k])
        if r:
            m = dense_gcd(m, r)
        if len(m) <= 1:
            return False
    m = dense_strip(list(m))
    if len(m) <= 1:
        return False
    m = dense_divmod(m, dense_gcd(m, dense_derivative(m)))[0]
    polys = [_x0_poly_over_s(F) for F in shifted]
    return any(deg >= 1 for _, deg in _branch_gcd_degree(polys, m))


def general_position_n2(forms: Sequence[MultiPolynomial]) -> bool:
    """No three of the ternary forms share a projective zero."""
    for F in forms:
        if not F or not F.is_homogeneous() or F.nvars != 3:
            raise ValueError("ternary homogeneous nonzero forms required")
    return not any(common_projective_zero(trip) for trip in combinations(forms, 3))


@dataclass(frozen=True)
class SpecializationCertificate:
    certified: bool
    inconclusive: bool
    place: Place
    specialized: tuple[MultiPolynomial, ...]


def general_position_by_specialization(sys: FormSystem | Sequence[MultiPolynomial], p: Place) -> SpecializationCertificate:
    forms = tuple(sys.forms if isinstance(sys, FormSystem) else sys)
    spec = tuple(specialize(F, p) for F in forms)
    ok = general_position_n2(spec)
    return SpecializationCertificate(ok, not ok, p, spec)


def transversal_n2(forms: Sequence[MultiPolynomial]) -> bool:
    """Every two curves meet transversally: no common zero of F_i, F_j and
    the 2x2 minors of their gradient matrix."""
    for Fi, Fj in combinations(forms, 2):
        gi = [Fi.diff(k) for k in range(3)]
        gj = [Fj.diff(k) for k in range(3)]
        minors = [gi[a] * gj[b] - gi[b] * gj[a] for a, b in ((0, 1), (0, 2), (1, 2))]
        if common_projective_zero([Fi, Fj] + minors):
            return False
    return True


# ---------------------------------------------------------------------------
# Jacobian forms


def determinant_poly(matrix: list[list[MultiPolynomial]]) -> MultiPolynomial:
    """Cofactor expansion along the first row."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = None
    for j in range(n):
        entry = matrix[0][j]
        if not entry:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = entry * determinant_poly(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return matrix[0][0] * 0
    return total


def jacobian_matrix(forms: Sequence[MultiPolynomial]) -> list[list[MultiPolynomial]]:
    return [[F.diff(j) for j in range(F.nvars)] for F in forms]


def jacobian_form(sys: FormSystem | Sequence[MultiPolynomial], exponentiated: bool = False) -> MultiPolynomial:
    """det(dF_i/dx_j); with ``exponentiated`` the forms are F_i^(b_i)."""
    forms = list(sys.forms if isinstance(sys, FormSystem) else sys)
    if not forms or len(forms) != forms[0].nvars:
        raise ValueError("a square system (n+1 forms in n+1 variables) is required")
    if exponentiated:
        b = sys.b if isinstance(sys, FormSystem) else FormSystem(forms).b
        forms = [F**k for F, k in zip(forms, b)]
    return determinant_poly(jacobian_matrix(forms))


def euler_check(F: MultiPolynomial) -> bool:
    if not F.is_homogeneous():
        raise ValueError("Euler's identity needs a homogeneous form")
    x = MultiPolynomial.gens(F.nvars, F.names)
    lhs = MultiPolynomial(F.nvars, {}, F.names)
    for j in range(F.nvars):
        lhs = lhs + F.diff(j) * x[j]
    return lhs == F * F.degree


@dataclass(frozen=True)
class EulerReduction:
    lhs: MultiPolynomial  # x0 * det J
    cofactor_terms: tuple[MultiPolynomial, ...]  # (-1)^i d_i F_i M_i
    sign: int  # sign in front of d_{n+1} F_{n+1} M_{n+1}
    holds: bool


def euler_reduction(sys: FormSystem | Sequence[MultiPolynomial]) -> EulerReduction:
    """x0 * det J = sum_i (-1)^i d_i F_i M_i, M_i the minor without row i and
    column 0; modulo F_1..F_n only the last term survives."""
    forms = list(sys.forms if isinstance(sys, FormSystem) else sys)
    J = jacobian_matrix(forms)
    det = determinant_poly(J)
    x0 = MultiPolynomial.variable(0, forms[0].nvars, forms[0].names)
    terms = []
    for i, F in enumerate(forms):
        minor = [row[1:] for k, row in enumerate(J) if k != i]
        M = determinant_poly(minor) if minor else MultiPolynomial.constant(1, F.nvars, F.names)
        term = F * M * F.degree
        terms.append(-term if i % 2 else term)
    total = terms[0]
    for tm in terms[1:]:
        total = total + tm
    n = len(forms) - 1
    return EulerReduction(x0 * det, tuple(terms), -1 if n % 2 else 1, total == x0 * det)
