from fractions import Fraction

import pytest

from ffdioph.heights import relevant_height
from ffdioph.logderiv import (
    DU_HEIGHT_C1,
    DU_HEIGHT_C2,
    LogOneForm,
    UnitTuple,
    coprime_with_du,
    d_u,
    du_height_bound,
    eval_log_form,
    log_derivatives,
    relation_candidates,
    split_ab,
    unit_relation_search,
    unit_sum_check,
)
from ffdioph.mpoly import MultiPolynomial
from ffdioph.places import INFINITY, chi_s, is_s_unit, place_set, valuation
from ffdioph.poly import T
from ffdioph.ratfunc import RationalFunction, derive, rf
from strategies import PLACES, random_form, random_unit

t = RationalFunction.t()
x1, x2 = MultiPolynomial.gens(2, ("x1", "x2"))
S_t = place_set(T, INFINITY)
S3 = place_set(T, T - 1, INFINITY)


def test_d_u_examples():
    u = UnitTuple([t, t**2], S_t)
    D = d_u(x1 + x2, u)
    assert D == (1 / t) * x1 + (2 / t) * x2
    assert rf(D.evaluate(list(u))) == 1 + 2 * t
    assert not d_u(3 * x1 + x2, UnitTuple([2, 5], S_t))
    (y,) = MultiPolynomial.gens(1, ("x1",))
    assert d_u(t * y, UnitTuple([t], S_t)) == 2 * y


def test_coprime_examples():
    assert not coprime_with_du(x1 + x2, UnitTuple([t, 3 * t], S_t))
    assert coprime_with_du(x1 + x2, UnitTuple([t, t**2], S_t))
    assert not coprime_with_du(t * x1**2 * x2, UnitTuple([t, t**2], S_t))


def test_split_examples():
    u = UnitTuple([t, 2 * t], S_t)
    F = (x1 + x2) * (x1 + x2 + 1)
    r = split_ab(F, [x1 + x2, x1 + x2 + 1], u)
    assert r.B == x1 + x2 and r.A == x1 + x2 + 1
    assert rf(r.B.evaluate(list(u))) == 3 * t
    assert r.certificate.certified
    G = x1 + t * x2 + 1
    r = split_ab(G, [G], UnitTuple([t, t**2], S_t))
    assert r.A == G and r.B.is_constant()
    r = split_ab(x1 + x2, [x1 + x2], UnitTuple([t, t], S_t))
    assert r.B == x1 + x2 and rf(r.B.evaluate([t, t])) == 2 * t


def test_split_rejects_wrong_factors():
    with pytest.raises(ValueError):
        split_ab(x1 * x2, [x1 + x2], UnitTuple([t, t], S_t))


def test_unit_sum_examples():
    r = unit_sum_check([t, 1 - t], S3)
    assert (r.subsum_vanishes, r.max_height, r.bound, r.within_bound) == (False, 1, 1, True)
    r = unit_sum_check([t, -t, 1], S_t)
    assert r.subsum_vanishes
    r = unit_sum_check([Fraction(1, 2), Fraction(1, 2)], place_set(INFINITY))
    assert r.max_height == 0 and r.within_bound


def test_relation_examples():
    r = unit_relation_search(x1 - x2, UnitTuple([t, t], S_t))
    assert (r.m, r.height) == ((1, -1), 0)
    r = unit_relation_search(x1 - t * x2, UnitTuple([t**2, t], S_t))
    assert (r.m, r.height) == ((1, -1), 1)
    r = unit_relation_search(x1 * x2 - 1, UnitTuple([t, 1 / t], S_t))
    assert (r.m, r.height) == ((1, 1), 0)
    assert r.height <= r.bound


def test_relation_candidates_are_normalized():
    cands = list(relation_candidates(2, 2))
    assert all(next(v for v in m if v) > 0 for m in cands)
    assert len(cands) == len(set(cands)) == 6


def test_log_form_examples():
    u = UnitTuple([t, t], S_t)
    assert not eval_log_form(LogOneForm((1, -1), 1), u)
    assert not eval_log_form(LogOneForm((1, 1), t**2), u)
    v = UnitTuple([t, t**5], S_t)
    assert eval_log_form(LogOneForm((1, 0), t - 1), v) == 1 / t - 1 / (t - 1)


def test_non_unit_rejected():
    with pytest.raises(ValueError):
        UnitTuple([t + 1], S_t)


def _random_units(rng, S, n):
    return UnitTuple([random_unit(rng, S) for _ in range(n)], S)


def test_derivative_identity_and_product_rule(rng):
    for _ in range(40):
        u = _random_units(rng, S3, 3)
        F = random_form(rng, 3, rng.randint(1, 3))
        G = random_form(rng, 3, rng.randint(1, 2))
        vals = list(u)
        assert rf(d_u(F, u).evaluate(vals)) == derive(rf(F.evaluate(vals)))
        assert d_u(F * G, u) == d_u(F, u) * G + F * d_u(G, u)


def test_du_height_bound_random(rng):
    assert (DU_HEIGHT_C1, DU_HEIGHT_C2) == (2, 3)
    for _ in range(40):
        S = place_set(*rng.sample(PLACES[:4], rng.randint(0, 3)), INFINITY)
        u = _random_units(rng, S, 3)
        F = random_form(rng, 3, rng.randint(1, 3), coeff_deg=2)
        D = d_u(F, u)
        if D:
            assert relevant_height(D) <= du_height_bound(F, S)
            assert du_height_bound(F, S) == 2 * relevant_height(F) + 3 * max(1, chi_s(S))


def test_log_derivative_pole_confinement(rng):
    for _ in range(40):
        S = place_set(*rng.sample(PLACES[:4], 2), INFINITY)
        u = random_unit(rng, S, 4)
        (l,) = log_derivatives([u])
        for p in PLACES[:4]:
            if p not in S and l:
                assert valuation(l, p) >= 0


def test_split_ab_contract_random(rng):
    S = S3
    for _ in range(30):
        u = _random_units(rng, S, 2)
        a, b = rng.sample([1, 2, 3, -1], 2)
        P1 = x1 - rf(u[0] / u[1]) * x2 if rng.random() < 0.5 else x1 + a * x2
        P2 = x1 + b * t * x2 + 1
        F = P1 * P2
        r = split_ab(F, [P1, P2], u)
        Bu = rf(r.B.evaluate(list(u)))
        assert not Bu or is_s_unit(Bu, S)
        assert relevant_height(r.A) <= 2 * relevant_height(F)
        assert r.certificate.certified
