from fractions import Fraction
from itertools import product

from hypothesis import given, settings

from ffdioph.heights import ProjectivePoint, height_point, poly_height
from ffdioph.mpoly import MultiPolynomial
from ffdioph.places import (
    INFINITY,
    Place,
    chi_s,
    chi_s_plus,
    divisor,
    enumerate_s_units,
    height,
    is_s_integer,
    is_s_unit,
    place_set,
    unit_count_bound,
    valuation,
)
from ffdioph.poly import T
from ffdioph.ratfunc import RationalFunction
from strategies import PLACES, ratfuncs

t = RationalFunction.t()
x, y = MultiPolynomial.gens(2, ("x", "y"))


def test_valuation_examples():
    f = t**2 / (t - 1)
    assert valuation(f, Place.finite(T)) == 2
    assert valuation(f, INFINITY) == -1
    assert valuation(1 / (t**2 + 1), Place.finite(T**2 + 1)) == -1


def test_height_examples():
    assert height(t**2 / (t - 1)) == 2
    assert height(RationalFunction.const(Fraction(-7, 3))) == 0
    f = (t**3 + 1) / (t - 2)
    assert height(f) == height(1 / f)


def test_point_height_examples():
    for m in range(1, 6):
        assert height_point(ProjectivePoint([1, t**m, t**m])) == m
        assert height_point(ProjectivePoint([1, t**m, (t - 1) ** m])) == m
    assert height_point(ProjectivePoint([2, 0, Fraction(1, 3)])) == 0


def test_poly_height_examples():
    assert poly_height(x + y) == (0, 0)
    assert poly_height(t * x + y) == (1, 1)
    assert poly_height(t * x + t * y) == (0, 1)


def test_unit_and_integer_examples():
    S = place_set(T, T - 1, INFINITY)
    assert is_s_unit(t * (t - 1), S)
    assert not is_s_unit(t + 1, S)
    assert is_s_integer(1 / (t - 1), place_set(T - 1))


def test_enumeration_examples():
    S = place_set(T, INFINITY)
    units = enumerate_s_units(S, 2)
    assert set(units) == {t**e for e in range(-2, 3)}
    assert len(units) == 5 <= unit_count_bound(S, 2) == 25
    assert enumerate_s_units(place_set(INFINITY), 4) == [RationalFunction.const(1)]
    S3 = place_set(T, T - 1, INFINITY)
    expected = {1, t, 1 / t, t - 1, 1 / (t - 1), t / (t - 1), (t - 1) / t}
    got = enumerate_s_units(S3, 1)
    assert set(got) == {RationalFunction.coerce(e) for e in expected}
    assert len(got) == 7 <= unit_count_bound(S3, 1) == 27


def test_enumeration_brute_force():
    S = place_set(T, T + 1, T**2 + 1, INFINITY)
    for H in range(4):
        got = set(enumerate_s_units(S, H))
        brute = set()
        for e in product(range(-H, H + 1), repeat=3):
            f = t ** e[0] * (t + 1) ** e[1] * (t**2 + 1) ** e[2]
            if height(f) <= H:
                brute.add(f)
        assert got == brute
        assert all(is_s_unit(f, S) and height(f) <= H for f in got)
        assert len(got) <= unit_count_bound(S, H)


def test_enumeration_without_infinity_is_degree_balanced():
    S = place_set(T, T - 1)
    for f in enumerate_s_units(S, 2):
        assert valuation(f, INFINITY) == 0


def test_chi():
    assert chi_s(place_set(T, T - 1, INFINITY)) == 1
    assert chi_s(place_set(INFINITY)) == -1
    assert chi_s_plus(place_set(INFINITY)) == 0
    assert chi_s(place_set(T**2 + 1, INFINITY)) == 1


@settings(max_examples=80, deadline=None)
@given(ratfuncs())
def test_product_formula(f):
    assert sum(p.degree * v for p, v in divisor(f).items()) == 0


@settings(max_examples=60, deadline=None)
@given(ratfuncs(), ratfuncs())
def test_height_inequalities(f, g):
    assert height(f) == height(1 / f)
    assert height(f * g) <= height(f) + height(g)


@settings(max_examples=60, deadline=None)
@given(ratfuncs(), ratfuncs(), ratfuncs(), ratfuncs())
def test_point_height_scaling(a, b, c, s):
    P = ProjectivePoint([a, b, c])
    Q = ProjectivePoint([a * s, b * s, c * s])
    assert height_point(P) == height_point(Q)


@settings(max_examples=40, deadline=None)
@given(ratfuncs(), ratfuncs(), ratfuncs(), ratfuncs())
def test_gauss_lemma_and_height_additivity(a, b, c, d):
    from ffdioph.heights import poly_valuation

    F = a * x + b * y
    G = c * x * y + d * y**2
    FG = F * G
    for p in PLACES:
        assert poly_valuation(FG, p) == poly_valuation(F, p) + poly_valuation(G, p)
    assert poly_height(FG)[0] == poly_height(F)[0] + poly_height(G)[0]
    assert poly_height(FG)[1] <= poly_height(F)[1] + poly_height(G)[1]
