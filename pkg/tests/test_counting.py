from hypothesis import given, settings
from hypothesis import strategies as st

from ffdioph.counting import (
    count_gcd,
    count_zeros,
    divisor_decomposition,
    weil_lambda,
    weil_total,
    zero_counts,
)
from ffdioph.heights import ProjectivePoint
from ffdioph.mpoly import MultiPolynomial
from ffdioph.places import INFINITY, Place, height, is_s_unit, place_set
from ffdioph.poly import T
from ffdioph.ratfunc import RationalFunction
from strategies import PLACES, ratfuncs, random_form, random_ratfunc

t = RationalFunction.t()
x0, x1, x2 = MultiPolynomial.gens(3)
S_inf = place_set(INFINITY)


def test_count_zeros_examples():
    f = t**3 * (t - 1) ** 2
    assert count_zeros(f, S_inf).total == 5
    assert count_zeros(f, S_inf, 1).total == 2
    assert count_zeros(f, S_inf, 2).total == 4
    S = place_set(T, INFINITY)
    assert count_zeros(f, S).total == 2
    assert count_zeros(f, S, 1).total == 1
    assert count_zeros(t**4 / (t - 1), place_set(T, T - 1, INFINITY)).total == 0


def test_quadratic_place_weighted_twice():
    f = (t**2 + 1) * (t - 3)
    br = count_zeros(f, S_inf)
    assert br.contributions[Place.finite(T**2 + 1)] == 1
    assert br.total == 3


def test_zeros_at_infinity_counted():
    # 1/t has a zero at infinity
    assert count_zeros(1 / t, place_set(T)).total == 1
    assert count_zeros(1 / t, place_set(T, INFINITY)).total == 0


def test_count_gcd_examples():
    assert count_gcd(t**2 * (t - 1), t * (t - 2) ** 3, S_inf) == (1, 1)
    assert count_gcd(t, t - 1, S_inf) == (0, 0)
    f = t**2 * (t + 5)
    S = place_set(T, INFINITY)
    assert count_gcd(f, f, S) == (count_zeros(f, S).total, count_zeros(f, S_inf).total)


def test_weil_lambda_examples():
    x = ProjectivePoint([1, t, t - 1])
    F = x0 + x1 + x2
    assert weil_lambda(F, x, Place.finite(T)) == 1
    assert weil_lambda(F, x, INFINITY) == 0
    for p in PLACES:
        assert weil_lambda(x0, ProjectivePoint([1, 3, -2]), p) == 0


def test_decomposition_examples():
    S = place_set(T, T - 1, INFINITY)
    F = x0 + x1 + x2
    d = divisor_decomposition(F, ProjectivePoint([1, t, t - 1]), S)
    assert (d.counting, d.proximity, d.total) == (0, 1, 1)
    d = divisor_decomposition(x0, ProjectivePoint([1, t**3 / (t - 1), 1 / t]), S)
    assert d.counting == 0
    d = divisor_decomposition(F, ProjectivePoint([1, t**3, (t - 1) ** 3]), S, truncation=1)
    assert (d.counting, d.truncated_counting) == (2, 2)


@settings(max_examples=80, deadline=None)
@given(ratfuncs(4), st.sampled_from([0, 1, 2, 3]), st.integers(1, 3))
def test_count_chain(f, k, m):
    S = place_set(*PLACES[:k], INFINITY) if k else S_inf
    N = count_zeros(f, S).total
    Nm = count_zeros(f, S, m).total
    N1 = count_zeros(f, S, 1).total
    assert 0 <= N1 <= Nm <= N <= height(f)
    # the factoring-free route agrees
    assert zero_counts(f, S, m) == (N, Nm)


@settings(max_examples=60, deadline=None)
@given(ratfuncs(3), ratfuncs(3))
def test_gcd_count_properties(f, g):
    S = place_set(T, INFINITY)
    n, h = count_gcd(f, g, S)
    assert (n, h) == count_gcd(g, f, S)
    assert n <= min(count_zeros(f, S).total, count_zeros(g, S).total)
    assert h >= n


def test_unit_has_no_zeros():
    S = place_set(T, T - 1, INFINITY)
    u = 3 * t**4 / (t - 1) ** 2
    assert is_s_unit(u, S) and count_zeros(u, S).total == 0


def test_weil_full_sum_and_nonnegativity(rng):
    for _ in range(60):
        F = random_form(rng, 3, rng.randint(1, 3))
        x = ProjectivePoint([random_ratfunc(rng, 2) for _ in range(3)])
        if not F.evaluate(list(x.coords)):
            continue
        d = divisor_decomposition(F, x, place_set(T, INFINITY))
        assert all(v >= 0 for v in d.lambdas.values())
        assert sum(p.degree * v for p, v in d.lambdas.items()) == weil_total(F, x)
