"""Acceptance suite.  Each criterion prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""

import json
import random
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

from ffdioph.cli import main as cli_main
from ffdioph.counting import divisor_decomposition, weil_total, zero_counts
from ffdioph.exceptional import (
    HypothesisError,
    build_exceptional_set,
    member,
    normalized_pairs,
    predicted_degree_T,
    substitute_b,
)
from ffdioph.geometry import (
    euler_check,
    general_position_by_specialization,
    general_position_n2,
    jacobian_form,
)
from ffdioph.heights import ProjectivePoint, height_point, poly_height, poly_valuation, relevant_height
from ffdioph.logderiv import UnitTuple, d_u, split_ab, unit_sum_check
from ffdioph.mpoly import MultiPolynomial, monomials_of_degree
from ffdioph.places import (
    INFINITY,
    Place,
    chi_s_plus,
    divisor,
    enumerate_s_units,
    height,
    is_s_unit,
    place_set,
    unit_count_bound,
    unit_from_exponents,
)
from ffdioph.poly import T
from ffdioph.ratfunc import RationalFunction, derive, rf
from ffdioph.verifier import abc_report

sys.path.insert(0, str(Path(__file__).parent))
from strategies import PLACES, random_form, random_ratfunc, random_unit  # noqa: E402

t = RationalFunction.t()
x0, x1, x2 = MultiPolynomial.gens(3)
X, Y = MultiPolynomial.gens(2, ("X", "Y"))
S_T = place_set(T, INFINITY)
S_T01 = place_set(T, T - 1, INFINITY)
G_LINE = x0 + x1 + x2
EPS = Fraction(1, 10)
GOLDEN = Path(__file__).parent / "golden"


def _line(k: int, ok: bool, detail: str) -> str:
    return f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


# ---------------------------------------------------------------- criteria


def criterion_1(rng) -> tuple[bool, str]:
    n = 1000
    start = time.perf_counter()
    failures: dict[str, int] = {}

    def bad(name):
        failures[name] = failures.get(name, 0) + 1

    for _ in range(n):
        f = random_ratfunc(rng, 4)
        if sum(p.degree * v for p, v in divisor(f).items()) != 0:
            bad("product formula")

    for _ in range(n):
        F = random_form(rng, 2, rng.randint(1, 2), terms=3, names=("X", "Y"))
        G = random_form(rng, 2, rng.randint(1, 2), terms=3, names=("X", "Y"))
        FG = F * G
        for p in PLACES:
            if poly_valuation(FG, p) != poly_valuation(F, p) + poly_valuation(G, p):
                bad("Gauss lemma")
        hF, vF = poly_height(F)
        hG, vG = poly_height(G)
        hFG, vFG = poly_height(FG)
        if hFG != hF + hG or vFG > vF + vG:
            bad("height of a product")

    S = S_T01
    for _ in range(n):
        u = UnitTuple([random_unit(rng, S) for _ in range(2)], S)
        F = random_form(rng, 2, rng.randint(1, 2), terms=3, names=("x1", "x2"))
        G = random_form(rng, 2, 1, terms=2, names=("x1", "x2"))
        vals = list(u)
        if rf(d_u(F, u).evaluate(vals)) != derive(rf(F.evaluate(vals))):
            bad("derivative identity")
        if d_u(F * G, u) != d_u(F, u) * G + F * d_u(G, u):
            bad("product rule")

    for _ in range(n):
        if not euler_check(random_form(rng, 3, rng.randint(1, 3))):
            bad("Euler identity")

    done = 0
    while done < n:
        F = random_form(rng, 3, rng.randint(1, 2), terms=3)
        x = ProjectivePoint([random_ratfunc(rng, 2) for _ in range(3)])
        if not F.evaluate(list(x.coords)):
            continue
        done += 1
        d = divisor_decomposition(F, x, S_T)
        full = sum(p.degree * v for p, v in d.lambdas.items())
        if full != weil_total(F, x) or weil_total(F, x) != F.degree * height_point(x) + poly_height(F)[0]:
            bad("Weil full sum")

    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 10
    return ok, f"7 identities x {n} cases, failures={failures or 0}, {elapsed:.1f}s (limit 10s)"


def criterion_2(rng) -> tuple[bool, str]:
    S_pool = [S_T, S_T01, place_set(T, T + 1, T**2 + 1, INFINITY), place_set(T - 1, T**2 + 1)]
    cases = violations = 0
    while cases < 500:
        S = rng.choice(S_pool)
        G = random_form(rng, 3, rng.randint(1, 3), terms=rng.randint(2, 5), coeff_deg=1)
        if relevant_height(G) > 20 or not G:
            continue
        u = UnitTuple([random_unit(rng, S, 4) for _ in range(2)], S)
        if height_point(ProjectivePoint([1, *u])) > 20:
            continue
        if not rf(G.evaluate([1, *u])):
            continue
        r = abc_report(G, u, S, EPS, classify=False)
        cases += 1
        if not (r.N - r.N1 <= r.n_gcd):
            violations += 1
    return violations == 0, f"{cases} cases, {violations} violations of N - N1 <= N_gcd"


def criterion_3() -> tuple[bool, str]:
    start = time.perf_counter()
    wrong = []
    for N in range(1, 61):
        u = UnitTuple([t**N, (t - 1) ** N], S_T01)
        value = rf(G_LINE.evaluate([1, *u]))
        _, N1 = zero_counts(value, S_T01)
        h = height_point(ProjectivePoint([1, *u]))
        if Fraction(N1, h) != Fraction(N - N % 2, N):
            wrong.append(N)
    r = abc_report(G_LINE, UnitTuple([t**50, (t - 1) ** 50], S_T01), S_T01, EPS)
    elapsed = time.perf_counter() - start
    ok = not wrong and r.margin_b == 5 and elapsed < 5
    detail = f"margin(N=50)={r.margin_b}, {elapsed:.2f}s"
    if wrong:
        detail += f"; N1/h != (N - [N odd])/N at N={wrong}"
    return ok, detail


def criterion_4() -> tuple[bool, str]:
    desc = build_exceptional_set(G_LINE, 2, S_T)
    problems = []
    for N in range(1, 61):
        u = UnitTuple([t**N, t**-N / 4], S_T)
        value = rf(G_LINE.evaluate([1, *u]))
        Ns, N1 = zero_counts(value, S_T)
        h = height_point(ProjectivePoint([1, *u]))
        if Fraction(Ns - N1, h) != Fraction(1, 2):
            problems.append(f"ratio at N={N}")
        m = member([1, *u], desc)
        if not (m.member and m.witness is not None and m.witness.describe() == "x1*x2 = 1/4*x0^2"):
            problems.append(f"member at N={N}")
    res = desc.pair(1, 1).resultant.roots
    if res != [Fraction(1, 4)]:
        problems.append(f"resultant locus {res}")
    delta = sorted({c.root_value() for p in desc.pairs for c in p.top_form})
    if delta != [Fraction(-1)]:
        problems.append(f"delta locus {delta}")
    return not problems, "N=1..60, resultant {1/4}, delta {-1}" + (f"; {problems[:5]}" if problems else "")


def _solve_unit_pair(w1, w2):
    """Constants (c1, c2) with c1*w1 + c2*w2 = 1, or None."""
    z = sympy.Symbol("z")
    a1 = sympy.sympify(w1.to_str().replace("^", "**"), locals={"t": z})
    a2 = sympy.sympify(w2.to_str().replace("^", "**"), locals={"t": z})
    c1, c2 = sympy.symbols("c1 c2")
    num = sympy.Poly(sympy.together(c1 * a1 + c2 * a2 - 1).as_numer_denom()[0], z)
    sol = sympy.solve(num.coeffs(), [c1, c2], dict=True)
    if len(sol) != 1 or set(sol[0]) != {c1, c2}:
        return None
    return Fraction(str(sol[0][c1])), Fraction(str(sol[0][c2]))


def criterion_5() -> tuple[bool, str]:
    S = S_T01
    reps = [w for w in enumerate_s_units(S, 3) if height(w) > 0]
    bound = chi_s_plus(S)
    found, worst, tight = 0, 0, False
    for i, w1 in enumerate(reps):
        for w2 in reps[i + 1:]:
            c = _solve_unit_pair(w1, w2)
            if c is None or not c[0] or not c[1]:
                continue
            f, g = c[0] * w1, c[1] * w2
            assert f + g == 1 and is_s_unit(f, S) and is_s_unit(g, S)
            rep = unit_sum_check([f, g], S)
            if rep.subsum_vanishes:
                continue
            found += 1
            worst = max(worst, rep.max_height)
            if {f, g} == {t, 1 - t}:
                tight = rep.max_height == bound
    ok = found > 0 and worst <= bound and tight
    return ok, f"{found} pairs (f, 1-f), max height {worst} <= {bound}, (t, 1-t) attains the bound: {tight}"


def criterion_6() -> tuple[bool, str]:
    S = S_T
    problems = []
    for H in range(1, 6):
        count = len(enumerate_s_units(S, H))
        # brute force: t^e for every exponent in a wide window, height |e|
        brute = sum(1 for e in range(-3 * H, 3 * H + 1) if height(unit_from_exponents(S, [e])) <= H)
        if not (count == brute == 2 * H + 1 <= unit_count_bound(S, H) == (2 * H + 1) ** 2):
            problems.append(H)
    return not problems, "S={t, inf}, H=1..5, count 2H+1" + (f"; mismatch at H={problems}" if problems else "")


def criterion_7(rng) -> tuple[bool, str]:
    y1, y2 = MultiPolynomial.gens(2, ("x1", "x2"))
    S = S_T01
    bad = cases = 0
    mixed = {"coprime": 0, "not coprime": 0}
    while cases < 200:
        u = UnitTuple([random_unit(rng, S) for _ in range(2)], S)
        a, b, c = rng.sample([1, 2, 3, -1, -2], 3)
        pool = [
            y1 - rf(u[0] / u[1]) * y2,  # vanishes at u
            y1 * y2 - rf(u[0] * u[1]) * c,  # vanishes at u up to the constant c
            y1 + a * y2,
            y1 + b * t * y2 + 1,
            y1 * y2 + c * t,
        ]
        k = rng.choice([2, 3])
        factors = rng.sample(pool, k)
        normed = {str(P * P.leading_coefficient().inverse()) for P in factors}
        if len(normed) < k:
            continue
        F = factors[0]
        for P in factors[1:]:
            F = F * P
        try:
            r = split_ab(F, factors, u, repetitions=8, seed=cases)
        except ValueError:
            continue
        cases += 1
        mixed["not coprime" if r.b_factors else "coprime"] += 1
        Bu = rf(r.B.evaluate(list(u)))
        if Bu and not is_s_unit(Bu, S):
            bad += 1
        elif relevant_height(r.A) > 2 * relevant_height(F):
            bad += 1
        elif not r.certificate.certified:
            bad += 1
    ok = bad == 0 and min(mixed.values()) > 0
    return ok, f"{cases} products, {bad} contract failures, mix {mixed}"


def _unit_coeff(rng):
    return rng.choice([1, -1, 2]) * t ** rng.randint(-2, 2) * (t - 1) ** rng.randint(-1, 1)


def criterion_8(rng) -> tuple[bool, str]:
    p = Place.at(2)
    certified = wrong = 0
    for _ in range(100):
        forms = []
        for d in (1, 1, rng.randint(1, 2)):
            monos = rng.sample(monomials_of_degree(3, d), rng.randint(1, 3))
            forms.append(MultiPolynomial(3, {e: _unit_coeff(rng) for e in monos}))
        cert = general_position_by_specialization(forms, p)
        if cert.certified:
            certified += 1
            if not general_position_n2(forms):
                wrong += 1
    spot = 0
    for _ in range(20):
        A, B, C = (random_form(rng, 3, rng.randint(1, 2)) for _ in range(3))
        J = jacobian_form([A, B, C])
        k = random_ratfunc(rng, 1)
        spot += jacobian_form([B, A, C]) != -J
        spot += bool(jacobian_form([A, A, C]))
        spot += jacobian_form([A * k, B, C]) != J * k
        A2 = random_form(rng, 3, A.degree)
        spot += jacobian_form([A + A2, B, C]) != J + jacobian_form([A2, B, C])
    example = jacobian_form([x0, x1, x2**2 + x0 * x1]) == 2 * x2
    ok = wrong == 0 and spot == 0 and example and certified > 0
    return ok, f"{certified}/100 certified, {wrong} not in general position, {spot} spot-check failures, J=2*x2: {example}"


def criterion_9(rng) -> tuple[bool, str]:
    pairs = normalized_pairs(3)
    cases = wrong = 0
    while cases < 100:
        d = rng.randint(1, 3)
        terms = {}
        for k in range(d + 1):
            for e in monomials_of_degree(3, k):
                if e[0] == d - k and rng.random() < 0.7:
                    terms[(e[1], e[2])] = rng.choice([1, -1, 2, -3, Fraction(1, 2)])
        # full top form and a constant term keep the generic degree pattern
        for i in range(d + 1):
            terms[(i, d - i)] = terms.get((i, d - i)) or rng.choice([1, -2, 3])
        terms[(0, 0)] = terms.get((0, 0)) or 1
        G = MultiPolynomial(2, terms, ("X", "Y"))
        norm = rng.choice(pairs)
        try:
            sub = substitute_b(G, norm)
        except HypothesisError:
            continue
        cases += 1
        if sub.degree_T != predicted_degree_T(norm, d):
            wrong += 1
    return wrong == 0, f"{cases} (G, pair) instances, {wrong} degree mismatches"


def criterion_10() -> tuple[bool, str]:
    jobs = sorted((GOLDEN / "jobs").glob("*.json"))
    mismatched = []
    with tempfile.TemporaryDirectory() as tmp:
        for job in jobs:
            sub = job.stem.split("_", 1)[1].split("_")[0]
            outs = []
            for k in range(2):
                out = Path(tmp) / f"{job.stem}.{k}.json"
                cli_main([sub, "--config", str(job), "--out", str(out)])
                outs.append(out.read_bytes())
            expected = (GOLDEN / "expected" / job.name).read_bytes()
            if not (outs[0] == outs[1] == expected):
                mismatched.append(job.stem)
            json.loads(outs[0])
    ok = len(jobs) == 12 and not mismatched
    return ok, f"{len(jobs)} jobs byte-identical across runs and to golden files" + (
        f"; mismatched {mismatched}" if mismatched else "")


CRITERIA = {
    1: lambda: criterion_1(random.Random(1)),
    2: lambda: criterion_2(random.Random(2)),
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: lambda: criterion_7(random.Random(7)),
    8: lambda: criterion_8(random.Random(8)),
    9: lambda: criterion_9(random.Random(9)),
    10: criterion_10,
}


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k]()
    with capsys.disabled():
        print("\n" + _line(k, ok, detail))
    assert ok, detail


def test_generic_family_corrected_count():
    # 1 + t^N + (t-1)^N has the double factor t^2 - t + 1 exactly when N = 4 mod 6
    z = sympy.Symbol("z")
    for N in range(1, 61):
        value = rf(G_LINE.evaluate([1, t**N, (t - 1) ** N]))
        _, N1 = zero_counts(value, S_T01)
        _, factors = sympy.factor_list(1 + z**N + (z - 1) ** N)
        oracle = sum(sympy.degree(f, z) for f, _ in factors if f not in (z, z - 1))
        assert N1 == oracle == N - N % 2 - 2 * (N % 6 == 4)


if __name__ == "__main__":
    results = []
    for k in sorted(CRITERIA):
        ok, detail = CRITERIA[k]()
        print(_line(k, ok, detail), flush=True)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
