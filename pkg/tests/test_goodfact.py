import random

import pytest

from gorcert.polyring import IntPoly, ONE, div_exact_or_none, factor, is_irreducible, parse_poly as P
from gorcert.rootcert import Indeterminate, r_condition
from gorcert.goodfact import (
    FinitenessSide,
    HypothesisViolated,
    PringsheimVerdict,
    Reason,
    SearchLog,
    _make_certificate,
    find_good_factorization,
    pringsheim_check,
    resolve_finiteness,
    validate_certificate,
)
from gorcert.catalog import RingClass, SweepRanges, denominator, sweep_classes
from gorcert.series import RationalSeries, coefficients

from oracles import brute_good_factorizations


def cert(p, q, r):
    return _make_certificate(P(p), P(q), P(r), with_report=False)


def test_minimal_multiplicity_is_its_own_p():
    c = find_good_factorization(P("1 - 3t + t^2"))
    assert (c.p, c.q, c.r) == (P("1 - 3t + t^2"), ONE, ONE)


def test_gh_7_5():
    c = find_good_factorization(P("1 - 2t - 5t^2 + 3t^3 + 2t^4 - t^5"))
    assert (c.p, c.q, c.r) == (P("1 - 3t - t^2 + t^3"), ONE, P("1 + t - t^2"))
    assert c.evidence.r_report is not None


def test_square_of_one_minus_t_has_none():
    assert find_good_factorization(P("1 - 2t + t^2")) is None


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        find_good_factorization(IntPoly())
    with pytest.raises(ValueError):
        find_good_factorization(P("-1 + t"))


def test_indeterminate_candidate_is_logged_and_skipped(monkeypatch):
    import gorcert.goodfact as gf

    real = gf.r_condition
    stuck = P("1 + t - t^2")

    def fake(r, *a, **k):
        if r == stuck:
            raise Indeterminate("forced")
        return real(r, *a, **k)

    monkeypatch.setattr(gf, "r_condition", fake)
    log = SearchLog()
    # GH(7,5) needs r = 1 + t - t^2; with that candidate undecided nothing else works
    assert find_good_factorization(denominator(RingClass("GH", 7, 5)).d, log) is None
    assert log.indeterminate == [stuck]


@pytest.mark.parametrize(
    "c,triple",
    [
        (denominator(RingClass("G", 4)).d, ("1 - 3t + t^2", "1 + 2t + t^2", "1")),
        (denominator(RingClass("GTE", 6)).d, ("1 - 4t + 3t^2 - t^3", "1 + 2t + t^2", "1")),
    ],
)
def test_validate_known_certificates(c, triple):
    assert validate_certificate(c, cert(*triple)) == (True, Reason.OK)


def test_validate_swapped_slots():
    c = denominator(RingClass("G", 4)).d
    assert validate_certificate(c, cert("1 + 2t + t^2", "1 - 3t + t^2", "1")) == (False, Reason.Q_NEGATIVE_COEFFICIENT)


@pytest.mark.parametrize(
    "triple,reason",
    [
        (("1 - 3t + t^2", "1 + 2t + t^2", "2"), Reason.PRODUCT_MISMATCH),
        (("1 + 2t + t^2", "1 - 3t + t^2", "1"), Reason.Q_NEGATIVE_COEFFICIENT),
        (("1", "1 + 2t + t^2", "1 - 3t + t^2"), Reason.R_CONDITION_FAILS),
        (("1 - 3t + t^2", "1", "1 + 2t + t^2"), Reason.R_NOT_IRREDUCIBLE),
    ],
)
def test_validate_reasons(triple, reason):
    c = denominator(RingClass("G", 4)).d
    assert validate_certificate(c, cert(*triple)) == (False, reason)


def test_validate_reducible_p():
    c = P("1 + t") ** 2
    assert validate_certificate(c, cert("1 + 2t + t^2", "1", "1")) == (False, Reason.P_NOT_IRREDUCIBLE)


# -- Pringsheim -----------------------------------------------------------------------


def test_pringsheim_divides():
    assert pringsheim_check(P("1 + t - t^2"), P("1 + t - t^2")).verdict is PringsheimVerdict.DIVIDES_EXACTLY


def test_pringsheim_golden():
    res = pringsheim_check(ONE, P("1 + t - t^2"))
    # 1, -1, 2, -3, 5, ...: the first negative coefficient is at index 1
    assert res.verdict is PringsheimVerdict.NEGATIVE_COEFFICIENT_FOUND and res.index == 1


def test_pringsheim_cube_root_of_unity():
    res = pringsheim_check(P("1 + t"), P("1 + t + t^2"))
    assert res.verdict is PringsheimVerdict.NEGATIVE_COEFFICIENT_FOUND and res.index == 2
    assert coefficients(RationalSeries.of(P("1 + t"), P("1 + t + t^2")), 4) == [1, 0, -1, 1]


def test_pringsheim_inconclusive_is_reported():
    # a positive series cannot yield a negative coefficient
    assert pringsheim_check(ONE, P("1 - t - t^2"), horizon=50).verdict is PringsheimVerdict.INCONCLUSIVE


def test_pringsheim_never_inconclusive_on_catalog_factors():
    seen = set()
    for rc in sweep_classes(SweepRanges(40, 40, 40, 25)):
        for g, _ in factor(denominator(rc).c).factors:
            r = -g if g[0] < 0 else g
            if r in seen or r[0] != 1 or not r_condition(r):
                continue
            seen.add(r)
            for w in (ONE, P("1 + t"), P("2 + t^3")):
                res = pringsheim_check(w, r)
                assert res.verdict is not PringsheimVerdict.INCONCLUSIVE, (r, w)
    assert len(seen) > 5


def test_nonnegative_expansion_forces_r_condition_failure():
    # contrapositive of the Pringsheim argument: a nonnegative prefix of w/r with r not dividing w
    rng = random.Random(31)
    found = 0
    for _ in range(400):
        r = IntPoly([1] + [rng.randint(-4, 4) for _ in range(rng.randint(1, 3))])
        if r.degree < 1 or not is_irreducible(r):
            continue
        w = IntPoly([rng.randint(0, 5) for _ in range(3)] + [1])
        if div_exact_or_none(w, r) is not None:
            continue
        if pringsheim_check(w, r, horizon=2000).verdict is PringsheimVerdict.INCONCLUSIVE:
            found += 1
            assert r_condition(r) is False
    assert found > 5


# -- finiteness -----------------------------------------------------------------------


def test_resolve_projective_side():
    b = denominator(RingClass("G", 4)).c
    c = find_good_factorization(b)
    m = b  # P_M = 1: free module
    n = P("1 + t")
    verdict = resolve_finiteness(b, c, m, n)
    assert verdict.side is FinitenessSide.PROJ_DIM_FINITE
    assert verdict.witness_polynomial.is_nonnegative()


def test_resolve_injective_side():
    b = denominator(RingClass("G", 4)).c
    c = find_good_factorization(b)
    verdict = resolve_finiteness(b, c, ONE, b * P("2 + t"))
    assert verdict.side is FinitenessSide.INJ_DIM_FINITE


def test_resolve_rejects_bad_hypotheses():
    b = denominator(RingClass("G", 4)).c
    c = find_good_factorization(b)
    with pytest.raises(HypothesisViolated):
        resolve_finiteness(b * 2, c, b, ONE)
    with pytest.raises(HypothesisViolated):
        resolve_finiteness(b, c, ONE, ONE)


def test_resolve_agrees_with_divisibility_oracle():
    rng = random.Random(32)

    def nonneg():
        return IntPoly([rng.randint(0, 3) for _ in range(rng.randint(0, 3))] + [rng.randint(1, 3)])

    for rc in [RingClass("G", 4), RingClass("GH", 7, 5), RingClass("GGO", 8), RingClass("GTE", 9), RingClass("G", 10)]:
        b = denominator(rc).c
        c = find_good_factorization(b)
        decided = 0
        for k in range(60):
            # one side polynomial, the other an arbitrary nonnegative numerator
            if k % 2:
                m, n = b * nonneg(), nonneg()
            else:
                m, n = nonneg(), b * nonneg()
            try:
                verdict = resolve_finiteness(b, c, m, n)
            except HypothesisViolated:
                continue
            decided += 1
            proj = div_exact_or_none(m, b) is not None
            assert (verdict.side is FinitenessSide.PROJ_DIM_FINITE) == proj
        assert decided >= 30


# -- soundness and completeness ------------------------------------------------------


def test_soundness_on_random_inputs():
    rng = random.Random(33)
    for _ in range(150):
        c = IntPoly([1] + [rng.randint(-6, 6) for _ in range(rng.randint(1, 6))])
        if not c or c.lead == 0:
            continue
        res = find_good_factorization(c)
        if res is not None:
            assert validate_certificate(c, res) == (True, Reason.OK)


def test_completeness_against_brute_force():
    rng = random.Random(34)
    checked = 0
    while checked < 250:
        n = rng.randint(1, 5)
        c = IntPoly([rng.randint(1, 30)] + [rng.randint(-30, 30) for _ in range(n - 1)] + [rng.choice([v for v in range(-30, 31) if v])])
        log = SearchLog()
        try:
            res = find_good_factorization(c, log)
        except Indeterminate:
            continue
        if log.indeterminate:
            continue
        brute = brute_good_factorizations(list(c.coeffs))
        assert (res is None) == (not brute), c
        checked += 1


def test_completeness_on_products():
    rng = random.Random(35)
    pieces = [P(x) for x in ("1 + t", "1 - t", "1 - 3t + t^2", "1 + t - t^2", "1 + t + t^2", "1 - 2t", "2 + t", "1 + t^2")]
    for _ in range(120):
        c = ONE
        for _ in range(rng.randint(1, 3)):
            c = c * rng.choice(pieces)
        if c.degree > 5:
            continue
        res = find_good_factorization(c)
        brute = brute_good_factorizations(list(c.coeffs))
        assert (res is None) == (not brute), c
