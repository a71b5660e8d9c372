import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gorcert.polyring import (
    DegreeCapExceeded,
    IntPoly,
    NonExactDivision,
    ONE,
    divisors,
    evaluate,
    exact_div,
    factor,
    format_poly,
    gcd,
    is_irreducible,
    is_squarefree,
    parse_poly,
    rational_roots,
    squarefree_decomposition,
    squarefree_part,
)

from oracles import kronecker_factor

P = parse_poly

coeff_lists = st.lists(st.integers(-20, 20), min_size=0, max_size=7)
polys = coeff_lists.map(IntPoly)
nonzero_polys = polys.filter(bool)


def test_zero_polynomial_is_empty():
    z = IntPoly([0, 0, 0])
    assert z.coeffs == () and z.degree == -1 and not z
    assert IntPoly([1, 2, 0]).coeffs == (1, 2)


def test_product_from_the_l4_case():
    assert P("1 - 3*t + t^2") * P("1 + t") ** 2 == P("1 - t - 4*t^2 - t^3 + t^4")


def test_identity_and_annihilation():
    f = P("1 - 2t - 4t^2 + t^3")
    assert f * ONE == f
    assert not (f - f)


def test_mirror_flips_odd_coefficients():
    assert P("1 - 2*t - 4*t^2 + t^3 + t^4 - t^5").mirror() == P("1 + 2*t - 4*t^2 - t^3 + t^4 + t^5")


@pytest.mark.parametrize("l", range(5, 40))
@pytest.mark.parametrize("p", [1, 2, 3, 5])
def test_gh_values_at_plus_minus_one(l, p):
    d = IntPoly((1, -2, -(l - 2), p - 2, 2, -1))
    assert evaluate(d, 1) == p - l
    assert evaluate(d, -1) == 10 - l - p


@pytest.mark.parametrize("l", range(4, 30))
def test_g_value_at_minus_one(l):
    assert evaluate(IntPoly((1, -1, -l, -1, 1)), -1) == 4 - l


def test_evaluate_fraction():
    assert evaluate(P("1 - 3t + t^2"), Fraction(1, 2)) == Fraction(-1, 4)


@pytest.mark.parametrize(
    "text,roots",
    [
        ("1 - t - 4*t^2 - t^3 + t^4", [Fraction(-1)]),
        ("1 - 3*t + t^2", []),
        ("t^2 - 1", [Fraction(-1), Fraction(1)]),
        ("6*t^2 - 5*t + 1", [Fraction(1, 3), Fraction(1, 2)]),
        ("t^3", [Fraction(0)]),
    ],
)
def test_rational_roots(text, roots):
    assert rational_roots(P(text)) == roots


def test_factor_l4_denominator():
    fac = factor(P("1 - t - 4*t^2 - t^3 + t^4"))
    assert fac.unit == 1
    assert fac.factors == ((P("1 + t"), 2), (P("1 - 3t + t^2"), 1))
    assert P("1 - 3t + t^2").lead == 1  # t^2 - 3t + 1 in descending order


def test_factor_gte5_irreducible():
    f = P("1 - 2t - 3t^2 + t^3 + t^4 - t^5")
    fac = factor(f)
    assert fac.unit == -1 and fac.factors == ((-f, 1),)
    assert is_irreducible(f)


def test_factor_g10_two_quadratics():
    fac = factor(P("1 - t - 10t^2 - t^3 + t^4"))
    assert Counter(dict(fac.factors)) == Counter({P("1 - 4t + t^2"): 1, P("1 + 3t + t^2"): 1})


def test_factor_content_and_sign():
    f = P("-6 - 6t")
    fac = factor(f)
    assert (fac.unit, fac.content) == (-1, 6)
    assert fac.expand() == f


@pytest.mark.parametrize("text,expected", [("1 - 3t + t^2", True), ("1 - 2t + t^2", False), ("1 - 4t + 3t^2 - t^3", True)])
def test_is_irreducible(text, expected):
    assert is_irreducible(P(text)) is expected


def test_degree_cap():
    with pytest.raises(DegreeCapExceeded):
        factor(IntPoly.monomial(20) + ONE)
    assert factor(IntPoly.monomial(20) + ONE, degree_cap=24).expand() == IntPoly.monomial(20) + ONE


def test_exact_division_errors():
    with pytest.raises(NonExactDivision):
        exact_div(P("1 + t^2"), P("1 + t"))
    with pytest.raises(NonExactDivision):
        exact_div(P("1 + t"), P("2"))
    assert exact_div(P("2 + 2t"), P("2")) == P("1 + t")


def test_factor_degree_15():
    f = P("1 - 3t + t^2") ** 2 * P("1 + t") ** 3 * P("1 - 2t - 3t^2 + t^3 + t^4 - t^5") * P("t^3 - 2")
    fac = factor(f)
    assert fac.expand() == f
    assert Counter(dict(fac.factors)) == Counter(
        {P("1 + t"): 3, P("1 - 3t + t^2"): 2, P("t^3 - 2"): 1, P("-1 + 2t + 3t^2 - t^3 - t^4 + t^5"): 1}
    )


# -- grammar ----------------------------------------------------------------------


@pytest.mark.parametrize(
    "text,coeffs",
    [
        ("1 - 2*t - 4*t^2 + t^3", (1, -2, -4, 1)),
        ("t", (0, 1)),
        ("-t^2", (0, 0, -1)),
        ("3t^2+2 t - 7", (-7, 2, 3)),
        ("0", ()),
        ("t^2 + t^2", (0, 0, 2)),
    ],
)
def test_parse(text, coeffs):
    assert P(text).coeffs == coeffs


@pytest.mark.parametrize("bad", ["", "1 +", "t^", "2**t", "x + 1", "1 - - t", "t^-1"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        P(bad)


def test_canonical_format():
    assert format_poly(P("-t^5 + t^4 + t^3 - 4t^2 - 2t + 1")) == (
        "1 - 2*t - 4*t^2 + t^3 + t^4 - t^5"
    )
    assert format_poly(IntPoly()) == "0"
    assert format_poly(P("-1")) == "-1"


@given(polys)
def test_print_parse_round_trip(f):
    assert parse_poly(format_poly(f)) == f


# -- algebraic properties -----------------------------------------------------------


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@given(polys, polys, st.fractions(max_denominator=20).filter(lambda x: abs(x) < 50))
def test_eval_is_multiplicative(f, g, x):
    assert evaluate(f * g, x) == evaluate(f, x) * evaluate(g, x)


@given(nonzero_polys, nonzero_polys)
def test_gcd_divides_both(a, b):
    g = gcd(a, b)
    assert g.lead > 0
    assert exact_div(a.primitive(), g) * g == a.primitive()
    assert exact_div(b.primitive(), g) * g == b.primitive()


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_of_multiples_contains_common_factor(a, b, c):
    g = gcd(a * c, b * c)
    assert exact_div((a * c).primitive(), g)  # no exception
    assert (g // c.primitive()) is not None if c.degree > 0 else True


@given(nonzero_polys)
def test_squarefree_decomposition_reconstructs(f):
    f = f.primitive()
    parts = squarefree_decomposition(f)
    prod = ONE
    for g, k in parts:
        prod = prod * g**k
    assert prod.primitive() == f
    assert is_squarefree(squarefree_part(f)) or squarefree_part(f).degree < 1


@given(nonzero_polys.filter(lambda f: f.degree >= 1))
def test_rational_roots_match_candidate_enumeration(f):
    cands = set()
    for p in divisors(f[next(i for i, c in enumerate(f.coeffs) if c)]):
        for q in divisors(f.lead):
            cands |= {Fraction(p, q), Fraction(-p, q)}
    if f[0] == 0:
        cands.add(Fraction(0))
    expected = sorted(x for x in cands if evaluate(f, x) == 0)
    assert rational_roots(f) == expected


def test_round_trip_degree_8():
    rng = random.Random(8)
    for _ in range(400):
        n = rng.randint(0, 8)
        f = IntPoly([rng.randint(-20, 20) for _ in range(n)] + [rng.choice([-3, -2, -1, 1, 2, 3, 20, -20])])
        fac = factor(f)
        assert fac.expand() == f
        for g, k in fac.factors:
            assert g.lead > 0 and g.content() == 1 and k >= 1


def test_agrees_with_kronecker_oracle_small_sample():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(1, 5)
        f = [rng.randint(-20, 20) for _ in range(n)] + [rng.choice([v for v in range(-20, 21) if v])]
        unit, cont, facs = kronecker_factor(f)
        got = factor(IntPoly(f))
        assert (got.unit, got.content) == (unit, cont)
        assert Counter({g.coeffs: k for g, k in got.factors}) == facs


def test_agrees_with_sympy_on_products():
    sympy = pytest.importorskip("sympy")
    t = sympy.symbols("t")
    rng = random.Random(3)
    for _ in range(60):
        f = ONE
        for _ in range(rng.randint(1, 4)):
            f = f * IntPoly([rng.randint(-4, 4) for _ in range(rng.randint(1, 3))] + [rng.choice([1, -1, 2])])
        if not f:
            continue
        expr = sum(c * t**i for i, c in enumerate(f.coeffs))
        _, ref = sympy.factor_list(sympy.Poly(expr, t))
        ref_count = Counter()
        for g, k in ref:
            cs = [int(c) for c in reversed(g.all_coeffs())]
            if cs[-1] < 0:
                cs = [-c for c in cs]
            ref_count[tuple(cs)] += k
        assert Counter({g.coeffs: k for g, k in factor(f).factors}) == ref_count
