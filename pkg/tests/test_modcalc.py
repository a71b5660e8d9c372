import random

import pytest
from hypothesis import given, strategies as st

from gorcert.polyring import IntPoly, ONE, parse_poly as P
from gorcert.series import RationalSeries, coefficients
from gorcert.modcalc import (
    MINUS_INFINITY,
    PLUS_INFINITY,
    DepthZero,
    ExtTorIndex,
    HypothesisUnmet,
    Inconsistent,
    IndexKind,
    ModuleDescriptor,
    RingContext,
    Side,
    Which,
    corollary_last_scenario,
    ext_ledger,
    finite,
    hom_bass,
    kill_regular_element,
    predicted_vanishing,
    selftest_pd,
    syzygy_series,
    tensor_poincare,
    tor_by_depth_formula,
    tor_ledger,
)

S = RationalSeries.of
C = P("1 - 3t + t^2")


def module(label="M", poincare=ONE, depth=0, dim=0, **kw):
    return ModuleDescriptor(label=label, poincare=poincare, depth=depth, dim=dim, **kw)


# -- indices ---------------------------------------------------------------------------


def test_minus_infinity_differs_from_zero():
    assert MINUS_INFINITY != finite(0)
    assert str(MINUS_INFINITY) == "MinusInfinity" and str(finite(2)) == "Finite(2)"


def test_index_validation():
    with pytest.raises(ValueError):
        ExtTorIndex(IndexKind.FINITE, -1, -1)
    with pytest.raises(ValueError):
        ExtTorIndex(IndexKind.INTERVAL, 3, 2)
    with pytest.raises(ValueError):
        ExtTorIndex(IndexKind.PLUS_INFINITY, 1, 1)
    assert ExtTorIndex.interval(4, 4) == finite(4)


def test_provenance_ignored_by_equality():
    assert ExtTorIndex.finite(1, ("a",)) == ExtTorIndex.finite(1, ("b",))


# -- Hom and tensor -----------------------------------------------------------------


def test_hom_bass_examples():
    i_n = S(P("1 + t"), C)
    assert hom_bass(S(1), i_n) == i_n
    assert hom_bass(S(1, C), S(1)) == S(1, C)
    prod = hom_bass(S(1, C), S(1, C))
    assert prod == S(1, C * C) and coefficients(prod, 3) == [1, 6, 25]


def test_tensor_poincare_mirrors_hom():
    a, b = S(P("1 + t"), C), S(P("2 + t"), P("1 - t"))
    assert tensor_poincare(a, b) == tensor_poincare(b, a) == a * b
    assert tensor_poincare(S(1), a) == a


@pytest.mark.parametrize("bad", [finite(1), MINUS_INFINITY, PLUS_INFINITY, ExtTorIndex.interval(0, 1)])
def test_hypotheses_enforced(bad):
    with pytest.raises(HypothesisUnmet):
        hom_bass(S(1), S(1), bad)
    with pytest.raises(HypothesisUnmet):
        tensor_poincare(S(1), S(1), bad)


# -- descriptors ---------------------------------------------------------------------


def test_descriptor_invariants():
    with pytest.raises(ValueError):
        module(depth=2, dim=1)
    with pytest.raises(ValueError):
        module(depth=1, dim=1, finite_length=True)
    with pytest.raises(ValueError):
        module(depth=1, dim=2, bass=S(1, C))  # Bass numbers start at the depth
    md = module(poincare=S(1, C), bass=S(P("t^2"), C), depth=2, dim=3)
    assert not md.pd_finite and not md.id_finite and not md.has_finite_cidim
    free = module(poincare=ONE, depth=2, dim=2)
    assert free.pd_finite and free.has_finite_cidim


def test_kill_free_module():
    md = kill_regular_element(module(poincare=ONE, depth=2, dim=2))
    assert md.poincare == S(P("1 + t")) and md.depth == 1 and md.dim == 1


def test_kill_periodic_module():
    md = kill_regular_element(module(poincare=S(1, P("1 - t^2")), depth=1, dim=1))
    assert md.poincare == S(1, P("1 - t"))
    assert md.finite_length


def test_kill_iterated_pd():
    md = module(poincare=S(2, P("1 - t")), depth=5, dim=5, pd_over_deformation=1)
    for _ in range(5):
        md = kill_regular_element(md)
    assert md.pd_over_deformation == 6 and md.depth == 0
    with pytest.raises(DepthZero):
        kill_regular_element(md)


def test_kill_bass_series():
    md = module(poincare=S(1, P("1 - 2t")), bass=S(P("t^2"), P("1 - 2t")), depth=2, dim=2)
    out = kill_regular_element(md)
    assert out.bass == S(P("t + t^2"), P("1 - 2t"))


def test_mapping_cone_betti_identity():
    rng = random.Random(41)
    for _ in range(50):
        rs = S(IntPoly([rng.randint(0, 5) for _ in range(3)] + [1]), IntPoly([1] + [rng.randint(-3, 0) for _ in range(2)]))
        md = module(poincare=rs, depth=1, dim=1)
        new = coefficients(kill_regular_element(md).poincare, 100)
        old = coefficients(rs, 100)
        assert new == [old[n] + (old[n - 1] if n else 0) for n in range(100)]


# -- ledgers -----------------------------------------------------------------------------


def test_ext_ledger_examples():
    assert ext_ledger(finite(0), Side.FIRST) == finite(1)
    assert ext_ledger(PLUS_INFINITY, "first") == PLUS_INFINITY
    assert ext_ledger(finite(3), Side.SECOND) == finite(3)


@given(st.integers(0, 50), st.integers(0, 20))
def test_ext_ledger_composition(n, d):
    e = finite(n)
    for _ in range(d):
        nxt = ext_ledger(e, Side.FIRST)
        assert nxt.value > e.value
        e = nxt
    assert e == finite(n + d)
    assert ext_ledger(ext_ledger(MINUS_INFINITY, Side.FIRST), Side.FIRST) == MINUS_INFINITY


def test_tor_ledger_examples():
    assert tor_ledger(finite(0), True) == finite(1)
    assert tor_ledger(finite(2), False) == ExtTorIndex.interval(2, 3)
    assert tor_ledger(PLUS_INFINITY, True) == PLUS_INFINITY
    assert tor_ledger(PLUS_INFINITY, False) == PLUS_INFINITY


def test_provenance_records_steps():
    e = ext_ledger(ext_ledger(ExtTorIndex.finite(0, ("base",)), Side.FIRST), Side.SECOND)
    assert e.provenance[0] == "base" and len(e.provenance) == 3


# -- predictions --------------------------------------------------------------------------


def test_predicted_vanishing_examples():
    ring = RingContext(3, 3, codim=4)
    m = module("M", S(1, C), depth=1, dim=3, cidim_finite=True)
    n = module("N", S(1, C), depth=2, dim=3)
    assert predicted_vanishing(ring, m, n, Which.EXT_MN) == finite(2)
    assert predicted_vanishing(ring, m, n, "ext_NM") == finite(1)
    assert predicted_vanishing(ring, m, n, Which.TOR) == ExtTorIndex.interval(0, 2)
    free = module("F", ONE, depth=3, dim=3)
    assert predicted_vanishing(ring, free, n, Which.EXT_MN) == finite(0)


def test_predicted_vanishing_finite_length_pair():
    for d in range(6):
        ring = RingContext(d, d)
        m = module("M", S(2, P("1 - t")), cidim_finite=True, finite_length=True)
        n = module("N", S(1, P("1 - 2t")), finite_length=True)
        assert predicted_vanishing(ring, m, n, Which.EXT_MN) == finite(d)
        assert predicted_vanishing(ring, m, n, Which.EXT_NM) == finite(d)
        assert predicted_vanishing(ring, m, n, Which.TOR) == ExtTorIndex.interval(0, d)


def test_predicted_vanishing_symmetry():
    rng = random.Random(42)
    for _ in range(100):
        dim = rng.randint(0, 6)
        ring = RingContext(dim, dim)
        a = module("A", S(1, C), depth=rng.randint(0, dim), dim=dim, cidim_finite=rng.random() < 0.5)
        b = module("B", ONE, depth=rng.randint(0, dim), dim=dim)
        assert predicted_vanishing(ring, a, b, Which.EXT_MN) == predicted_vanishing(ring, b, a, Which.EXT_NM)
        assert predicted_vanishing(ring, a, b, Which.TOR) == predicted_vanishing(ring, b, a, Which.TOR)


def test_predicted_vanishing_needs_finiteness():
    ring = RingContext(2, 2)
    m = module("M", S(1, C), depth=1, dim=2)
    with pytest.raises(HypothesisUnmet):
        predicted_vanishing(ring, m, m, Which.EXT_MN)
    with pytest.raises(HypothesisUnmet):
        predicted_vanishing(ring, module("F", ONE, depth=2, dim=2), m, Which.TOR, finiteness_assumed=False)


def test_ring_context_validation():
    with pytest.raises(ValueError):
        RingContext(3, 2)
    assert RingContext(3, 2, gorenstein=False).depth == 2


# -- self test ------------------------------------------------------------------------------


def test_selftest_examples():
    assert selftest_pd(module(poincare=ONE, depth=2, dim=2), finite(0)) == 0
    m = module(poincare=P("1 + 2t + t^2"), depth=0, dim=2)
    assert selftest_pd(m, finite(2), RingContext(2, 2, codim=3)) == 2
    with pytest.raises(Inconsistent):
        selftest_pd(module(poincare=S(1, C)), finite(1))


def test_selftest_edge_cases():
    poly = module(poincare=P("1 + t"), depth=1, dim=2)
    with pytest.raises(Inconsistent):
        selftest_pd(poly, MINUS_INFINITY)
    with pytest.raises(Inconsistent):
        selftest_pd(poly, PLUS_INFINITY)
    with pytest.raises(Inconsistent):
        selftest_pd(poly, finite(2))  # degree 1
    with pytest.raises(Inconsistent):
        selftest_pd(poly, finite(1), RingContext(3, 3, codim=3))  # Auslander-Buchsbaum gives 2
    with pytest.raises(ValueError):
        selftest_pd(poly, ExtTorIndex.interval(0, 1))
    with pytest.raises(HypothesisUnmet):
        selftest_pd(poly, finite(1), RingContext(2, 2, codim=5))
    assert selftest_pd(module(poincare=S(1, C)), PLUS_INFINITY) is None


def test_depth_formula():
    ring = RingContext(4, 4)
    m = module("M", S(1, C), depth=3, dim=4)
    n = module("N", S(1, C), depth=2, dim=4)
    # depth R - depth M - depth N = -1, so Tor_q needs depth 1 for q = 0
    assert tor_by_depth_formula(ring, m, n, 0, 1) == finite(0)
    with pytest.raises(Inconsistent):
        tor_by_depth_formula(ring, m, n, 1, 1)
    with pytest.raises(HypothesisUnmet):
        tor_by_depth_formula(ring, m, n, 2, 3)


def test_syzygy_series():
    rs = S(P("1 + 3t + 2t^2"), P("1 - t"))
    assert coefficients(syzygy_series(rs, 2), 5) == coefficients(rs, 7)[2:]
    assert syzygy_series(rs, 0) == rs


# -- the scenario -----------------------------------------------------------------------------


@pytest.mark.parametrize("d,e,pd", [(0, 0, 1), (2, 2, 3), (5, 5, 6)])
def test_scenario_examples(d, e, pd):
    rep = corollary_last_scenario(d)
    assert rep.e_mn == rep.t_mn == rep.e_nm == finite(e)
    assert rep.t_mn.kind is IndexKind.FINITE
    assert rep.pd_q == pd and rep.syzygy_period2


def test_scenario_json_has_provenance():
    js = corollary_last_scenario(3).to_json()
    assert js["e_MN"]["value"] == 3 and js["pd_Q_M"] == 4
    assert len(js["e_MN"]["provenance"]) == 1 + 2 * 3
    assert js["M"]["finite_length"] and js["N"]["finite_length"]


def test_scenario_rejects_negative():
    with pytest.raises(ValueError):
        corollary_last_scenario(-1)
