from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from newtonflat.curves import (POSITIVE, UNKNOWN_FINITE_JET, ZERO_RADIUS, CurveJet, Obstruction,
                               SearchConfig, SSeries, TangencyWitness, absorb_ladder, compose, compose_S,
                               contact_order, curve, curve_regularity_check, extract_S, model_from,
                               radius_verdict, split_model, tangency_witness, type_search)
from newtonflat.errors import BadCurve, DimensionMismatch, NotModelForm
from newtonflat.gaussian import gq
from newtonflat.hermitian import HermitianJet, build_jet
from newtonflat.newton import rho1
from newtonflat.parsing import parse, parse_curve
from newtonflat.tails import geometric, polynomial_rate, power_factorial
from newtonflat.values import AtLeast, Infinite
from oracles import compose_oracle

CUSP = "2*Re(w) + |z1^3 - z2^2|^2 + 2*Re(z1^8 + z1^9 + z1^10)"


def jet(text):
    return parse(text).jet


def ladder_model(cs):
    """``2 Re(w) + |z1^3 - z2^2|^2 + sum 2 Re(c_j z1^j)`` for ``j = 8..N``."""
    pure = " + ".join(f"2*Re(({c})*z1^{j})" for j, c in cs.items())
    return jet(f"2*Re(w) + |z1^3 - z2^2|^2 + {pure}")


def ladder_curve(cs, validity):
    return curve({2: 1}, {3: 1}, {2 * j: -c for j, c in cs.items()}, validity=validity)


def test_compose_examples():
    r = jet("2*Re(w) + |z1|^6")
    assert compose(r, curve({1: 1}, {})).terms == {(3, 3): gq(1)}
    r = ladder_model({8: 1, 9: 1, 10: 1})
    assert compose(r, curve({2: 1}, {3: 1}, {16: -1, 18: -1, 20: -1})).terms == {}
    assert compose(jet("2*Re(w)"), curve({1: 1})).terms == {(1, 0): gq(1), (0, 1): gq(1)}


def test_contact_examples():
    r = jet("2*Re(w) + |z1|^6")
    res = contact_order(r, curve({1: 1}, {}))
    assert (res.order, res.ratio) == (6, 6)
    r = jet(CUSP)
    res = contact_order(r, curve({2: 1}, {3: 1}, {}))
    assert (res.order, res.ratio) == (16, 8)
    res = contact_order(r, curve({}, {1: 1}, {}))
    assert (res.order, res.ratio) == (4, 4)


def test_exact_zero_is_infinite():
    r = ladder_model({8: 1})
    res = contact_order(r, curve({2: 1}, {3: 1}, {16: -1}))
    assert res.order == Infinite() and res.order.exact


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        compose(jet("2*Re(w)"), curve({1: 1}, {1: 1}))


def test_curve_validation():
    with pytest.raises(BadCurve):
        curve({2: 1}, {4: 1})
    with pytest.raises(BadCurve):
        curve({0: 1, 1: 1})
    with pytest.raises(BadCurve):
        CurveJet(({}, {}))
    with pytest.raises(BadCurve):
        CurveJet(({5: 1},), validity=3)
    assert curve_regularity_check(curve({1: 1}, {3: -1})) == "Regular"
    assert curve_regularity_check(curve({2: 1}, {3: 1}, {})) == "Singular"


def test_censoring_at_validity():
    r = ladder_model({8: 1, 9: 1, 10: 1})
    gam = parse_curve("(t^2, t^3, -(t^16+t^18+t^20)) valid 40")
    res = contact_order(r, gam)
    assert res.order == AtLeast(41) and res.censored
    assert res.lower_bound() == Fraction(41, 2)


def test_censoring_at_jet_truncation():
    # unknown terms above T = 6 reach degree 7 * ord = 7 along (t, 0)
    r = parse("# n=1 T=6\n2*Re(w)").jet
    res = contact_order(r, curve({1: 1}, {}))
    assert res.order == AtLeast(7)


@pytest.mark.parametrize("N", [8, 9, 10])
def test_ladder_cancellation_law(N):
    cs = {j: 1 for j in range(8, N + 1)}
    r = ladder_model(cs)
    base = contact_order(r, ladder_curve(cs, 2 * N + 1))
    assert base.order == AtLeast(2 * N + 2)
    for j in cs:
        for delta in (Fraction(1), Fraction(-3, 2)):
            pert = dict(cs)
            pert[j] = cs[j] + delta
            gam = curve({2: 1}, {3: 1}, {2 * k: -c for k, c in pert.items()}, validity=2 * N + 1)
            assert contact_order(r, gam).order == 2 * j


nonzero_q = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)


@given(st.integers(8, 11), st.data())
def test_ladder_cancellation_property(N, data):
    cs = {j: data.draw(nonzero_q) for j in range(8, N + 1)}
    r = ladder_model(cs)
    assert contact_order(r, ladder_curve(cs, 2 * N + 1)).order == AtLeast(2 * N + 2)
    j = data.draw(st.sampled_from(sorted(cs)))
    delta = data.draw(nonzero_q)
    pert = {k: c + (delta if k == j else 0) for k, c in cs.items()}
    gam = curve({2: 1}, {3: 1}, {2 * k: -c for k, c in pert.items() if c}, validity=2 * N + 1)
    assert contact_order(r, gam).order == 2 * j


small = st.integers(-2, 2)


@st.composite
def compose_instances(draw):
    n = draw(st.integers(1, 2))
    entries = []
    for _ in range(draw(st.integers(1, 4))):
        a = tuple(draw(st.integers(0, 3)) for _ in range(n))
        b = tuple(draw(st.integers(0, 3)) for _ in range(n))
        c = gq(draw(small), draw(small))
        if a == b:
            c = gq(c.re)
        if c and any(a + b):
            entries.append(((a, b), c))
            if a != b:
                entries.append(((b, a), c.conjugate()))
    if not entries:
        entries = [(((1,) * n, (1,) * n), gq(1))]
    T = max(sum(a) + sum(b) for (a, b), _ in entries)
    complete = draw(st.booleans())
    coeffs = {}
    for k, c in entries:
        coeffs[k] = coeffs.get(k, gq(0)) + c
    coeffs = {k: c for k, c in coeffs.items() if c}
    if not coeffs:
        coeffs = {((1,) * n, (1,) * n): gq(1)}
    r = HermitianJet(n, coeffs, max(T, 1), () if complete else None)
    comps = []
    for _ in range(n):
        comps.append({d: gq(draw(small), draw(small)) for d in draw(st.lists(st.integers(1, 4), max_size=2))})
    if not any(any(c for c in p.values()) for p in comps):
        comps[0] = {1: gq(1)}
    return r, comps


@given(compose_instances())
def test_compose_matches_naive_expansion(inst):
    r, comps = inst
    try:
        gam = CurveJet(tuple(comps))
    except BadCurve:
        return
    comp = compose(r, gam)
    bound = comp.bound if comp.bound is not None else 10 ** 6
    assert comp.terms == compose_oracle(dict(r.coeffs), [gam.poly(j) for j in range(gam.n)], bound)
    if r.tail is None:
        m = min(gam.component_order(j) for j in range(gam.n) if gam.components[j])
        assert comp.bound == (r.truncation + 1) * m


@given(compose_instances())
def test_no_exact_order_above_validity(inst):
    r, comps = inst
    try:
        gam = CurveJet(tuple(comps), validity=5)
    except BadCurve:
        return
    res = contact_order(r, gam)
    if isinstance(res.order, int):
        assert res.order <= 5
    else:
        assert isinstance(res.order, AtLeast) and res.order.bound <= 6


def test_type_search_examples():
    reg = type_search(jet("2*Re(w) + |z1|^6"), SearchConfig(max_degree=8, regular_only=True))
    assert reg.value == 6 and reg.exact
    reg = type_search(jet(CUSP), SearchConfig(max_degree=13, regular_only=True))
    assert reg.value == 6 and reg.witness.encode() == "(t, 0, 0)" and not reg.exact
    full = type_search(jet(CUSP), SearchConfig(max_degree=13))
    assert full.value == Infinite() and full.exact
    assert full.witness.encode() == "(t^2, t^3, -t^16 - t^18 - t^20)"


def test_type_search_truncated_cusp():
    r = parse("# n=2 T=12\n" + CUSP).jet
    res = type_search(r, SearchConfig(max_degree=13))
    assert res.censored and not res.exact
    assert res.value >= 11
    assert res.witness.order() == 2


def test_type_search_is_reproducible():
    r = jet("2*Re(w) + |z1|^4 + |z2|^6")
    a = type_search(r, SearchConfig(seed=3))
    b = type_search(r, SearchConfig(seed=3))
    assert (a.value, a.witness, a.curves_tried) == (b.value, b.witness, b.curves_tried)


def test_absorb_ladder_stops_on_mixed_term():
    r = jet("2*Re(w) + |z1|^4 + 2*Re(z1^3)")
    step = absorb_ladder(r, curve({1: 1}, {}))
    assert step.stopped == "mixed" and step.contact.order == 4
    assert step.curve.encode() == "(t, -t^3)"


def test_extract_S_examples():
    ext = extract_S(split_model(jet("2*Re(w) + 2*Re(z1^3) + 2*Re(z1^5)")))
    assert ext.series.coeffs == {(3,): gq(1), (5,): gq(1)}
    assert ext.mixed_order == Infinite()
    ext = extract_S(split_model(jet(CUSP)))
    assert ext.series.coeffs == {(8, 0): gq(1), (9, 0): gq(1), (10, 0): gq(1)}
    # |z2|^4 is the lowest mixed term
    assert ext.mixed_order == 4
    ext = extract_S(jet("|z1|^2"))
    assert ext.series.coeffs == {} and ext.mixed_order == 2


def test_split_model_errors():
    with pytest.raises(NotModelForm):
        split_model(jet("4*Re(w) + |z1|^2"))
    with pytest.raises(NotModelForm):
        split_model(jet("2*Re(w) + |z1|^2*|w|^2"))
    F = jet("|z1|^4")
    assert split_model(model_from(F)).coeffs == F.coeffs


def test_compose_S_examples():
    S = SSeries(2, {(1, 1): gq(1)}, 2, ())
    assert compose_S(S, curve({1: 1}, {2: 1}, kind="z")).coeffs == {3: gq(1)}
    S = extract_S(split_model(jet(CUSP))).series
    assert compose_S(S, curve({2: 1}, {3: 1}, kind="z")).coeffs == {16: gq(1), 18: gq(1), 20: gq(1)}
    assert compose_S(SSeries(1, {}, 2, ()), curve({1: 1}, kind="z")).coeffs == {}


def test_tangency_witness_examples():
    w = tangency_witness(jet("2*Re(z1^3)"), curve({1: 1}, kind="z"), 20)
    assert isinstance(w, TangencyWitness)
    assert w.curve.encode() == "(t, -t^3)"
    assert contact_order(model_from(jet("2*Re(z1^3)")), w.curve).order == Infinite()
    F = split_model(jet(CUSP))
    w = tangency_witness(F, curve({2: 1}, {3: 1}, kind="z"), 20)
    assert w.curve.encode() == "(t^2, t^3, -t^16 - t^18 - t^20)"
    ob = tangency_witness(jet("|z1|^2"), curve({1: 1}, kind="z"), 2)
    assert isinstance(ob, Obstruction) and ob.degree == 2


holo_terms = st.dictionaries(st.integers(2, 12), st.builds(gq, small, small).filter(bool), min_size=1, max_size=5)


@given(holo_terms)
def test_tangency_roundtrip_one_variable(h):
    pure = " + ".join(f"2*Re(({c.re} + ({c.im})*i)*z1^{j})" for j, c in h.items())
    F = jet(pure)
    ext = extract_S(F)
    assert ext.series.coeffs == {(j,): c for j, c in h.items()}
    w = tangency_witness(F, curve({1: 1}, kind="z"), 30)
    assert compose(model_from(F), w.curve).terms == {}
    assert compose_S(ext.series, curve({1: 1}, kind="z")).coeffs == h


def test_radius_verdicts():
    S = SSeries(1, {}, 3, (power_factorial(1, 0),))
    v = radius_verdict(S)
    assert v.kind == ZERO_RADIUS and v.no_tangent_curve
    assert radius_verdict(SSeries(1, {}, 3, (geometric(1, 0),))).radius == 1
    assert radius_verdict(SSeries(1, {}, 3, (geometric(Fraction(3), 0),))).radius == Fraction(1, 3)
    assert radius_verdict(SSeries(1, {}, 3, (polynomial_rate(2, 0),))).radius == 1
    assert radius_verdict(SSeries(1, {(2,): gq(1)}, 3, None)).kind == UNKNOWN_FINITE_JET
    assert radius_verdict(SSeries(1, {(2,): gq(1)}, 3, ())).kind == POSITIVE


def test_radius_along_curves():
    S = SSeries(2, {}, 3, (power_factorial(1, 0), power_factorial(1, 1)))
    assert radius_verdict(S).kind == ZERO_RADIUS
    assert radius_verdict(S, curve({1: 1}, {}, kind="z")).kind == ZERO_RADIUS
    assert radius_verdict(S, curve({1: 1}, {1: 1}, kind="z")).kind == UNKNOWN_FINITE_JET
    half = SSeries(2, {}, 3, (power_factorial(1, 0),))
    assert radius_verdict(half).kind == UNKNOWN_FINITE_JET
    assert radius_verdict(half, curve({}, {1: 1}, kind="z")).kind == POSITIVE


def test_canonical_search_never_exceeds_rho1():
    for text in ("2*Re(w) + |z1|^6", "2*Re(w) + |z1|^4 + |z2|^6", "2*Re(w) + |z1|^2 + |z2|^8 + |z1*z2|^2"):
        r = jet(text)
        res = type_search(r, SearchConfig(max_degree=10))
        assert res.exact and res.value == rho1(r)
