from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from newtonflat.errors import (DegreeOverflow, ExprSyntaxError, NonRealExpression, NotAHypersurface)
from newtonflat.gaussian import gq
from newtonflat.hermitian import HermitianJet
from newtonflat.parsing import (GENERAL, MODEL, STANDARD, parse, parse_curve, print_jet, recognize_form)
from oracles import from_sympy

Z = sp.symbols("z1:3", real=True)
ZB = sp.symbols("zb1:3", real=True)
W, WB = sp.symbols("w wb", real=True)
SWAP = {**{a: b for a, b in zip(Z, ZB)}, **{b: a for a, b in zip(Z, ZB)}, W: WB, WB: W}


def conj(e):
    return sp.expand(sp.conjugate(e).xreplace(SWAP))


def coeff_map(expr, nvars, has_w):
    zs = list(Z[:nvars]) + ([W] if has_w else [])
    zbs = list(ZB[:nvars]) + ([WB] if has_w else [])
    expr = sp.expand(expr)
    if expr == 0:
        return {}
    if not zs:  # a constant still lives on one variable
        return {((0,), (0,)): from_sympy(expr)}
    out = {}
    for mon, c in sp.Poly(expr, *zs, *zbs).terms():
        k = len(zs)
        out[(tuple(mon[:k]), tuple(mon[k:]))] = from_sympy(c)
    return out


# random expressions: (text, sympy expression, degree)
leaf_num = st.sampled_from([("2", 2), ("3/2", sp.Rational(3, 2)), ("1", 1), ("i", sp.I), ("0.5", sp.Rational(1, 2))])
leaf_var = st.sampled_from([("z1", Z[0]), ("z2", Z[1]), ("w", W)])


def combine(children):
    def build(draw_op):
        return draw_op
    unary = st.tuples(st.sampled_from(["conj", "Re", "Im", "neg", "paren", "pow", "abs"]), children)
    binary = st.tuples(st.sampled_from(["+", "-", "*"]), children, children)
    return st.one_of(unary.map(_unary), binary.map(_binary))


def _unary(arg):
    op, (text, e, d) = arg
    if d > 4 and op in ("pow", "abs"):
        op = "paren"
    if op == "conj":
        return f"conj({text})", conj(e), d
    if op == "Re":
        return f"Re({text})", sp.expand((e + conj(e)) / 2), d
    if op == "Im":
        return f"Im({text})", sp.expand((e - conj(e)) / (2 * sp.I)), d
    if op == "neg":
        return f"-({text})", -e, d
    if op == "paren":
        return f"({text})", e, d
    if op == "pow":
        return f"({text})^2", sp.expand(e ** 2), 2 * d
    return f"|{text}|^2", sp.expand(e * conj(e)), 2 * d


def _binary(arg):
    op, (t1, e1, d1), (t2, e2, d2) = arg
    if op == "*" and d1 + d2 > 8:
        op = "+"
    if op == "+":
        return f"{t1} + {t2}", e1 + e2, max(d1, d2)
    if op == "-":
        return f"{t1} - ({t2})", e1 - e2, max(d1, d2)
    return f"({t1})*({t2})", sp.expand(e1 * e2), d1 + d2


leaves = st.one_of(leaf_num.map(lambda p: (p[0], p[1], 0)), leaf_var.map(lambda p: (p[0], p[1], 1)))
expressions = st.recursive(leaves, combine, max_leaves=6)


def _vars_of(text):
    n = 2 if "z2" in text else 1 if "z1" in text else 0
    return n, "w" in text


@given(expressions)
def test_parse_matches_sympy(item):
    text, e, _ = item
    real_e = sp.expand(e + conj(e))  # always real
    full = f"{text} + conj({text})"
    n, has_w = _vars_of(text)
    df = parse(full)
    assert dict(df.jet.coeffs) == coeff_map(real_e, n, has_w)


@given(expressions)
def test_non_real_detected(item):
    text, e, _ = item
    n, has_w = _vars_of(text)
    if sp.expand(e - conj(e)) == 0:
        assert dict(parse(text).jet.coeffs) == coeff_map(e, n, has_w)
    else:
        with pytest.raises(NonRealExpression):
            parse(text)


@given(expressions)
def test_print_roundtrip(item):
    text, e, _ = item
    df = parse(f"Re({text})")
    again = parse(print_jet(df.jet, df.has_w))
    assert again.jet == df.jet and again.has_w == df.has_w and again.nvars == df.nvars


def test_spec_examples():
    df = parse("2*Re(w) + |z1|^6")
    assert (df.nvars, df.has_w) == (1, True)
    assert df.jet.coeffs == {((0, 1), (0, 0)): gq(1), ((0, 0), (0, 1)): gq(1), ((3, 0), (3, 0)): gq(1)}
    df = parse("2*Re(w) + |z1^3 - z2^2|^2 + 2*Re(z1^8)")
    assert len(df.jet.coeffs) == 8
    assert parse("|z1|^2 - |z1|^2").jet.is_zero()


def test_directive():
    df = parse("# n=3 T=12\n2*Re(w) + |z1|^2")
    assert df.nvars == 3 and df.jet.truncation == 12 and df.jet.tail is None
    df = parse("# n=1 T=4 complete\n2*Re(w)")
    assert df.jet.tail == ()
    df = parse("# n=1 T=3 tail=z1:geometric:1/2\n2*Re(w)")
    assert df.jet.tail[0].param == Fraction(1, 2)
    assert parse("2*Re(w)", truncation=5).jet.truncation == 5


def test_degree_overflow():
    with pytest.raises(DegreeOverflow):
        parse("# n=1 T=4\n|z1|^6")
    with pytest.raises(DegreeOverflow):
        parse("(z1 + conj(z1))^1000")


@pytest.mark.parametrize("text,pos", [
    ("2*Re(w) @ z1", 8),
    ("z1 +", 4),
    (")z1", 0),
    ("|z1|^3", 5),
    ("z1 ++ z1", 4),
    ("Re(z1) / z1", 9),
    ("Re(z1 z2)", 6),
    ("Re(z1", 5),
    ("foo(z1)", 0),
    ("|z1|^0", 5),
    ("z1^1.5", 3),
    ("# n=1 T=x\nz1", 8),
    ("# n=1 bogus\nz1", 6),
    ("# n=1\nRe(z2)", 9),
    ("Re(z1) / 0", 9),
    ("# n=1 T=3 tail=z1:factorial:1:2\n2*Re(w) + 2*Re(z1^2)", 10),
    ("# n=1 T=3 tail=z1:factorial:1 tail=z1:geometric:2\nz1*conj(z1)", 10),
])
def test_error_positions(text, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text)
    assert info.value.position == pos


def test_errors_name_expected_tokens():
    with pytest.raises(ExprSyntaxError) as info:
        parse("Re(z1")
    assert "')'" in info.value.expected


@given(st.text(alphabet="z12w+-*()|^Recoj ", max_size=12))
def test_parser_never_crashes(text):
    try:
        df = parse(text)
    except (ExprSyntaxError, NonRealExpression, DegreeOverflow):
        return
    for (a, b), c in df.jet.coeffs.items():
        assert df.jet.coefficient(b, a) == c.conjugate()


@given(expressions, st.integers(0, 30))
def test_inserted_garbage_reported_at_its_position(item, k):
    text, _, _ = item
    k = min(k, len(text))
    bad = text[:k] + "@" + text[k:]
    with pytest.raises(ExprSyntaxError) as info:
        parse(bad)
    assert info.value.position == k


def test_recognize_form():
    assert recognize_form(parse("2*Re(w) + |z1|^6")) == MODEL
    assert recognize_form(parse("2*Re(w) + |z1|^2*Im(w) + |z1|^4")) == STANDARD
    assert recognize_form(parse("2*Re(w) + |z1|^2*Re(w)")) == GENERAL
    assert recognize_form(parse("2*Re(z1) + |z1|^2")) == GENERAL
    with pytest.raises(NotAHypersurface):
        recognize_form(parse("|z1|^2"))


def test_standard_form_remainder():
    # (w - conj(w))^2 = -4 Im(w)^2 is admissible in the remainder, Re(w)^2 is not
    assert recognize_form(parse("2*Re(w) + |z1|^4 + |z1|^2*Im(w)^2")) == STANDARD
    assert recognize_form(parse("2*Re(w) + |z1|^4 + |z1|^2*Re(w)^2")) == GENERAL


def test_parse_curve():
    c = parse_curve("gamma = (t^2, t^3, -(t^16+t^18+t^20)) valid 40")
    assert c.validity == 40 and c.encode() == "(t^2, t^3, -t^16 - t^18 - t^20) valid 40"
    c = parse_curve("(t, 0)")
    assert c.encode() == "(t, 0)" and c.validity is None
    with pytest.raises(ExprSyntaxError) as info:
        parse_curve("(t, t^2) valid x")
    assert info.value.position == 9
    with pytest.raises(ExprSyntaxError):
        parse_curve("(t, conj(t))")
