from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from newtonflat.gaussian import ONE, ZERO, GaussianRational, gq

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)
gaussians = st.builds(GaussianRational, rationals, rationals)


def test_reduced_parts():
    g = gq(Fraction(4, 6), Fraction(-3, 9))
    assert g.re == Fraction(2, 3) and g.im == Fraction(-1, 3)


def test_integral_parts_stay_exact():
    g = gq(6) / gq(4)
    assert g == gq(Fraction(3, 2))
    assert isinstance((gq(1) / 3).re, Fraction)


def test_floats_rejected():
    with pytest.raises(TypeError):
        gq(0.5)
    with pytest.raises(TypeError):
        GaussianRational.coerce(1j)


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.re = 2


@pytest.mark.parametrize("text,value", [
    ("3/2", gq(Fraction(3, 2))), ("-i", gq(0, -1)), ("1-2/3i", gq(1, Fraction(-2, 3))),
    ("i", gq(0, 1)), ("0", ZERO),
])
def test_parse(text, value):
    assert GaussianRational.parse(text) == value


@given(gaussians)
def test_str_roundtrip(a):
    assert GaussianRational.parse(str(a)) == a


@given(gaussians, gaussians, gaussians)
def test_field_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(gaussians)
def test_inverse_and_norm(a):
    if a:
        assert a * a.inverse() == ONE
    assert a * a.conjugate() == gq(a.norm())


@given(gaussians, gaussians)
def test_matches_componentwise_formula(a, b):
    p = a * b
    assert p.re == a.re * b.re - a.im * b.im
    assert p.im == a.re * b.im + a.im * b.re


@given(gaussians, st.integers(min_value=0, max_value=6))
def test_power(a, k):
    expected = ONE
    for _ in range(k):
        expected = expected * a
    assert a ** k == expected


@given(gaussians, gaussians)
def test_hash_consistent_with_eq(a, b):
    if a == b:
        assert hash(a) == hash(b)
    assert hash(gq(a.re)) == hash(a.re)
