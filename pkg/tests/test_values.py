import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from geu.values import Vec, as_value, canon_key, parse_rational, render_value, sorted_values

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)


def test_as_value_normalizes_ints():
    assert as_value(3) == Fraction(3)
    assert isinstance(as_value(3), Fraction)
    assert as_value({"a": 1})  == Vec.of({"a": 1})
    assert as_value({1, 2}) == frozenset({Fraction(1), Fraction(2)})


def test_as_value_rejects_bools():
    with pytest.raises(TypeError):
        as_value(True)


def test_fraction_lowest_terms():
    assert parse_rational("2/4") == Fraction(1, 2)
    half = parse_rational("-2/4")
    assert (half.numerator, half.denominator) == (-1, 2)
    with pytest.raises(ValueError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("abc")


def test_render_values():
    assert render_value(Fraction(2, 3)) == "2/3"
    assert render_value(Fraction(4)) == "4"
    assert render_value(math.inf) == "inf"
    assert render_value(("s1", Fraction(1, 2))) == "(s1, 1/2)"
    assert render_value(frozenset({Fraction(2), Fraction(1)})) == "{1, 2}"
    assert render_value(Vec.of({"b": 1, "a": Fraction(1, 2)})) == "{a: 1/2, b: 1}"


def test_canon_key_total_on_mixed_values():
    vals = [Fraction(1, 2), "x", (Fraction(1), "c"), frozenset({Fraction(0)}),
            Vec.of({"n": 0}), math.inf, Fraction(-3)]
    ordered = sorted_values(vals)
    assert ordered[0] == Fraction(-3)
    assert ordered[1] == Fraction(1, 2)
    assert ordered[2] == math.inf


@given(st.sets(rationals, max_size=6), st.sets(rationals, max_size=6),
       st.sets(rationals, max_size=6))
@settings(max_examples=80, derandomize=True)
def test_union_laws(a, b, c):
    # the constructed valuation sum is set union: idempotent, commutative, associative
    fa, fb, fc = frozenset(a), frozenset(b), frozenset(c)
    assert fa | fa == fa
    assert fa | fb == fb | fa
    assert (fa | fb) | fc == fa | (fb | fc)


@given(rationals, rationals)
@settings(max_examples=80, derandomize=True)
def test_canon_key_orders_numbers_consistently(x, y):
    assert (canon_key(x) <= canon_key(y)) == (x <= y)


def test_vec_access():
    v = Vec.of({"P1": Fraction(1, 3), "P0": 1})
    assert v.names == ("P0", "P1")
    assert v.get("P1") == Fraction(1, 3)
    with pytest.raises(KeyError):
        v.get("nope")
    doubled = v.map(lambda x: 2 * x)
    assert doubled.get("P1") == Fraction(2, 3)
