"""Noncommutative polynomial arithmetic."""

import pytest
from hypothesis import given, strategies as st

from cedga import FieldMismatchError, NcPoly, format_poly

NAMES = ["x1", "x2", "x3", "y1", "y2", "z"]


def words(max_len=4):
    return st.lists(st.sampled_from(NAMES), max_size=max_len).map(tuple)


def polys(p=2, max_terms=4):
    return st.dictionaries(words(), st.integers(0, p - 1), max_size=max_terms) \
        .map(lambda terms: NcPoly(p, terms))


def test_empty_word_is_unit():
    p = NcPoly.unit(2)
    q = NcPoly.from_pairs(2, [(1, ("x1", "x2")), (1, ())])
    assert p * q == q
    assert q * p == q


def test_monomial_product_concatenates():
    x = NcPoly.generator(2, "x1")
    y = NcPoly.generator(2, "y1")
    assert (x * y).terms == {("x1", "y1"): 1}


def test_char_two_cross_terms_cancel():
    xb = NcPoly.from_pairs(2, [(1, ("x",)), (1, ())])
    square = xb * xb
    assert square.terms == {("x", "x"): 1, (): 1}


def test_zero_coefficients_dropped():
    poly = NcPoly(3, {("x1",): 3, ("x2",): 2})
    assert poly.terms == {("x2",): 2}
    assert NcPoly(5, {("x1",): 0}).is_zero


def test_field_mismatch_rejected():
    with pytest.raises(FieldMismatchError):
        NcPoly.unit(2) * NcPoly.unit(3)
    with pytest.raises(FieldMismatchError):
        NcPoly.unit(2) + NcPoly.unit(5)


def test_characteristic_must_be_small_prime():
    with pytest.raises(ValueError):
        NcPoly.zero(4)
    with pytest.raises(ValueError):
        NcPoly.zero(101)


def test_scalar_multiplication():
    poly = NcPoly.from_pairs(5, [(2, ("x1",))])
    assert (poly * 3).terms == {("x1",): 1}
    assert (3 * poly) == poly * 3


def test_format_poly_canonical_order():
    poly = NcPoly.from_pairs(3, [(1, ("x1", "x2")), (2, ()), (1, ("x1",))])
    assert format_poly(poly) == "2 + x1 + x1 x2"
    assert format_poly(NcPoly.zero(2)) == "0"


@given(polys(), polys(), polys())
def test_addition_associative_commutative(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a


@given(polys(), polys(), polys())
def test_multiplication_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(polys(), polys(), polys())
def test_distributivity(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@given(polys(p=5), polys(p=5))
def test_subtraction_and_negation(a, b):
    assert a - b == a + (-b)
    assert (a - b) + b == a
